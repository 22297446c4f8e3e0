#include <doctest.h>

#include "folia/jet.hpp"
#include "folia/linalg.hpp"

using namespace folia;

namespace {

// Independent cross-check: central finite differences.
template <class F>
double fd_derivative(F f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("first-order jets differentiate polynomials to machine precision") {
  // p(t) = 3t^4 - 2t^3 + t - 7, p'(t) = 12t^3 - 6t^2 + 1
  auto poly = [](auto t) { return 3.0 * t * t * t * t - 2.0 * t * t * t + t - 7.0; };
  for (double t : {-1.3, 0.0, 0.7, 2.5}) {
    const J1 r = poly(J1::variable(t));
    const double exact = 12.0 * t * t * t - 6.0 * t * t + 1.0;
    CHECK(r.a == doctest::Approx(poly(t)).epsilon(1e-15));
    CHECK(r.b == doctest::Approx(exact).epsilon(1e-15));
    // exact derivatives, not merely finite-difference accuracy
    CHECK(std::abs(r.b - exact) < 1e-12);
    CHECK(std::abs(fd_derivative(poly, t) - exact) < 1e-5);
  }
}

TEST_CASE("nested jets give exact second derivatives") {
  auto f = [](auto t) { return sin(2.0 * t) * exp(0.5 * t); };
  for (double t : {-0.9, 0.2, 1.4}) {
    J2 x(J1(t, 1.0), J1(1.0, 0.0));  // t seeded at both levels
    const J2 r = f(x);
    const double s = std::sin(2.0 * t), c = std::cos(2.0 * t), e = std::exp(0.5 * t);
    const double d1 = (2.0 * c + 0.5 * s) * e;
    const double d2 = (-3.75 * s + 2.0 * c) * e;
    CHECK(r.a.a == doctest::Approx(s * e).epsilon(1e-14));
    CHECK(r.a.b == doctest::Approx(d1).epsilon(1e-14));
    CHECK(r.b.a == doctest::Approx(d1).epsilon(1e-14));
    CHECK(r.b.b == doctest::Approx(d2).epsilon(1e-13));
  }
}

TEST_CASE("jet division and sqrt follow the chain rule") {
  auto f = [](auto t) { return sqrt(1.0 + t * t) / (2.0 - t); };
  const double t = 0.6;
  const J1 r = f(J1::variable(t));
  CHECK(r.b == doctest::Approx(fd_derivative(f, t)).epsilon(1e-8));
}

TEST_CASE("non-differentiable evaluations raise errors") {
  CHECK_THROWS_AS(sqrt(J1::variable(-1.0)), std::domain_error);
  CHECK_THROWS_AS(abs(J1(0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(log(J1::variable(0.0)), std::domain_error);
}

TEST_CASE("jet-valued linear solve matches derivative of solution") {
  // A(t) x = b with A = [[2, t], [t, 3]], b = (1, t); check dx/dt by FD.
  auto solve_at = [](auto t) {
    using S = decltype(t);
    MatX<S> A(2, 2);
    A(0, 0) = S(2.0); A(0, 1) = t; A(1, 0) = t; A(1, 1) = S(3.0);
    VecX<S> b(2);
    b(0) = S(1.0); b(1) = t;
    return solve_linear<S>(A, b);
  };
  const double t = 0.4, h = 1e-6;
  const auto xj = solve_at(J1::variable(t));
  const auto xp = solve_at(t + h), xm = solve_at(t - h);
  for (int i = 0; i < 2; ++i) {
    const double fd = (xp(i) - xm(i)) / (2.0 * h);
    CHECK(xj(i).b == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("cofactor determinant keeps jet parts at value-singular matrices") {
  // A(t) = [[t, 0],[0, 1]] at t=0: det = t, d det/dt = 1 even though value 0.
  MatX<J1> A(2, 2);
  A(0, 0) = J1::variable(0.0);
  A(0, 1) = J1(0.0);
  A(1, 0) = J1(0.0);
  A(1, 1) = J1(1.0);
  const J1 d = determinant<J1>(A);
  CHECK(d.a == doctest::Approx(0.0));
  CHECK(d.b == doctest::Approx(1.0));
}
