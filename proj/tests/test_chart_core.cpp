#include <doctest.h>

#include "folia/gallery.hpp"
#include "oracles.hpp"

using namespace folia;

namespace {

Backend flat_chart(int n) {
  ChartBackend C;
  C.n = n;
  C.lo = VectorXd::Zero(n);
  C.hi = VectorXd::Ones(n);
  C.period.assign(n, 1.0);
  C.metric = MatrixField::from([n](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    (void)p;
    MatX<S> g = MatX<S>::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = S(1.0);
    return g;
  });
  return Backend(std::move(C));
}

Backend su2_frame(double sign = 1.0) {
  std::vector c(3, std::vector(3, std::vector<double>(3, 0.0)));
  const int eps[3][3] = {{2, 1, 0}, {0, 2, 1}, {1, 0, 2}};  // unused helper
  (void)eps;
  c[0][1][2] = 2.0 * sign;
  c[1][0][2] = -2.0 * sign;
  c[1][2][0] = 2.0 * sign;
  c[2][1][0] = -2.0 * sign;
  c[2][0][1] = 2.0 * sign;
  c[0][2][1] = -2.0 * sign;
  return Backend(make_frame_backend(c, MatrixXd::Identity(3, 3), 2.0 * 9.8696044010893586));
}

Point chart_point(std::initializer_list<double> xs) {
  Point p;
  p.x.resize(int(xs.size()));
  int i = 0;
  for (double v : xs) p.x(i++) = v;
  return p;
}

}  // namespace

TEST_CASE("coordinate fields commute on the flat torus") {
  const Backend M = flat_chart(3);
  const Point p = chart_point({0.3, 0.6, 0.9});
  const VecX<double> br = lie_bracket(M, M.basis_field(0), M.basis_field(1), p);
  CHECK(br.cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Heisenberg chart bracket [d/dx, d/dy + x d/dz] = d/dz") {
  const Backend M = flat_chart(3);
  const VectorField e1 = M.basis_field(0);
  const VectorField e2 = VectorField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> v = VecX<S>::Zero(3);
    v(1) = S(1.0);
    v(2) = p.x(0);
    return v;
  });
  const Point p = chart_point({0.2, 0.5, 0.8});
  const VecX<double> br = lie_bracket(M, e1, e2, p);
  // symbolic expansion gives exactly d/dz
  CHECK(br(0) == doctest::Approx(0.0));
  CHECK(br(1) == doctest::Approx(0.0));
  CHECK(br(2) == doctest::Approx(1.0));
  // finite-difference cross-check
  const VectorXd fd = oracle::fd_bracket(e1, e2, p);
  CHECK((br - fd).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("su(2) frame bracket is the structure-constant contraction") {
  const Backend M = su2_frame();
  const Point p = M.base_point();
  const VecX<double> br = lie_bracket(M, M.basis_field(0), M.basis_field(1), p);
  CHECK(br(0) == doctest::Approx(0.0));
  CHECK(br(1) == doctest::Approx(0.0));
  CHECK(br(2) == doctest::Approx(2.0));
}

TEST_CASE("bracket antisymmetry over the gallery pools") {
  for (const std::string& name : gallery_names()) {
    const GalleryExample ex = construct(name);
    Rng rng(7);
    const auto samples = sample_points(ex.fm, {4, 6, 11});
    for (int t = 0; t < 6; ++t) {
      const VectorField X = oracle::random_combination(ex.test_fields, rng);
      const VectorField Y = oracle::random_combination(ex.test_fields, rng);
      for (const Point& p : samples) {
        const VecX<double> a = lie_bracket(ex.fm.M, X, Y, p);
        const VecX<double> b = lie_bracket(ex.fm.M, Y, X, p);
        CHECK((a + b).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("Jacobi identity on all gallery frames") {
  for (const std::string& name : gallery_names()) {
    const GalleryExample ex = construct(name);
    Rng rng(13);
    const auto samples = sample_points(ex.fm, {3, 4, 17});
    const auto& pool = ex.test_fields;
    for (int t = 0; t < 4; ++t) {
      const VectorField X = oracle::random_combination(pool, rng);
      const VectorField Y = oracle::random_combination(pool, rng);
      const VectorField Z = oracle::random_combination(pool, rng);
      const VectorField XY = bracket_field(ex.fm.M, X, Y);
      const VectorField YZ = bracket_field(ex.fm.M, Y, Z);
      const VectorField ZX = bracket_field(ex.fm.M, Z, X);
      for (const Point& p : samples) {
        VecX<double> cyc = lie_bracket(ex.fm.M, X, YZ, p);
        cyc += lie_bracket(ex.fm.M, Y, ZX, p);
        cyc += lie_bracket(ex.fm.M, Z, XY, p);
        CHECK(cyc.cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("exterior derivative examples") {
  const Backend M = flat_chart(3);
  const Point p = chart_point({0.15, 0.45, 0.75});

  SUBCASE("d of a constant vanishes") {
    const FormField c = FormField::from(0, [](const auto& q) {
      using S = point_scalar_t<decltype(q)>;
      (void)q;
      VecX<S> v(1);
      v(0) = S(3.7);
      return v;
    });
    const VecX<double> d = exterior_derivative_components(M, c, p);
    CHECK(d.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }

  SUBCASE("eta = dz - x dy has d eta = -dx^dy") {
    const FormField eta = FormField::from(1, [](const auto& q) {
      using S = point_scalar_t<decltype(q)>;
      VecX<S> v = VecX<S>::Zero(3);
      v(1) = -q.x(0);
      v(2) = S(1.0);
      return v;
    });
    const VecX<double> d = exterior_derivative_components(M, eta, p);
    // components over {xy, xz, yz}
    CHECK(d(0) == doctest::Approx(-1.0));
    CHECK(d(1) == doctest::Approx(0.0));
    CHECK(d(2) == doctest::Approx(0.0));

    const FormField deta = exterior_derivative(M, eta);
    const VecX<double> dd = exterior_derivative_components(M, deta, p);
    CHECK(dd.cwiseAbs().maxCoeff() < 1e-13);
  }

  SUBCASE("degree overflow raises") {
    const FormField top = FormField::from(3, [](const auto& q) {
      using S = point_scalar_t<decltype(q)>;
      (void)q;
      VecX<S> v(1);
      v(0) = S(1.0);
      return v;
    });
    CHECK_THROWS_AS(exterior_derivative_components(M, top, p),
                    std::invalid_argument);
  }
}

TEST_CASE("d o d vanishes on random forms over every gallery example") {
  for (const std::string& name : gallery_names()) {
    const GalleryExample ex = construct(name);
    const Backend& M = ex.fm.M;
    const int n = M.dim();
    Rng rng(101);
    const auto samples = sample_points(ex.fm, {3, 3, 23});
    const int max_deg = std::min(2, n - 2);
    int forms_checked = 0;
    while (forms_checked < 50) {
      const int k = max_deg > 0 ? int(rng.next_u64() % (max_deg + 1)) : 0;
      const auto table = combinations(n, k);
      // random combination of pool functions on each component
      std::vector<FormField> parts;
      VectorXd coeff(int(table.size()));
      std::vector<FormField> comps;
      for (std::size_t ci = 0; ci < table.size(); ++ci) {
        const auto& fpool = ex.test_functions;
        const ScalarField f = fpool[rng.next_u64() % fpool.size()];
        comps.push_back(FormField::from(k, [f, ci, m = int(table.size())](const auto& q) {
          using S = point_scalar_t<decltype(q)>;
          VecX<S> v = VecX<S>::Zero(m);
          v(int(ci)) = f(q);
          return v;
        }));
        coeff(int(ci)) = rng.uniform(-1.0, 1.0);
      }
      const FormField w = form_linear_combination(comps, coeff);
      const FormField dw = exterior_derivative(M, w);
      for (int s = 0; s < 3; ++s) {
        const Point& p = samples[rng.next_u64() % samples.size()];
        const VecX<double> dd = exterior_derivative_components(M, dw, p);
        CHECK(dd.cwiseAbs().maxCoeff() < 1e-9);
      }
      ++forms_checked;
    }
  }
}

TEST_CASE("integration examples") {
  SUBCASE("unit function on the unit flat torus") {
    const Backend M = flat_chart(3);
    const auto r = M.integrate(constant_scalar(1.0), 8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.converged);
  }
  SUBCASE("cos(2 pi x) integrates to zero") {
    const Backend M = flat_chart(3);
    const ScalarField f = ScalarField::from([](const auto& p) {
      return cos(6.283185307179586 * p.x(0));
    });
    const auto r = M.integrate(f, 16);
    CHECK(std::abs(r.value) < 1e-12);
    CHECK(r.converged);
  }
  SUBCASE("invariant function on the su(2) frame gives volume") {
    const Backend M = su2_frame();
    const auto r = M.integrate(constant_scalar(1.0), 8);
    CHECK(r.value == doctest::Approx(2.0 * 9.8696044010893586).epsilon(1e-12));
    CHECK(r.converged);
  }
  SUBCASE("under-resolved oscillation raises the warning flag") {
    const Backend M = flat_chart(1);
    const ScalarField f = ScalarField::from([](const auto& p) {
      return cos(6.283185307179586 * 8.0 * p.x(0)) + 1.0;
    });
    const auto r = M.integrate(f, 8);  // 8 nodes alias the 8th harmonic
    CHECK_FALSE(r.converged);
  }
}

TEST_CASE("non-differentiable field evaluation raises") {
  const Backend M = flat_chart(1);
  const ScalarField f = ScalarField::from([](const auto& p) {
    return sqrt(p.x(0) - 0.5);  // not differentiable at 0.5, complex below
  });
  Point p;
  p.x.resize(1);
  p.x(0) = 0.25;
  VecX<double> dir(1);
  dir(0) = 1.0;
  CHECK_THROWS_AS(dir_derivative(M, f, p, dir), std::domain_error);
}
