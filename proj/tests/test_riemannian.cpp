#include <doctest.h>

#include "folia/gallery.hpp"
#include "oracles.hpp"

using namespace folia;

namespace {

Backend warped_exp_chart() {
  // dx^2 + e^{2x} dy^2 on a local chart (no periodic structure needed for
  // pointwise curvature checks)
  ChartBackend C;
  C.n = 2;
  C.lo = VectorXd::Zero(2);
  C.hi = VectorXd::Ones(2);
  C.period = {0.0, 0.0};
  C.metric = MatrixField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    MatX<S> g = MatX<S>::Zero(2, 2);
    g(0, 0) = S(1.0);
    g(1, 1) = exp(2.0 * p.x(0));
    return g;
  });
  return Backend(std::move(C));
}

Backend su2_frame() {
  std::vector c(3, std::vector(3, std::vector<double>(3, 0.0)));
  c[0][1][2] = 2.0;
  c[1][0][2] = -2.0;
  c[1][2][0] = 2.0;
  c[2][1][0] = -2.0;
  c[2][0][1] = 2.0;
  c[0][2][1] = -2.0;
  return Backend(make_frame_backend(c, MatrixXd::Identity(3, 3), 19.739208802178716));
}

Point chart_point(std::initializer_list<double> xs) {
  Point p;
  p.x.resize(int(xs.size()));
  int i = 0;
  for (double v : xs) p.x(i++) = v;
  return p;
}

}  // namespace

TEST_CASE("Levi-Civita examples") {
  SUBCASE("flat torus: coordinate fields are parallel") {
    const GalleryExample ex = construct("product_t3");
    const Point p = ex.fm.M.base_point();
    const VecX<double> v =
        levi_civita(ex.fm.M, ex.fm.M.basis_field(0), ex.fm.M.basis_field(1), p);
    CHECK(v.cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("bi-invariant su(2): nabla_{e1} e2 = [e1,e2]/2 = e3") {
    const Backend M = su2_frame();
    const Point p = M.base_point();
    const VecX<double> v = levi_civita(M, M.basis_field(0), M.basis_field(1), p);
    CHECK(v(0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(v(1) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(v(2) == doctest::Approx(1.0).epsilon(1e-13));
    // invariant Koszul oracle: half the structure bracket on every pair
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const VecX<double> lhs =
            levi_civita(M, M.basis_field(i), M.basis_field(j), p);
        const VecX<double> rhs =
            0.5 * lie_bracket(M, M.basis_field(i), M.basis_field(j), p);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
      }
  }

  SUBCASE("warped chart: nabla_{dy} dy = -e^{2x} dx") {
    const Backend M = warped_exp_chart();
    const Point p = chart_point({0.3, 0.7});
    const VecX<double> v = levi_civita(M, M.basis_field(1), M.basis_field(1), p);
    CHECK(v(0) == doctest::Approx(-std::exp(0.6)).epsilon(1e-12));
    CHECK(v(1) == doctest::Approx(0.0).epsilon(1e-12));
    // Christoffel oracle through finite differences
    const VectorXd fd = oracle::fd_levi_civita(M, M.basis_field(1), M.basis_field(1), p);
    CHECK((v - fd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("metric compatibility and torsion-free over 100 random triples") {
  for (const std::string& name : gallery_names()) {
    const GalleryExample ex = construct(name);
    const Backend& M = ex.fm.M;
    Rng rng(29);
    const auto samples = sample_points(ex.fm, {4, 8, 31});
    for (int t = 0; t < 100; ++t) {
      const VectorField X = oracle::random_combination(ex.test_fields, rng);
      const VectorField Y = oracle::random_combination(ex.test_fields, rng);
      const VectorField Z = oracle::random_combination(ex.test_fields, rng);
      const Point& p = samples[rng.next_u64() % samples.size()];

      const ScalarField gYZ = metric_pairing(M, Y, Z);
      const double lhs = dir_derivative(M, gYZ, p, VecX<double>(X(p)));
      const double rhs = metric_inner(M, p, levi_civita(M, X, Y, p), VecX<double>(Z(p))) +
                         metric_inner(M, p, VecX<double>(Y(p)), levi_civita(M, X, Z, p));
      CHECK(std::abs(lhs - rhs) < 1e-9);

      const VecX<double> torsion = levi_civita(M, X, Y, p) -
                                   levi_civita(M, Y, X, p) -
                                   lie_bracket(M, X, Y, p);
      CHECK(torsion.cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("curvature symmetries and first Bianchi identity") {
  for (const char* name : {"heisenberg3", "hopf", "warped_nonharmonic"}) {
    const GalleryExample ex = construct(name);
    const Backend& M = ex.fm.M;
    Rng rng(31);
    const auto samples = sample_points(ex.fm, {3, 3, 7});
    for (int t = 0; t < 5; ++t) {
      const VectorField X = oracle::random_combination(ex.test_fields, rng);
      const VectorField Y = oracle::random_combination(ex.test_fields, rng);
      const VectorField Z = oracle::random_combination(ex.test_fields, rng);
      const VectorField V = oracle::random_combination(ex.test_fields, rng);
      const Point& p = samples[rng.next_u64() % samples.size()];

      const double rxyzv = riemann_scalar(M, X, Y, Z, V, p);
      const double ryxzv = riemann_scalar(M, Y, X, Z, V, p);
      const double rzvxy = riemann_scalar(M, Z, V, X, Y, p);
      CHECK(std::abs(rxyzv + ryxzv) < 1e-8);
      CHECK(std::abs(rxyzv - rzvxy) < 1e-8);

      const VecX<double> bianchi = riemann(M, X, Y, Z, p) +
                                   riemann(M, Y, Z, X, p) +
                                   riemann(M, Z, X, Y, p);
      CHECK(bianchi.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("constant-curvature oracles") {
  SUBCASE("flat torus curvature vanishes") {
    const GalleryExample ex = construct("product_t3");
    const Point p = ex.fm.M.base_point();
    const VecX<double> r = riemann(ex.fm.M, ex.fm.M.basis_field(0),
                                   ex.fm.M.basis_field(1), ex.fm.M.basis_field(1), p);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("unit 3-sphere: sectional curvature 1 on every frame pair") {
    const Backend M = su2_frame();
    const Point p = M.base_point();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(sectional_curvature(M, M.basis_field(i), M.basis_field(j), p) ==
              doctest::Approx(1.0).epsilon(1e-11));
      }
  }

  SUBCASE("hyperbolic warped chart: sectional curvature -1") {
    const Backend M = warped_exp_chart();
    const Point p = chart_point({0.4, 0.2});
    CHECK(sectional_curvature(M, M.basis_field(0), M.basis_field(1), p) ==
          doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("Ricci curvature") {
  SUBCASE("flat torus: zero") {
    const GalleryExample ex = construct("product_t3");
    CHECK(std::abs(ricci(ex.fm.M, ex.fm.M.basis_field(1), ex.fm.M.base_point())) <
          1e-11);
  }

  SUBCASE("unit 3-sphere: Ric = 2 g") {
    const Backend M = su2_frame();
    const Point p = M.base_point();
    Rng rng(5);
    for (int t = 0; t < 4; ++t) {
      VectorXd w(3);
      for (int i = 0; i < 3; ++i) w(i) = rng.uniform(-1.0, 1.0);
      const VectorField X = constant_vector(w);
      const double rxx = ricci(M, X, p);
      CHECK(rxx == doctest::Approx(2.0 * w.squaredNorm()).epsilon(1e-10));
    }
  }

  SUBCASE("Heisenberg Sasaki metric: Ric(xi, xi) = 2") {
    const GalleryExample ex = construct("heisenberg3");
    const Point p = ex.fm.M.reduce(ex.fm.M.base_point());
    const VectorField& xi = ex.fm.F.leaf_frame[0];
    CHECK(ricci(ex.fm.M, xi, p) == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("gradient") {
  SUBCASE("flat torus: grad cos(2 pi y) = -2 pi sin(2 pi y) dy") {
    const GalleryExample ex = construct("product_t3");
    const ScalarField f = ScalarField::from([](const auto& p) {
      return cos(6.283185307179586 * p.x(1));
    });
    Point p = ex.fm.M.base_point();
    p.x(1) = 0.35;
    const VecX<double> g = gradient(ex.fm.M, f, p);
    const double expect = -6.283185307179586 * std::sin(6.283185307179586 * 0.35);
    CHECK(g(0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(g(1) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g(2) == doctest::Approx(0.0).epsilon(1e-13));
  }

  SUBCASE("warped chart: grad x = dx (inverse-metric contraction)") {
    const Backend M = warped_exp_chart();
    const ScalarField f = ScalarField::from([](const auto& p) { return p.x(0); });
    const VecX<double> g = gradient(M, f, chart_point({0.6, 0.1}));
    CHECK(g(0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g(1) == doctest::Approx(0.0).epsilon(1e-13));
  }

  SUBCASE("defining property g(grad f, Y) = Y(f) for random fields") {
    const GalleryExample ex = construct("heisenberg3");
    const Backend& M = ex.fm.M;
    Rng rng(11);
    const auto samples = sample_points(ex.fm, {3, 5, 13});
    const ScalarField f = ex.test_functions[1];
    for (int t = 0; t < 12; ++t) {
      const VectorField Y = oracle::random_combination(ex.test_fields, rng);
      const Point& p = samples[rng.next_u64() % samples.size()];
      const double lhs = metric_inner(M, p, gradient(M, f, p), VecX<double>(Y(p)));
      const double rhs = dir_derivative(M, f, p, VecX<double>(Y(p)));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}
