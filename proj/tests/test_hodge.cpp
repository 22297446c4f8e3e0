#include <doctest.h>

#include "folia/gallery.hpp"
#include <memory>

#include "oracles.hpp"

using namespace folia;

namespace {

struct Workbench {
  GalleryExample ex;
  QuadratureNodes nodes;
  std::vector<Point> samples;
  AnsatzSpace a0, a1, a2;
  HodgeSolution sol;
  FieldAnsatz fields;

  Workbench(const std::string& name, int cutoff, int resolution) {
    ex = construct(name);
    if (cutoff == 0) cutoff = ex.default_cutoff;
    nodes = quadrature_nodes(ex.fm.M, resolution);
    samples = sample_points(ex.fm, {16, 32, 2024});
    a0 = build_ansatz(ex.fm, 0, ex.form_candidates(0, cutoff), ex.subspace_filter,
                      nodes, samples, ex.name + " degree-0");
    a1 = build_ansatz(ex.fm, 1, ex.form_candidates(1, cutoff), ex.subspace_filter,
                      nodes, samples, ex.name + " degree-1");
    a2 = build_ansatz(ex.fm, 2, ex.form_candidates(2, cutoff), ex.subspace_filter,
                      nodes, samples, ex.name + " degree-2");
    sol = build_basic_complex(ex.fm, a0, a1, a2, nodes);
    fields = build_field_ansatz(ex.fm, ex.field_candidates(cutoff),
                                ex.subspace_filter, samples,
                                ex.name + " transverse fields");
  }
};

// The bench is expensive to assemble (grams over quadrature grids), so test
// cases share instances per (name, cutoff).
const Workbench& bench(const std::string& name, int cutoff = 0) {
  static std::map<std::string, std::unique_ptr<Workbench>> cache;
  const std::string key = name + "#" + std::to_string(cutoff);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Workbench>(name, cutoff, 16)).first;
  return *it->second;
}

}  // namespace

TEST_CASE("quadrature nodes carry the Riemannian volume") {
  auto total = [](const QuadratureNodes& n) {
    double s = 0.0;
    for (double w : n.weights) s += w;
    return s;
  };
  CHECK(total(quadrature_nodes(construct("product_t3").fm.M, 8)) ==
        doctest::Approx(1.0));
  CHECK(total(quadrature_nodes(construct("heisenberg3").fm.M, 8)) ==
        doctest::Approx(0.125));
  CHECK(total(quadrature_nodes(construct("hopf").fm.M, 8)) ==
        doctest::Approx(2.0 * 9.8696044010893586));
  CHECK(total(quadrature_nodes(construct("quat_heisenberg7").fm.M, 8)) ==
        doctest::Approx(1.0));
}

TEST_CASE("ansatz construction") {
  SUBCASE("flat product Fourier spaces have the expected sizes") {
    const Workbench& w = bench("product_t3");
    CHECK(w.a0.size() == 25);
    CHECK(w.a1.size() == 50);
    CHECK(w.a2.size() == 25);
    // Fourier gram is diagonal-dominant and well conditioned
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(w.a1.gram);
    CHECK(eig.eigenvalues().minCoeff() > 0.1);
  }

  SUBCASE("Kronecker extraction keeps only the invariant line") {
    const Workbench& w = bench("kronecker");
    CHECK(w.a0.size() == 1);
    CHECK(w.a1.size() == 1);
    CHECK(w.a2.size() == 0);
    CHECK(w.fields.size() == 1);
    // the surviving one-form is proportional to the unit transverse coform
    const Point p = w.ex.fm.M.base_point();
    const VecX<double> v = w.a1.basis[0](p);
    CHECK(std::abs(v(0) / v(1) + std::sqrt(2.0)) < 1e-9);
  }

  SUBCASE("Hopf polynomial spaces: basic subspace dimensions") {
    const Workbench& w = bench("hopf");
    CHECK(w.a0.size() == 4);   // 1 and the three first-row entries
    CHECK(w.a1.size() == 6);   // three gradients and three Killing duals
    CHECK(w.a2.size() == 4);   // (1, first-row entries) times the area form
    CHECK(w.fields.size() == 6);
  }

  SUBCASE("non-basic candidates are rejected without the subspace filter") {
    const GalleryExample ex = construct("product_t3");
    const auto nodes = quadrature_nodes(ex.fm.M, 8);
    const auto samples = sample_points(ex.fm, {4, 8, 77});
    // a candidate depending on the leaf coordinate is not basic
    std::vector<FormField> bad = {FormField::from(0, [](const auto& p) {
      using S = point_scalar_t<decltype(p)>;
      VecX<S> v(1);
      v(0) = cos(6.283185307179586 * p.x(0));
      return v;
    })};
    CHECK_THROWS_WITH_AS(
        build_ansatz(ex.fm, 0, bad, false, nodes, samples, "bad"),
        doctest::Contains("not basic"), std::invalid_argument);
  }

  SUBCASE("an ansatz not closed under d is rejected by name") {
    const GalleryExample ex = construct("product_t3");
    const auto nodes = quadrature_nodes(ex.fm.M, 8);
    const auto samples = sample_points(ex.fm, {4, 8, 78});
    // degree-0 space containing a mode whose differential is outside the
    // degree-1 span (empty degree-1 ansatz)
    AnsatzSpace a0 = build_ansatz(ex.fm, 0, ex.form_candidates(0, 1), false,
                                  nodes, samples, "deg0");
    AnsatzSpace a1, a2;
    a1.degree = 1;
    a1.gram = MatrixXd::Zero(0, 0);
    a2.degree = 2;
    a2.gram = MatrixXd::Zero(0, 0);
    CHECK_THROWS_WITH_AS(build_basic_complex(ex.fm, a0, a1, a2, nodes),
                         doctest::Contains("leaves the next ansatz"),
                         std::invalid_argument);
  }
}

TEST_CASE("basic cohomology of the gallery") {
  SUBCASE("flat product: b1 = 2") {
    const Workbench& w = bench("product_t3");
    CHECK(w.sol.b1_harmonic == 2);
    CHECK(w.sol.b1_cohomological == 2);
  }
  SUBCASE("Kronecker: b1 = 1") {
    const Workbench& w = bench("kronecker");
    CHECK(w.sol.b1_harmonic == 1);
    CHECK(w.sol.b1_cohomological == 1);
  }
  SUBCASE("Hopf: b1 = 0") {
    const Workbench& w = bench("hopf");
    CHECK(w.sol.b1_harmonic == 0);
    CHECK(w.sol.b1_cohomological == 0);
  }
  SUBCASE("Heisenberg: b1 = 2") {
    const Workbench& w = bench("heisenberg3");
    CHECK(w.sol.b1_harmonic == 2);
    CHECK(w.sol.b1_cohomological == 2);
  }
  SUBCASE("quaternionic Heisenberg: b1 = 4") {
    const Workbench& w = bench("quat_heisenberg7");
    CHECK(w.sol.b1_harmonic == 4);
    CHECK(w.sol.b1_cohomological == 4);
  }
  SUBCASE("stability under cutoff doubling") {
    for (const char* name : {"product_t3", "kronecker", "hopf", "heisenberg3"}) {
      const GalleryExample ex = construct(name);
      const Workbench& base = bench(name, ex.default_cutoff);
      const Workbench& doubled = bench(name, 2 * ex.default_cutoff);
      CHECK(base.sol.b1_harmonic == doubled.sol.b1_harmonic);
    }
  }
}

TEST_CASE("structure of the assembled complex") {
  for (const char* name : {"product_t3", "kronecker", "hopf", "heisenberg3"}) {
    const Workbench& w = bench(name);
    CAPTURE(name);

    // adjointness of delta against d in the ansatz inner products
    CHECK(adjointness_residual(w.sol) < 1e-8);

    // harmonic space = closed and coclosed forms
    CHECK(harmonic_versus_closed_coclosed_angle(w.sol) < 1e-7);

    // Delta_B spectrum is nonnegative
    if (w.sol.eigenvalues.size())
      CHECK(w.sol.eigenvalues.minCoeff() > -1e-8);

    // d-closure defects stay within quadrature tolerance
    CHECK(w.sol.closure_residual < 1e-6);
  }
}

TEST_CASE("codifferential against the transverse divergence") {
  for (const char* name : {"product_t3", "kronecker", "heisenberg3"}) {
    const Workbench& w = bench(name);
    CAPTURE(name);
    // the dual one-forms of the transverse field ansatz lie in the degree-1
    // ansatz; delta_B omega_X must equal -Div_T X pointwise
    Rng rng(91);
    for (int t = 0; t < 4; ++t) {
      VectorXd c(w.fields.size());
      for (int i = 0; i < c.size(); ++i) c(i) = rng.uniform(-1.0, 1.0);
      const VectorField X = ansatz_field(w.fields, c);
      const double res = codifferential_residual(w.ex.fm, w.sol, w.a0, w.a1, X,
                                                 w.nodes, w.samples);
      CHECK(res < 1e-7);
    }
  }
}

TEST_CASE("basic Laplacian equals minus the transverse Laplacian") {
  for (const char* name : {"product_t3", "heisenberg3"}) {
    const Workbench& w = bench(name);
    CAPTURE(name);
    Rng rng(93);
    for (int t = 0; t < 3; ++t) {
      VectorXd c(w.a0.size());
      for (int i = 0; i < c.size(); ++i) c(i) = rng.uniform(-1.0, 1.0);
      CHECK(basic_laplacian_residual(w.ex.fm, w.sol, w.a0, c, w.samples) < 1e-7);
    }
  }
}

TEST_CASE("field classifiers") {
  SUBCASE("flat product") {
    const Workbench& w = bench("product_t3");
    CHECK(classify_killing(w.ex.fm, w.fields, w.samples).dimension == 2);
    CHECK(classify_parallel(w.ex.fm, w.fields, w.samples).dimension == 2);
    CHECK(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true).dimension == 2);
  }
  SUBCASE("Kronecker") {
    const Workbench& w = bench("kronecker");
    CHECK(classify_killing(w.ex.fm, w.fields, w.samples).dimension == 1);
    CHECK(classify_parallel(w.ex.fm, w.fields, w.samples).dimension == 1);
    CHECK(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true).dimension == 1);
  }
  SUBCASE("Hopf: the rotation algebra survives Killing, nothing is parallel") {
    const Workbench& w = bench("hopf");
    CHECK(classify_killing(w.ex.fm, w.fields, w.samples).dimension == 3);
    CHECK(classify_parallel(w.ex.fm, w.fields, w.samples).dimension == 0);
    CHECK(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true).dimension == 0);
  }
  SUBCASE("Heisenberg") {
    const Workbench& w = bench("heisenberg3");
    CHECK(classify_killing(w.ex.fm, w.fields, w.samples).dimension == 2);
    CHECK(classify_parallel(w.ex.fm, w.fields, w.samples).dimension == 2);
    CHECK(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true).dimension == 2);
  }
  SUBCASE("quaternionic Heisenberg") {
    const Workbench& w = bench("quat_heisenberg7");
    CHECK(classify_killing(w.ex.fm, w.fields, w.samples).dimension == 4);
    CHECK(classify_parallel(w.ex.fm, w.fields, w.samples).dimension == 4);
    CHECK(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true).dimension == 4);
  }
  SUBCASE("the basic-harmonic classifier refuses non-harmonic foliations") {
    const Workbench& w = bench("warped_nonharmonic");
    CHECK_THROWS_AS(classify_basic_harmonic(w.ex.fm, w.fields, w.samples, false),
                    std::invalid_argument);
  }
}

TEST_CASE("subspace relations between the classifiers") {
  for (const char* name : {"product_t3", "kronecker", "hopf", "heisenberg3"}) {
    const Workbench& w = bench(name);
    CAPTURE(name);
    const auto killing = classify_killing(w.ex.fm, w.fields, w.samples);
    const auto parallel = classify_parallel(w.ex.fm, w.fields, w.samples);
    const auto harmonic =
        classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true);

    // parallel fields are Killing and basic harmonic
    if (parallel.dimension > 0) {
      CHECK(parallel.dimension <= killing.dimension);
      VectorXd pk = principal_angles(killing.basis, parallel.basis);
      CHECK(pk.maxCoeff() < 1e-7);
      VectorXd ph = principal_angles(harmonic.basis, parallel.basis);
      CHECK(ph.maxCoeff() < 1e-7);
    }

    // constant transverse length for each parallel field
    for (int c = 0; c < parallel.dimension; ++c) {
      const VectorField X = ansatz_field(w.fields, parallel.basis.col(c));
      double mean = 0.0, mean2 = 0.0;
      for (const Point& p : w.samples) {
        const double v =
            transverse_metric(w.ex.fm, p, VecX<double>(X(p)), VecX<double>(X(p)));
        mean += v;
        mean2 += v * v;
      }
      mean /= double(w.samples.size());
      mean2 /= double(w.samples.size());
      CHECK((mean2 - mean * mean) / std::max(mean * mean, 1e-30) < 1e-10);
    }
  }
}

TEST_CASE("closedness of the dual form matches the symmetric derivative") {
  // d omega_X (Y,Z) = g_T(nabla^T_Y X, Z) - g_T(nabla^T_Z X, Y) for
  // transverse X; the dual form is closed exactly when the Bott derivative
  // is symmetric.
  for (const char* name : {"product_t3", "heisenberg3", "hopf"}) {
    const Workbench& w = bench(name);
    CAPTURE(name);
    Rng rng(97);
    const int n = w.ex.fm.dim();
    for (int t = 0; t < 6; ++t) {
      VectorXd c(w.fields.size());
      for (int i = 0; i < c.size(); ++i) c(i) = rng.uniform(-1.0, 1.0);
      const VectorField X = ansatz_field(w.fields, c);
      const FormField dwX =
          exterior_derivative(w.ex.fm.M, musical_flat(w.ex.fm.M, X));
      const Point& p = w.samples[rng.next_u64() % w.samples.size()];
      const auto& pair_table = combinations(n, 2);
      const VecX<double> dv = dwX(p);
      const auto frame = transverse_frame(w.ex.fm, p);
      for (std::size_t a = 0; a < frame.size(); ++a)
        for (std::size_t b = a + 1; b < frame.size(); ++b) {
          std::vector<VecX<double>> pair = {frame[a], frame[b]};
          const double lhs = apply_form<double>(n, 2, dv, pair);
          const double rhs =
              transverse_metric(w.ex.fm, p,
                                bott_dir(w.ex.fm, p, frame[a], X), frame[b]) -
              transverse_metric(w.ex.fm, p,
                                bott_dir(w.ex.fm, p, frame[b], X), frame[a]);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
      (void)pair_table;
    }
  }
}

TEST_CASE("Bochner-type statements across the gallery") {
  SUBCASE("Hopf: positive transverse Ricci forces vanishing") {
    const Workbench& w = bench("hopf");
    const auto killing = classify_killing(w.ex.fm, w.fields, w.samples);
    const auto parallel = classify_parallel(w.ex.fm, w.fields, w.samples);
    const auto harmonic =
        classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true);
    const auto chk = bochner_theorem_check(w.ex.fm, killing, parallel, harmonic,
                                           w.sol.b1_harmonic, w.samples);
    CHECK(chk.ric_min == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(chk.vanishing_applicable);
    CHECK(chk.vanishing_holds);
    CHECK(chk.b1_bound_holds);
    CHECK(chk.inclusion_holds);
    CHECK_FALSE(chk.flat_equality_applicable);
  }

  SUBCASE("flat examples: inclusion, bound and the flat equality") {
    for (const char* name : {"product_t3", "kronecker", "heisenberg3",
                             "quat_heisenberg7"}) {
      const Workbench& w = bench(name);
      CAPTURE(name);
      const auto killing = classify_killing(w.ex.fm, w.fields, w.samples);
      const auto parallel = classify_parallel(w.ex.fm, w.fields, w.samples);
      const auto harmonic =
          classify_basic_harmonic(w.ex.fm, w.fields, w.samples, true);
      const auto chk = bochner_theorem_check(w.ex.fm, killing, parallel, harmonic,
                                             w.sol.b1_harmonic, w.samples);
      CHECK(chk.ricci_flat);
      CHECK(chk.inclusion_holds);
      CHECK(chk.inclusion_angle < 1e-6);
      CHECK(chk.b1_bound_holds);
      CHECK_FALSE(chk.vanishing_applicable);
      CHECK(chk.flat_equality_applicable);
      CHECK(chk.flat_equality_holds);
    }
  }
}
