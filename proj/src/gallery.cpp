#include "folia/gallery.hpp"

namespace folia {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;
constexpr double kPi = 3.14159265358979323846264338327950288;

MatrixField constant_metric(const MatrixXd& m) {
  return MatrixField::from([m](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    MatX<S> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out(i, j) = S(m(i, j));
    return out;
  });
}

/// cos/sin(2 pi k.x) over the given coordinate axes, |k|_inf <= cutoff,
/// one representative per +-k pair, constants first.
std::vector<ScalarField> fourier_pool(const std::vector<int>& axes, int cutoff) {
  std::vector<ScalarField> out;
  out.push_back(constant_scalar(1.0));
  const int d = static_cast<int>(axes.size());
  std::vector<int> k(d, -cutoff);
  if (d == 0) return out;
  while (true) {
    // lexicographically positive representative of {k, -k}
    int lead = 0;
    for (int i = 0; i < d; ++i) {
      if (k[i] != 0) {
        lead = k[i];
        break;
      }
    }
    if (lead > 0) {
      const std::vector<int> kv = k;
      out.push_back(ScalarField::from([axes, kv](const auto& p) {
        using S = point_scalar_t<decltype(p)>;
        S phase = S(0.0);
        for (std::size_t i = 0; i < axes.size(); ++i)
          phase += (kTwoPi * kv[i]) * p.x(axes[i]);
        return cos(phase);
      }));
      out.push_back(ScalarField::from([axes, kv](const auto& p) {
        using S = point_scalar_t<decltype(p)>;
        S phase = S(0.0);
        for (std::size_t i = 0; i < axes.size(); ++i)
          phase += (kTwoPi * kv[i]) * p.x(axes[i]);
        return sin(phase);
      }));
    }
    int axis = 0;
    while (axis < d && ++k[axis] > cutoff) k[axis++] = -cutoff;
    if (axis == d) break;
  }
  return out;
}

FormField scaled_combo_form(int n, int k, const std::vector<int>& combo,
                            const ScalarField& f) {
  const int idx = combination_index(combinations(n, k), combo);
  const int comps = static_cast<int>(combinations(n, k).size());
  return FormField::from(k, [f, idx, comps](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> out = VecX<S>::Zero(comps);
    out(idx) = f(p);
    return out;
  });
}

FormField scalar_as_form0(const ScalarField& f) {
  return FormField::from(0, [f](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> out(1);
    out(0) = f(p);
    return out;
  });
}

/// Entry of the frame backend's adjoint point matrix as a scalar field.
ScalarField adjoint_entry(int r, int c) {
  return ScalarField::from([r, c](const auto& p) { return p.A(r, c); });
}

ScalarField adjoint_product(int r1, int c1, int r2, int c2) {
  return ScalarField::from(
      [r1, c1, r2, c2](const auto& p) { return p.A(r1, c1) * p.A(r2, c2); });
}

/// Right-invariant field on a frame backend: coefficients (A w) in the
/// invariant frame. project_first drops the leaf (index 0) coefficient.
VectorField right_invariant_field(const VectorXd& w, bool drop_first) {
  return VectorField::from([w, drop_first](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const int n = static_cast<int>(p.A.rows());
    VecX<S> out = VecX<S>::Zero(n);
    for (int i = 0; i < n; ++i) {
      S acc = S(0.0);
      for (int j = 0; j < n; ++j) acc += p.A(i, j) * w(j);
      out(i) = acc;
    }
    if (drop_first) out(0) = S(0.0);
    return out;
  });
}

/// Product quadrature on the unit quaternions mapped through the rotation
/// matrix: Chebyshev-Gauss (second kind) in the polar angle, Gauss-Legendre
/// in cos(theta), midpoint in phi. Weights sum to 2 pi^2.
std::vector<std::pair<MatrixXd, double>> s3_rule(int n_chi, int n_theta, int n_phi) {
  std::vector<std::pair<MatrixXd, double>> rule;
  const auto [gl_x, gl_w] = legendre_rule(n_theta);
  for (int j = 1; j <= n_chi; ++j) {
    const double chi = j * kPi / (n_chi + 1);
    const double wchi = kPi / (n_chi + 1) * std::sin(chi) * std::sin(chi);
    for (int t = 0; t < n_theta; ++t) {
      const double ct = gl_x(t);
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int m = 0; m < n_phi; ++m) {
        const double phi = (m + 0.5) * kTwoPi / n_phi;
        const double w0 = std::cos(chi);
        const double x = std::sin(chi) * st * std::cos(phi);
        const double y = std::sin(chi) * st * std::sin(phi);
        const double z = std::sin(chi) * ct;
        MatrixXd A(3, 3);
        A << 1 - 2 * (y * y + z * z), 2 * (x * y - w0 * z), 2 * (x * z + w0 * y),
            2 * (x * y + w0 * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w0 * x),
            2 * (x * z - w0 * y), 2 * (y * z + w0 * x), 1 - 2 * (x * x + y * y);
        rule.emplace_back(A, wchi * gl_w(t) * (kTwoPi / n_phi));
      }
    }
  }
  return rule;
}

std::vector<std::vector<std::vector<double>>> zero_constants(int n) {
  return std::vector<std::vector<std::vector<double>>>(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

VectorXd unit(int n, int i) {
  VectorXd v = VectorXd::Zero(n);
  v(i) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------

GalleryExample make_product_t3() {
  GalleryExample ex;
  ex.name = "product_t3";

  ChartBackend C;
  C.n = 3;
  C.lo = VectorXd::Zero(3);
  C.hi = VectorXd::Ones(3);
  C.period = {1.0, 1.0, 1.0};
  C.metric = constant_metric(MatrixXd::Identity(3, 3));

  Foliation F;
  F.leaf_frame = {constant_vector(unit(3, 0))};
  F.transverse_hint = {constant_vector(unit(3, 1)), constant_vector(unit(3, 2))};
  F.grid_axes = {1, 2};
  ex.fm = {Backend(std::move(C)), std::move(F)};

  const std::vector<int> taxes = {1, 2};
  ex.form_candidates = [taxes](int degree, int cutoff) {
    std::vector<FormField> out;
    for (const ScalarField& f : fourier_pool(taxes, cutoff)) {
      if (degree == 0) out.push_back(scalar_as_form0(f));
      if (degree == 1) {
        out.push_back(scaled_combo_form(3, 1, {1}, f));
        out.push_back(scaled_combo_form(3, 1, {2}, f));
      }
      if (degree == 2) out.push_back(scaled_combo_form(3, 2, {1, 2}, f));
    }
    return out;
  };
  ex.field_candidates = [taxes](int cutoff) {
    std::vector<VectorField> out;
    for (const ScalarField& f : fourier_pool(taxes, cutoff)) {
      out.push_back(scaled_field(f, constant_vector(unit(3, 1))));
      out.push_back(scaled_field(f, constant_vector(unit(3, 2))));
    }
    return out;
  };

  for (const ScalarField& f : fourier_pool(taxes, 1))
    for (int a = 0; a < 3; ++a)
      ex.foliate_pool.push_back(scaled_field(f, constant_vector(unit(3, a))));
  for (const ScalarField& f : fourier_pool({0, 1, 2}, 1)) {
    ex.test_functions.push_back(f);
    for (int a = 0; a < 3; ++a)
      ex.test_fields.push_back(scaled_field(f, constant_vector(unit(3, a))));
  }

  ex.expected = {
      {"codim", {2.0, "product foliation of the flat 3-torus by x-circles"}},
      {"b1", {2.0, "transverse flat 2-torus: first cohomology has rank 2"}},
      {"dim_iso", {2.0, "Killing fields of a flat 2-torus are the translations"}},
      {"dim_parallel", {2.0, "flat metric: parallel = constant-coefficient fields"}},
      {"dim_basic_harmonic", {2.0, "flat: harmonic = parallel"}},
      {"ric_t_min", {0.0, "flat transverse metric"}},
      {"volume", {1.0, "unit box, determinant one"}},
  };
  ex.notes = {"flat T^3, leaves = x-circles, transverse geometry = flat T^2"};
  return ex;
}

GalleryExample make_kronecker(double slope) {
  GalleryExample ex;
  ex.name = "kronecker";

  ChartBackend C;
  C.n = 2;
  C.lo = VectorXd::Zero(2);
  C.hi = VectorXd::Ones(2);
  C.period = {1.0, 1.0};
  C.metric = constant_metric(MatrixXd::Identity(2, 2));

  VectorXd leaf(2), normal(2);
  leaf << 1.0, slope;
  normal << -slope, 1.0;

  Foliation F;
  F.leaf_frame = {constant_vector(leaf)};
  F.transverse_hint = {constant_vector(normal)};
  ex.fm = {Backend(std::move(C)), std::move(F)};
  ex.subspace_filter = true;

  ex.form_candidates = [](int degree, int cutoff) {
    std::vector<FormField> out;
    for (const ScalarField& f : fourier_pool({0, 1}, cutoff)) {
      if (degree == 0) out.push_back(scalar_as_form0(f));
      if (degree == 1) {
        out.push_back(scaled_combo_form(2, 1, {0}, f));
        out.push_back(scaled_combo_form(2, 1, {1}, f));
      }
      if (degree == 2) out.push_back(scaled_combo_form(2, 2, {0, 1}, f));
    }
    return out;
  };
  ex.field_candidates = [](int cutoff) {
    std::vector<VectorField> out;
    for (const ScalarField& f : fourier_pool({0, 1}, cutoff)) {
      out.push_back(scaled_field(f, constant_vector(unit(2, 0))));
      out.push_back(scaled_field(f, constant_vector(unit(2, 1))));
    }
    return out;
  };

  ex.foliate_pool.push_back(constant_vector(leaf));
  ex.foliate_pool.push_back(constant_vector(normal));
  for (const ScalarField& f : fourier_pool({0, 1}, 1))
    ex.foliate_pool.push_back(scaled_field(f, constant_vector(leaf)));
  for (const ScalarField& f : fourier_pool({0, 1}, 1)) {
    ex.test_functions.push_back(f);
    ex.test_fields.push_back(scaled_field(f, constant_vector(unit(2, 0))));
    ex.test_fields.push_back(scaled_field(f, constant_vector(unit(2, 1))));
  }

  ex.expected = {
      {"codim", {1.0, "line foliation of the flat 2-torus"}},
      {"b1", {1.0, "basic forms with dense leaves: constants times the unit"
                   " transverse coform"}},
      {"dim_iso", {1.0, "constant multiples of the unit normal"}},
      {"dim_parallel", {1.0, "flat geometry: the unit normal is parallel"}},
      {"dim_basic_harmonic", {1.0, "flat: harmonic = parallel"}},
      {"ric_t_min", {0.0, "flat transverse geometry"}},
  };
  ex.notes = {"linear foliation of T^2 with slope " + std::to_string(slope)};
  bool rational = false;
  for (int den = 1; den <= 32 && !rational; ++den)
    if (std::abs(slope - std::round(slope * den) / den) < 1e-9) rational = true;
  if (rational)
    ex.notes.push_back(
        "slope is rational: leaves close up and the basic ansatz is larger than"
        " in the dense-leaf case (accepted, flagged)");
  else
    ex.notes.push_back(
        "irrational slope: leaves are dense, no global quotient manifold exists");
  return ex;
}

GalleryExample make_hopf() {
  GalleryExample ex;
  ex.name = "hopf";

  auto c = zero_constants(3);
  // su(2) with [e_i, e_j] = -2 eps_{ijk} e_k; the sign makes the standard
  // contact structure below positively oriented on the basis order.
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j][k] = -2.0 * eps[i][j][k];

  FrameBackend FB = make_frame_backend(c, MatrixXd::Identity(3, 3),
                                       2.0 * kPi * kPi);
  // exact for the polynomial degrees the ansatz spaces reach (adjoint-entry
  // monomials up to degree 4 in products)
  FB.quadrature = s3_rule(10, 10, 14);
  FB.quadrature_fine = s3_rule(14, 14, 20);

  Foliation F;
  F.leaf_frame = {constant_vector(unit(3, 0))};
  F.transverse_hint = {constant_vector(unit(3, 1)), constant_vector(unit(3, 2))};
  ex.fm = {Backend(std::move(FB)), std::move(F)};
  ex.subspace_filter = true;
  ex.default_cutoff = 1;  // polynomial degree in adjoint entries

  auto monomials = [](int cutoff) {
    std::vector<ScalarField> out;
    out.push_back(constant_scalar(1.0));
    if (cutoff >= 1)
      for (int r = 0; r < 3; ++r)
        for (int cc = 0; cc < 3; ++cc) out.push_back(adjoint_entry(r, cc));
    if (cutoff >= 2)
      for (int a = 0; a < 9; ++a)
        for (int b = a; b < 9; ++b)
          out.push_back(adjoint_product(a / 3, a % 3, b / 3, b % 3));
    return out;
  };

  ex.form_candidates = [monomials](int degree, int cutoff) {
    std::vector<FormField> out;
    for (const ScalarField& f : monomials(cutoff)) {
      if (degree == 0) out.push_back(scalar_as_form0(f));
      if (degree == 1) {
        out.push_back(scaled_combo_form(3, 1, {1}, f));
        out.push_back(scaled_combo_form(3, 1, {2}, f));
      }
      if (degree == 2) out.push_back(scaled_combo_form(3, 2, {1, 2}, f));
    }
    return out;
  };
  ex.field_candidates = [](int /*cutoff*/) {
    std::vector<VectorField> out;
    for (int i = 0; i < 3; ++i)
      out.push_back(right_invariant_field(unit(3, i), /*drop_first=*/true));
    // gradients of the first-row coordinate functions: transverse but
    // neither Killing nor divergence-free; grad u_j = 2A(2,j) e1 - 2A(1,j) e2
    for (int j = 0; j < 3; ++j)
      out.push_back(VectorField::from([j](const auto& p) {
        using S = point_scalar_t<decltype(p)>;
        VecX<S> v = VecX<S>::Zero(3);
        v(1) = 2.0 * p.A(2, j);
        v(2) = -2.0 * p.A(1, j);
        return v;
      }));
    return out;
  };

  ContactData cd;
  cd.reeb = {constant_vector(unit(3, 0))};
  cd.eta = {scaled_combo_form(3, 1, {0}, constant_scalar(1.0))};
  MatrixXd phi = MatrixXd::Zero(3, 3);
  phi(1, 2) = 1.0;   // phi e2 = e1
  phi(2, 1) = -1.0;  // phi e1 = -e2
  cd.phi = {constant_metric(phi)};
  ex.contact = cd;

  ex.aut_candidates = {constant_vector(unit(3, 0)),
                       right_invariant_field(unit(3, 0), false),
                       right_invariant_field(unit(3, 1), false),
                       right_invariant_field(unit(3, 2), false),
                       scaled_field(adjoint_entry(0, 1), constant_vector(unit(3, 0)))};
  ex.aut_reeb_indices = {0};

  ex.foliate_pool.push_back(constant_vector(unit(3, 0)));
  for (int i = 0; i < 3; ++i)
    ex.foliate_pool.push_back(right_invariant_field(unit(3, i), true));
  for (int j = 0; j < 3; ++j)
    ex.foliate_pool.push_back(
        scaled_field(adjoint_entry(0, j), constant_vector(unit(3, 0))));

  for (int i = 0; i < 3; ++i) {
    ex.test_fields.push_back(constant_vector(unit(3, i)));
    ex.test_fields.push_back(right_invariant_field(unit(3, i), false));
    ex.test_fields.push_back(right_invariant_field(unit(3, i), true));
    ex.test_functions.push_back(adjoint_entry(0, i));
    ex.test_functions.push_back(adjoint_entry(1, i));
  }
  ex.test_functions.push_back(constant_scalar(1.0));

  ex.expected = {
      {"codim", {2.0, "circle fibers of the Hopf fibration on the unit 3-sphere"}},
      {"b1", {0.0, "transverse model is the round 2-sphere: no harmonic 1-forms"}},
      {"dim_iso", {3.0, "rotation algebra of the 2-sphere"}},
      {"dim_parallel", {0.0, "positive transverse curvature forbids parallel"
                             " fields"}},
      {"dim_basic_harmonic", {0.0, "no harmonic 1-forms on the 2-sphere"}},
      {"ric_t_min", {4.0, "round 2-sphere of radius 1/2: Ricci = (1/r^2) g"}},
      {"transverse_sectional", {4.0, "sectional curvature 1/r^2 at r = 1/2; also"
                                     " 1 + 3|A|^2 from the submersion tensor"}},
      {"eta_einstein_a", {2.0, "unit 3-sphere is Einstein with Ric = 2g"}},
      {"eta_einstein_b", {0.0, "unit 3-sphere is Einstein, no eta correction"}},
      {"dim_aut", {4.0, "u(2): rotations of the base plus the Reeb flow"}},
      {"volume", {2.0 * kPi * kPi, "volume of the unit 3-sphere"}},
  };
  ex.notes = {"unit 3-sphere as the su(2) frame algebra; Reeb = first frame"
              " field; transverse geometry = round 2-sphere of radius 1/2"};
  return ex;
}

GalleryExample make_heisenberg3() {
  GalleryExample ex;
  ex.name = "heisenberg3";

  ChartBackend C;
  C.n = 3;
  C.lo = VectorXd::Zero(3);
  C.hi = VectorXd::Ones(3);
  C.period = {1.0, 1.0, 1.0};
  // g = (dx^2 + dy^2)/4 + eta (x) eta with eta = (dz + x dy)/2
  C.metric = MatrixField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const S x = p.x(0);
    MatX<S> g = MatX<S>::Zero(3, 3);
    g(0, 0) = S(0.25);
    g(1, 1) = 0.25 + 0.25 * x * x;
    g(1, 2) = 0.25 * x;
    g(2, 1) = 0.25 * x;
    g(2, 2) = S(0.25);
    return g;
  });

  // invariant frame: e1 = 2 d/dx, e2 = 2 d/dy - 2x d/dz, xi = 2 d/dz
  const VectorField e1 = constant_vector(2.0 * unit(3, 0));
  const VectorField e2 = VectorField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> v = VecX<S>::Zero(3);
    v(1) = S(2.0);
    v(2) = -2.0 * p.x(0);
    return v;
  });
  const VectorField xi = constant_vector(2.0 * unit(3, 2));

  Foliation F;
  F.leaf_frame = {xi};
  F.transverse_hint = {e1, e2};
  F.grid_axes = {0, 1};
  ex.fm = {Backend(std::move(C)), std::move(F)};

  const std::vector<int> taxes = {0, 1};
  ex.form_candidates = [taxes](int degree, int cutoff) {
    std::vector<FormField> out;
    for (const ScalarField& f : fourier_pool(taxes, cutoff)) {
      if (degree == 0) out.push_back(scalar_as_form0(f));
      if (degree == 1) {
        out.push_back(scaled_combo_form(3, 1, {0}, f));
        out.push_back(scaled_combo_form(3, 1, {1}, f));
      }
      if (degree == 2) out.push_back(scaled_combo_form(3, 2, {0, 1}, f));
    }
    return out;
  };
  ex.field_candidates = [taxes, e1, e2](int cutoff) {
    std::vector<VectorField> out;
    for (const ScalarField& f : fourier_pool(taxes, cutoff)) {
      out.push_back(scaled_field(f, e1));
      out.push_back(scaled_field(f, e2));
    }
    return out;
  };

  ContactData cd;
  cd.reeb = {xi};
  cd.eta = {FormField::from(1, [](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> v = VecX<S>::Zero(3);
    v(1) = 0.5 * p.x(0);
    v(2) = S(0.5);
    return v;
  })};
  cd.phi = {MatrixField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    MatX<S> m = MatX<S>::Zero(3, 3);
    m(0, 1) = S(1.0);
    m(1, 0) = S(-1.0);
    m(2, 0) = p.x(0);
    return m;
  })};
  ex.contact = cd;

  ex.aut_candidates = {xi, e1, e2,
                       scaled_field(fourier_pool({0}, 1)[1], xi)};  // cos(2 pi x) xi
  ex.aut_reeb_indices = {0};

  for (const ScalarField& f : fourier_pool(taxes, 1)) {
    ex.foliate_pool.push_back(scaled_field(f, e1));
    ex.foliate_pool.push_back(scaled_field(f, e2));
    ex.foliate_pool.push_back(scaled_field(f, xi));
    ex.test_functions.push_back(f);
    ex.test_fields.push_back(scaled_field(f, e1));
    ex.test_fields.push_back(scaled_field(f, e2));
    ex.test_fields.push_back(scaled_field(f, xi));
  }

  ex.expected = {
      {"codim", {2.0, "Reeb foliation of the Heisenberg nilmanifold"}},
      {"b1", {2.0, "transverse flat 2-torus"}},
      {"dim_iso", {2.0, "translations of the transverse flat torus"}},
      {"dim_parallel", {2.0, "flat transverse geometry"}},
      {"dim_basic_harmonic", {2.0, "flat: harmonic = parallel"}},
      {"ric_t_min", {0.0, "transverse Calabi-Yau (flat torus)"}},
      {"eta_einstein_a", {-2.0, "left-invariant metric curvature: principal Ricci"
                                " values (-2,-2,2) with unit Reeb direction"}},
      {"eta_einstein_b", {4.0, "a + b = Ric(xi,xi) = 2 forces b = 4"}},
      {"ricci_xi", {2.0, "Ricci along the Reeb field of the invariant metric"}},
      {"dim_aut", {1.0, "only the Reeb flow extends: transverse translations"
                        " obstruct through nonzero basic classes of iota_X d eta"}},
      {"volume", {0.125, "constant density 1/8 over the unit box"}},
  };
  ex.notes = {
      "Heisenberg nilmanifold with its invariant Sasaki structure; chart"
      " functions and fields are built lattice-invariant (basic data depends"
      " on x, y only and is 1-periodic)"};
  return ex;
}

GalleryExample make_warped_nonharmonic() {
  GalleryExample ex;
  ex.name = "warped_nonharmonic";
  ex.harmonic_expected = false;

  ChartBackend C;
  C.n = 2;
  C.lo = VectorXd::Zero(2);
  C.hi = VectorXd::Ones(2);
  C.period = {1.0, 1.0};
  // dx^2 + f(x)^2 dy^2 with f = 2 + sin(2 pi x): y-circle leaves are not
  // minimal, so the foliation is deliberately non-harmonic
  C.metric = MatrixField::from([](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const S f = 2.0 + sin(kTwoPi * p.x(0));
    MatX<S> g = MatX<S>::Zero(2, 2);
    g(0, 0) = S(1.0);
    g(1, 1) = f * f;
    return g;
  });

  Foliation F;
  F.leaf_frame = {constant_vector(-unit(2, 1))};  // span of d/dy, oriented
  F.transverse_hint = {constant_vector(unit(2, 0))};
  F.grid_axes = {0};
  ex.fm = {Backend(std::move(C)), std::move(F)};

  ex.form_candidates = [](int degree, int cutoff) {
    std::vector<FormField> out;
    for (const ScalarField& f : fourier_pool({0}, cutoff)) {
      if (degree == 0) out.push_back(scalar_as_form0(f));
      if (degree == 1) out.push_back(scaled_combo_form(2, 1, {0}, f));
    }
    return out;
  };
  ex.field_candidates = [](int cutoff) {
    std::vector<VectorField> out;
    for (const ScalarField& f : fourier_pool({0}, cutoff))
      out.push_back(scaled_field(f, constant_vector(unit(2, 0))));
    return out;
  };

  for (const ScalarField& f : fourier_pool({0, 1}, 1)) {
    ex.test_functions.push_back(f);
    ex.test_fields.push_back(scaled_field(f, constant_vector(unit(2, 0))));
    ex.test_fields.push_back(scaled_field(f, constant_vector(unit(2, 1))));
  }
  for (const ScalarField& f : fourier_pool({0}, 1))
    ex.foliate_pool.push_back(scaled_field(f, constant_vector(unit(2, 1))));

  ex.expected = {
      {"codim", {1.0, "circle leaves in a warped product"}},
      {"sup_mean_curvature_min", {0.5, "sup |f'/f| for f = 2 + sin is at least"
                                       " 2 pi / 3 > 0.5"}},
  };
  ex.notes = {"negative control: a Riemannian foliation that is not harmonic;"
              " every harmonicity-gated check must refuse to run here"};
  return ex;
}

GalleryExample make_quat_heisenberg7() {
  GalleryExample ex;
  ex.name = "quat_heisenberg7";
  ex.stretch = true;

  // basis: xi_1, xi_2, xi_3 (center), e_4..e_7 (quaternionic horizontal)
  auto c = zero_constants(7);
  auto set = [&c](int a, int b, int i, double v) {
    c[a][b][i] = v;
    c[b][a][i] = -v;
  };
  set(3, 4, 0, 2.0);
  set(5, 6, 0, 2.0);
  set(3, 5, 1, 2.0);
  set(4, 6, 1, -2.0);
  set(3, 6, 2, 2.0);
  set(4, 5, 2, 2.0);

  FrameBackend FB = make_frame_backend(c, MatrixXd::Identity(7, 7), 1.0);

  Foliation F;
  for (int i = 0; i < 3; ++i) F.leaf_frame.push_back(constant_vector(unit(7, i)));
  for (int a = 3; a < 7; ++a)
    F.transverse_hint.push_back(constant_vector(unit(7, a)));
  ex.fm = {Backend(std::move(FB)), std::move(F)};

  ex.form_candidates = [](int degree, int /*cutoff*/) {
    std::vector<FormField> out;
    if (degree == 0) out.push_back(scalar_as_form0(constant_scalar(1.0)));
    if (degree == 1)
      for (int a = 3; a < 7; ++a)
        out.push_back(scaled_combo_form(7, 1, {a}, constant_scalar(1.0)));
    if (degree == 2)
      for (int a = 3; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
          out.push_back(scaled_combo_form(7, 2, {a, b}, constant_scalar(1.0)));
    return out;
  };
  ex.field_candidates = [](int /*cutoff*/) {
    std::vector<VectorField> out;
    for (int a = 3; a < 7; ++a) out.push_back(constant_vector(unit(7, a)));
    return out;
  };

  // three almost contact structures: phi_i = left quaternion action on the
  // horizontal space, rotation on the center
  ContactData cd;
  std::vector<MatrixXd> phis(3, MatrixXd::Zero(7, 7));
  // phi_1
  phis[0](2, 1) = 1.0;
  phis[0](1, 2) = -1.0;
  phis[0](4, 3) = 1.0;
  phis[0](3, 4) = -1.0;
  phis[0](6, 5) = 1.0;
  phis[0](5, 6) = -1.0;
  // phi_2
  phis[1](0, 2) = 1.0;
  phis[1](2, 0) = -1.0;
  phis[1](5, 3) = 1.0;
  phis[1](6, 4) = -1.0;
  phis[1](3, 5) = -1.0;
  phis[1](4, 6) = 1.0;
  // phi_3
  phis[2](1, 0) = 1.0;
  phis[2](0, 1) = -1.0;
  phis[2](6, 3) = 1.0;
  phis[2](5, 4) = 1.0;
  phis[2](4, 5) = -1.0;
  phis[2](3, 6) = -1.0;
  for (int i = 0; i < 3; ++i) {
    cd.reeb.push_back(constant_vector(unit(7, i)));
    cd.eta.push_back(scaled_combo_form(7, 1, {i}, constant_scalar(1.0)));
    cd.phi.push_back(constant_metric(phis[i]));
  }
  ex.contact = cd;

  for (int i = 0; i < 7; ++i) ex.aut_candidates.push_back(constant_vector(unit(7, i)));
  ex.aut_reeb_indices = {0, 1, 2};

  for (int i = 0; i < 7; ++i) {
    ex.foliate_pool.push_back(constant_vector(unit(7, i)));
    ex.test_fields.push_back(constant_vector(unit(7, i)));
  }
  ex.test_functions.push_back(constant_scalar(1.0));

  ex.expected = {
      {"codim", {4.0, "3-dimensional center foliates the 7-dimensional"
                      " quaternionic Heisenberg quotient"}},
      {"b1", {4.0, "transverse flat 4-torus standing in for a hyperkaehler base"}},
      {"dim_iso", {4.0, "translations of the flat 4-torus"}},
      {"dim_parallel", {4.0, "flat transverse geometry"}},
      {"dim_basic_harmonic", {4.0, "flat: harmonic = parallel"}},
      {"ric_t_min", {0.0, "degenerate case: quaternionic Kaehler model with"
                          " zero Ricci curvature"}},
      {"alpha", {1.0, "structure equations built with unit horizontal scale"}},
      {"delta", {0.0, "degenerate: the center is abelian"}},
      {"dim_aut", {3.0, "the three Reeb flows; horizontal translations fail"
                        " to preserve the metric"}},
  };
  ex.notes = {"optional stretch example at dimension 7; invariant data only"};
  return ex;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"product_t3", "kronecker",          "hopf",
          "heisenberg3", "warped_nonharmonic", "quat_heisenberg7"};
}

GalleryExample construct(const std::string& name,
                         const std::map<std::string, double>& params) {
  GalleryExample ex;
  if (name == "product_t3") {
    ex = make_product_t3();
  } else if (name == "kronecker") {
    const double slope =
        params.count("slope") ? params.at("slope") : std::sqrt(2.0);
    ex = make_kronecker(slope);
  } else if (name == "hopf") {
    ex = make_hopf();
  } else if (name == "heisenberg3") {
    ex = make_heisenberg3();
  } else if (name == "warped_nonharmonic") {
    ex = make_warped_nonharmonic();
  } else if (name == "quat_heisenberg7") {
    ex = make_quat_heisenberg7();
  } else {
    throw std::invalid_argument("construct: unknown gallery example '" + name + "'");
  }
  if (params.count("cutoff")) ex.default_cutoff = int(params.at("cutoff"));
  return ex;
}

}  // namespace folia
