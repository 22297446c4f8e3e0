#include "folia/hodge.hpp"

#include <limits>
#include <sstream>

namespace folia {

QuadratureNodes quadrature_nodes(const Backend& M, int resolution) {
  QuadratureNodes out;
  if (M.is_chart()) {
    const auto& C = M.chart();
    const int n = C.n;
    std::vector<double> h(n);
    double cell = 1.0;
    for (int i = 0; i < n; ++i) {
      h[i] = (C.hi(i) - C.lo(i)) / resolution;
      cell *= h[i];
    }
    std::vector<int> idx(n, 0);
    while (true) {
      Point p;
      p.x.resize(n);
      for (int i = 0; i < n; ++i) p.x(i) = C.lo(i) + (idx[i] + 0.5) * h[i];
      const double density = std::sqrt(determinant<double>(M.metric_at(p)));
      out.pts.push_back(p);
      out.weights.push_back(cell * density);
      int axis = 0;
      while (axis < n && ++idx[axis] == resolution) idx[axis++] = 0;
      if (axis == n) break;
    }
    return out;
  }
  const auto& F = M.frame();
  if (!F.quadrature.empty()) {
    for (const auto& [A, w] : F.quadrature) {
      Point p;
      p.A = A;
      out.pts.push_back(p);
      out.weights.push_back(w);
    }
    return out;
  }
  out.pts.push_back(M.base_point());
  out.weights.push_back(F.total_volume);
  return out;
}

namespace {

// Pointwise pairing matrix T with T_IJ = det(g^inv[I, J]) over combinations.
MatrixXd pairing_matrix(const Backend& M, const Point& p, int n, int k) {
  if (k == 0) return MatrixXd::Ones(1, 1);
  const MatrixXd ginv = invert<double>(M.metric_at(p));
  const auto& table = combinations(n, k);
  const int m = static_cast<int>(table.size());
  MatrixXd T(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      MatX<double> sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = ginv(table[a][r], table[b][c]);
      T(a, b) = determinant<double>(sub);
    }
  return T;
}

MatrixXd gram_of(const FoliatedManifold& fm, const std::vector<FormField>& basis,
                 int degree, const QuadratureNodes& nodes) {
  const int m = static_cast<int>(basis.size());
  if (m == 0) return MatrixXd::Zero(0, 0);
  const int comp = static_cast<int>(combinations(fm.dim(), degree).size());
  MatrixXd G = MatrixXd::Zero(m, m);
  for (std::size_t s = 0; s < nodes.pts.size(); ++s) {
    MatrixXd V(comp, m);
    for (int b = 0; b < m; ++b) V.col(b) = basis[b](nodes.pts[s]);
    const MatrixXd T = pairing_matrix(fm.M, nodes.pts[s], fm.dim(), degree);
    G += nodes.weights[s] * V.transpose() * T * V;
  }
  return 0.5 * (G + G.transpose());
}

// Subspace extraction solves a sampled linear system over the candidate
// span; the sample set must overdetermine the candidate count or spurious
// nullspace directions appear. Deterministically tops up with extra points.
std::vector<Point> overdetermined_samples(const FoliatedManifold& fm,
                                          const std::vector<Point>& samples,
                                          std::size_t candidates) {
  std::vector<Point> out = samples;
  Rng rng(0xf01dULL + 31 * candidates);
  while (out.size() < 3 * candidates) out.push_back(fm.M.random_point(rng));
  return out;
}

// Rows of the basicness map for one form at one point: components of
// iota_L w for every leaf field, then components of L_L w.
void basic_rows(const FoliatedManifold& fm, const FormField& w, const Point& p,
                std::vector<double>& rows) {
  const int n = fm.dim();
  const int k = w.degree();
  if (k == 0) {
    for (const VectorField& L : fm.F.leaf_frame)
      rows.push_back(dir_derivative(fm.M, form0_as_scalar(w), p, VecX<double>(L(p))));
    return;
  }
  const VecX<double> comps = w(p);
  for (const VectorField& L : fm.F.leaf_frame) {
    const VecX<double> iota = contract_first_slot<double>(n, k, comps, VecX<double>(L(p)));
    for (int i = 0; i < iota.size(); ++i) rows.push_back(iota(i));
    const FormField lie = lie_derivative_form(fm.M, L, w);
    const VecX<double> lv = lie(p);
    for (int i = 0; i < lv.size(); ++i) rows.push_back(lv(i));
  }
}

}  // namespace

ScalarField form0_as_scalar(const FormField& w) {
  return ScalarField::from([w](const auto& p) { return w(p)(0); });
}

AnsatzSpace build_ansatz(const FoliatedManifold& fm, int degree,
                         const std::vector<FormField>& candidates,
                         bool subspace_filter, const QuadratureNodes& nodes,
                         const std::vector<Point>& samples, std::string provenance,
                         double basic_tol, double rank_rel_tol) {
  AnsatzSpace out;
  out.degree = degree;
  out.provenance = std::move(provenance);
  out.gram = MatrixXd::Zero(0, 0);
  if (candidates.empty()) return out;
  const int m0 = static_cast<int>(candidates.size());

  // coefficient matrix from the original candidates; compositions stay flat
  // so each final basis element evaluates the candidate pool exactly once
  MatrixXd coeff;
  if (subspace_filter) {
    // sampled basicness map over the candidate span; nullspace = basic part
    const auto pts = overdetermined_samples(fm, samples, candidates.size());
    std::vector<std::vector<double>> cols(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (const Point& p : pts) basic_rows(fm, candidates[c], p, cols[c]);
    MatrixXd A(cols[0].size(), candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (std::size_t r = 0; r < cols[c].size(); ++r) A(r, c) = cols[c][r];
    NullspaceResult ns = nullspace(A, 1e-9);
    if (ns.basis.cols() == 0) return out;
    coeff = ns.basis;
  } else {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::vector<double> rows;
      for (const Point& p : samples) basic_rows(fm, candidates[c], p, rows);
      double res = 0.0;
      for (double r : rows) res = std::max(res, std::abs(r));
      if (res > basic_tol) {
        std::ostringstream msg;
        msg << "build_ansatz(" << out.provenance << "): candidate " << c
            << " of degree " << degree << " is not basic (residual " << res << ")";
        throw std::invalid_argument(msg.str());
      }
    }
    coeff = MatrixXd::Identity(m0, m0);
  }

  // one candidate-level gram; every later gram is a congruence transform
  const MatrixXd Gcand = gram_of(fm, candidates, degree, nodes);
  MatrixXd G = coeff.transpose() * Gcand * coeff;

  // drop Gram-null directions (functionally dependent candidates)
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(G);
  const VectorXd ev = eig.eigenvalues();
  const double cutoff = rank_rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-30);
  std::vector<int> keep_idx;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) keep_idx.push_back(i);
  if (static_cast<int>(keep_idx.size()) < G.rows()) {
    MatrixXd reduce(G.rows(), keep_idx.size());
    for (std::size_t k = 0; k < keep_idx.size(); ++k)
      reduce.col(k) = eig.eigenvectors().col(keep_idx[k]) / std::sqrt(ev(keep_idx[k]));
    coeff = coeff * reduce;
    G = coeff.transpose() * Gcand * coeff;
  }

  const bool identity_coeff =
      coeff.rows() == coeff.cols() && coeff.isIdentity(0.0);
  for (int c = 0; c < coeff.cols(); ++c)
    out.basis.push_back(identity_coeff
                            ? candidates[c]
                            : form_linear_combination(candidates, coeff.col(c)));
  out.gram = 0.5 * (G + G.transpose());
  return out;
}

FieldAnsatz build_field_ansatz(const FoliatedManifold& fm,
                               const std::vector<VectorField>& candidates,
                               bool subspace_filter,
                               const std::vector<Point>& samples,
                               std::string provenance, double tol) {
  FieldAnsatz out;
  out.provenance = std::move(provenance);
  if (candidates.empty()) return out;

  if (subspace_filter) {
    // rows: perp part of [L, X] plus the leaf part of X, per sample
    const int n = fm.dim();
    const auto pts = overdetermined_samples(fm, samples, candidates.size());
    std::vector<std::vector<double>> cols(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (const Point& p : pts) {
        for (const VectorField& L : fm.F.leaf_frame) {
          const VecX<double> br =
              project_perp(fm, p, lie_bracket(fm.M, L, candidates[c], p));
          for (int i = 0; i < n; ++i) cols[c].push_back(br(i));
        }
        const VecX<double> xe = project_leaf(fm, p, candidates[c](p));
        for (int i = 0; i < n; ++i) cols[c].push_back(xe(i));
      }
    }
    MatrixXd A(cols[0].size(), candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (std::size_t r = 0; r < cols[c].size(); ++r) A(r, c) = cols[c][r];
    NullspaceResult ns = nullspace(A, 1e-9);
    if (ns.singular_values.size() && ns.singular_values(0) < 1e-6) {
      for (const VectorField& c : candidates) out.basis.push_back(c);
    } else {
      for (int c = 0; c < ns.basis.cols(); ++c)
        out.basis.push_back(linear_combination(candidates, ns.basis.col(c)));
    }
  } else {
    out.basis = candidates;
  }

  for (const VectorField& X : out.basis) {
    const FieldClassification cls = classify_field(fm, X, samples, tol);
    out.transverse_residual = std::max(
        out.transverse_residual, std::max(cls.foliate_residual, cls.perp_residual));
    if (!cls.is_transverse)
      throw std::invalid_argument("build_field_ansatz(" + out.provenance +
                                  "): basis field is not transverse");
  }
  return out;
}

HodgeSolution build_basic_complex(const FoliatedManifold& fm, const AnsatzSpace& a0,
                                  const AnsatzSpace& a1, const AnsatzSpace& a2,
                                  const QuadratureNodes& nodes, double closure_tol,
                                  double eigen_rel_tol) {
  HodgeSolution sol;
  sol.gram0 = a0.gram;
  sol.gram1 = a1.gram;
  sol.gram2 = a2.gram;
  const int m0 = a0.size(), m1 = a1.size(), m2 = a2.size();

  // d matrix from degree k ansatz into degree k+1 ansatz via gram
  // projection; node-outer so target basis values and pairing matrices are
  // computed once per node.
  auto d_matrix = [&](const AnsatzSpace& from, const AnsatzSpace& to,
                      const char* label) {
    const int mf = from.size(), mt = to.size();
    MatrixXd D = MatrixXd::Zero(mt, mf);
    if (mf == 0) return D;
    std::vector<FormField> dws;
    dws.reserve(mf);
    for (int i = 0; i < mf; ++i)
      dws.push_back(exterior_derivative(fm.M, from.basis[i]));

    VectorXd dd = VectorXd::Zero(mf);
    MatrixXd rhs = MatrixXd::Zero(mt, mf);
    const int comp =
        static_cast<int>(combinations(fm.dim(), from.degree + 1).size());
    for (std::size_t s = 0; s < nodes.pts.size(); ++s) {
      const Point& p = nodes.pts[s];
      const MatrixXd T = pairing_matrix(fm.M, p, fm.dim(), from.degree + 1);
      MatrixXd Vto(comp, mt);
      for (int j = 0; j < mt; ++j) Vto.col(j) = to.basis[j](p);
      for (int i = 0; i < mf; ++i) {
        const VecX<double> dv = dws[i](p);
        const VectorXd Tdv = T * dv;
        dd(i) += nodes.weights[s] * dv.dot(Tdv);
        if (mt > 0) rhs.col(i) += nodes.weights[s] * (Vto.transpose() * Tdv);
      }
    }
    for (int i = 0; i < mf; ++i) {
      VectorXd c = VectorXd::Zero(mt);
      if (mt > 0) c = solve_linear<double>(to.gram, VectorXd(rhs.col(i)));
      const double defect = dd(i) - (mt > 0 ? c.dot(rhs.col(i)) : 0.0);
      const double rel = defect / std::max(dd(i), 1e-30);
      if (dd(i) > 1e-20) sol.closure_residual = std::max(sol.closure_residual, rel);
      if (dd(i) > 1e-20 && rel > closure_tol) {
        std::ostringstream msg;
        msg << "build_basic_complex: d of " << label << " basis element " << i
            << " (" << from.provenance << ") leaves the next ansatz"
            << " (relative defect " << rel << ")";
        throw std::invalid_argument(msg.str());
      }
      D.col(i) = c;
    }
    return D;
  };

  sol.D0 = d_matrix(a0, a1, "degree-0");
  sol.D1 = d_matrix(a1, a2, "degree-1");

  // gram-adjoints: delta_{k+1} = G_k^{-1} D_k^T G_{k+1}
  auto adjoint = [](const MatrixXd& Gk, const MatrixXd& D, const MatrixXd& Gk1) {
    if (D.rows() == 0 || D.cols() == 0)
      return MatrixXd::Zero(D.cols(), D.rows()).eval();
    MatrixXd rhs = D.transpose() * Gk1;
    MatrixXd out(Gk.rows(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j)
      out.col(j) = solve_linear<double>(Gk, VectorXd(rhs.col(j)));
    return out;
  };
  sol.delta1 = adjoint(sol.gram0, sol.D0, sol.gram1);
  sol.delta2 = adjoint(sol.gram1, sol.D1, sol.gram2);

  sol.laplacian1 = MatrixXd::Zero(m1, m1);
  if (m1 > 0) {
    if (m0 > 0) sol.laplacian1 += sol.D0 * sol.delta1;
    if (m2 > 0) sol.laplacian1 += sol.delta2 * sol.D1;

    // Delta_B is gram1-self-adjoint; solve the generalized symmetric problem
    MatrixXd A = sol.gram1 * sol.laplacian1;
    A = 0.5 * (A + A.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> eig(A, sol.gram1);
    sol.eigenvalues = eig.eigenvalues();
    const double lmax = std::max(sol.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
    sol.eigen_threshold = eigen_rel_tol * lmax;
    std::vector<int> kernel;
    for (int i = 0; i < m1; ++i)
      if (std::abs(sol.eigenvalues(i)) < sol.eigen_threshold) kernel.push_back(i);
    sol.harmonic_basis.resize(m1, kernel.size());
    for (std::size_t k = 0; k < kernel.size(); ++k)
      sol.harmonic_basis.col(k) = eig.eigenvectors().col(kernel[k]);
    sol.b1_harmonic = static_cast<int>(kernel.size());
  } else {
    sol.harmonic_basis = MatrixXd::Zero(0, 0);
    sol.b1_harmonic = 0;
  }

  // cohomological count on the same ansatz: dim ker D1 - rank D0
  auto rank_of = [](const MatrixXd& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    Eigen::JacobiSVD<MatrixXd> svd(A);
    const VectorXd s = svd.singularValues();
    const double thr = 1e-9 * std::max(s(0), 1e-30);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > thr) ++r;
    return r;
  };
  const int ker_d1 = m1 - rank_of(sol.D1);
  sol.b1_cohomological = ker_d1 - rank_of(sol.D0);
  return sol;
}

namespace {

MatrixXd stack_columns(std::vector<std::vector<double>>& cols) {
  MatrixXd A(cols.empty() ? 0 : cols[0].size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) A(r, c) = cols[c][r];
  return A;
}

SubspaceResult nullspace_of_map(const MatrixXd& A, int dim_if_empty, double rel_tol) {
  SubspaceResult out;
  if (A.cols() == 0) {
    out.basis = MatrixXd::Zero(0, 0);
    out.dimension = dim_if_empty;
    return out;
  }
  NullspaceResult ns = nullspace(A, rel_tol);
  out.basis = ns.basis;
  out.dimension = static_cast<int>(ns.basis.cols());
  out.singular_values = ns.singular_values;
  out.threshold = ns.threshold;
  return out;
}

}  // namespace

SubspaceResult classify_killing(const FoliatedManifold& fm, const FieldAnsatz& ansatz,
                                const std::vector<Point>& samples, double rel_tol) {
  const int n = fm.dim();
  std::vector<std::vector<double>> cols(ansatz.size());
  for (int c = 0; c < ansatz.size(); ++c)
    for (const Point& p : samples)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
          cols[c].push_back(lie_derivative_gT(fm, ansatz.basis[c],
                                              fm.M.basis_field(j),
                                              fm.M.basis_field(k), p));
  return nullspace_of_map(stack_columns(cols), 0, rel_tol);
}

SubspaceResult classify_parallel(const FoliatedManifold& fm, const FieldAnsatz& ansatz,
                                 const std::vector<Point>& samples, double rel_tol) {
  std::vector<std::vector<double>> cols(ansatz.size());
  for (int c = 0; c < ansatz.size(); ++c)
    for (const Point& p : samples) {
      const MatrixXd B = bott_matrix(fm, ansatz.basis[c], p);
      for (int a = 0; a < B.rows(); ++a)
        for (int b = 0; b < B.cols(); ++b) cols[c].push_back(B(a, b));
    }
  return nullspace_of_map(stack_columns(cols), 0, rel_tol);
}

SubspaceResult classify_basic_harmonic(const FoliatedManifold& fm,
                                       const FieldAnsatz& ansatz,
                                       const std::vector<Point>& samples,
                                       bool foliation_harmonic, double rel_tol) {
  if (!foliation_harmonic)
    throw std::invalid_argument(
        "classify_basic_harmonic: foliation is not harmonic, the criterion "
        "(symmetric Bott derivative + vanishing transverse divergence) does not "
        "characterize basic harmonic fields");
  std::vector<std::vector<double>> cols(ansatz.size());
  for (int c = 0; c < ansatz.size(); ++c)
    for (const Point& p : samples) {
      const MatrixXd A = bott_antisymmetric_part(fm, ansatz.basis[c], p);
      for (int a = 0; a < A.rows(); ++a)
        for (int b = a + 1; b < A.cols(); ++b) cols[c].push_back(A(a, b));
      cols[c].push_back(transverse_divergence(fm, ansatz.basis[c], p));
    }
  return nullspace_of_map(stack_columns(cols), 0, rel_tol);
}

VectorField ansatz_field(const FieldAnsatz& ansatz, const VectorXd& coeffs) {
  return linear_combination(ansatz.basis, coeffs);
}

BochnerCheck bochner_theorem_check(const FoliatedManifold& fm,
                                   const SubspaceResult& killing,
                                   const SubspaceResult& parallel,
                                   const SubspaceResult& harmonic, int b1,
                                   const std::vector<Point>& samples,
                                   double ric_tol, double angle_tol) {
  BochnerCheck out;
  out.b1 = b1;
  out.codim = fm.codim();
  out.dim_killing = killing.dimension;
  out.dim_parallel = parallel.dimension;
  out.dim_harmonic = harmonic.dimension;

  out.ric_min = std::numeric_limits<double>::infinity();
  out.ric_max = -std::numeric_limits<double>::infinity();
  for (const Point& p : samples) {
    const MatrixXd R = transverse_ricci_matrix(fm, p);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(R);
    out.ric_min = std::min(out.ric_min, eig.eigenvalues().minCoeff());
    out.ric_max = std::max(out.ric_max, eig.eigenvalues().maxCoeff());
  }
  out.semi_positive = out.ric_min > -ric_tol;
  out.positive_somewhere = out.ric_max > ric_tol;
  out.ricci_flat = std::max(std::abs(out.ric_min), std::abs(out.ric_max)) < ric_tol;

  // (i) basic harmonic subset of transverse parallel, under Ric^T >= 0
  out.inclusion_applicable = out.semi_positive;
  if (out.inclusion_applicable) {
    if (harmonic.dimension == 0) {
      out.inclusion_angle = 0.0;
      out.inclusion_holds = true;
    } else if (harmonic.dimension > parallel.dimension) {
      out.inclusion_angle = 1.57079632679489662;
      out.inclusion_holds = false;
    } else {
      const VectorXd angles = principal_angles(parallel.basis, harmonic.basis);
      out.inclusion_angle = angles.size() ? angles.maxCoeff() : 0.0;
      out.inclusion_holds = out.inclusion_angle < angle_tol;
    }
  }

  // (ii) strictly positive somewhere: no basic harmonic fields, b1 = 0
  out.vanishing_applicable = out.semi_positive && out.positive_somewhere;
  if (out.vanishing_applicable)
    out.vanishing_holds = harmonic.dimension == 0 && b1 == 0;

  // (iii) b1 bounded by the codimension
  out.b1_bound_applicable = out.semi_positive;
  if (out.b1_bound_applicable) out.b1_bound_holds = b1 <= out.codim;

  // (iv) transversally Ricci-flat: dim iso = b1
  out.flat_equality_applicable = out.ricci_flat;
  if (out.flat_equality_applicable)
    out.flat_equality_holds = killing.dimension == b1;

  return out;
}

std::pair<VectorXd, double> expand_in_ansatz(const FoliatedManifold& fm,
                                             const AnsatzSpace& a1, const FormField& w,
                                             const QuadratureNodes& nodes) {
  const int m = a1.size();
  VectorXd rhs = VectorXd::Zero(m);
  double ww = 0.0;
  for (std::size_t s = 0; s < nodes.pts.size(); ++s) {
    const Point& p = nodes.pts[s];
    const MatrixXd T = pairing_matrix(fm.M, p, fm.dim(), a1.degree);
    const VecX<double> wv = w(p);
    const VectorXd Twv = T * wv;
    ww += nodes.weights[s] * wv.dot(Twv);
    for (int j = 0; j < m; ++j)
      rhs(j) += nodes.weights[s] * VecX<double>(a1.basis[j](p)).dot(Twv);
  }
  VectorXd c = VectorXd::Zero(m);
  if (m > 0) c = solve_linear<double>(a1.gram, rhs);
  const double rel_defect = (ww - (m > 0 ? c.dot(rhs) : 0.0)) / std::max(ww, 1e-30);
  return {c, rel_defect};
}

double codifferential_residual(const FoliatedManifold& fm, const HodgeSolution& sol,
                               const AnsatzSpace& a0, const AnsatzSpace& a1,
                               const VectorField& X, const QuadratureNodes& nodes,
                               const std::vector<Point>& samples) {
  const FormField wX = musical_flat(fm.M, X);
  const auto [c, defect] = expand_in_ansatz(fm, a1, wX, nodes);
  if (defect > 1e-6)
    throw std::invalid_argument(
        "codifferential_residual: omega_X does not lie in the degree-1 ansatz");
  const VectorXd f = sol.delta1 * c;  // delta_B omega_X in the degree-0 ansatz
  double res = 0.0;
  for (const Point& p : samples) {
    double fv = 0.0;
    for (int j = 0; j < a0.size(); ++j) fv += f(j) * a0.basis[j](p)(0);
    res = std::max(res, std::abs(fv + transverse_divergence(fm, X, p)));
  }
  return res;
}

double basic_laplacian_residual(const FoliatedManifold& fm, const HodgeSolution& sol,
                                const AnsatzSpace& a0, const VectorXd& f_coeffs,
                                const std::vector<Point>& samples) {
  // Delta_B f = delta_B d_B f on degree 0, assembled through the matrices.
  const VectorXd lap = sol.delta1 * (sol.D0 * f_coeffs);
  const ScalarField fs = form0_as_scalar(form_linear_combination(a0.basis, f_coeffs));
  double res = 0.0;
  for (const Point& p : samples) {
    double bv = 0.0;
    for (int j = 0; j < a0.size(); ++j) bv += lap(j) * a0.basis[j](p)(0);
    res = std::max(res, std::abs(bv + transverse_laplacian(fm, fs, p)));
  }
  return res;
}

double adjointness_residual(const HodgeSolution& sol) {
  double res = 0.0;
  // <D0 f, w>_1 - <f, delta1 w>_0 = f^T (D0^T G1 - G0 delta1) w
  if (sol.D0.cols() > 0 && sol.D0.rows() > 0) {
    const MatrixXd defect = sol.D0.transpose() * sol.gram1 - sol.gram0 * sol.delta1;
    res = std::max(res, defect.cwiseAbs().maxCoeff());
  }
  if (sol.D1.cols() > 0 && sol.D1.rows() > 0) {
    const MatrixXd defect = sol.D1.transpose() * sol.gram2 - sol.gram1 * sol.delta2;
    res = std::max(res, defect.cwiseAbs().maxCoeff());
  }
  return res;
}

double harmonic_versus_closed_coclosed_angle(const HodgeSolution& sol) {
  const int m1 = static_cast<int>(sol.gram1.rows());
  if (m1 == 0) return 0.0;
  // joint kernel of D1 and delta1 in the gram1 geometry
  const int rows_d1 = static_cast<int>(sol.D1.rows());
  const int rows_dl = static_cast<int>(sol.delta1.rows());
  MatrixXd stacked(rows_d1 + rows_dl, m1);
  if (rows_d1 > 0) stacked.topRows(rows_d1) = sol.D1;
  if (rows_dl > 0) stacked.bottomRows(rows_dl) = sol.delta1;
  MatrixXd closed_coclosed;
  if (stacked.rows() == 0) {
    closed_coclosed = MatrixXd::Identity(m1, m1);
  } else {
    closed_coclosed = nullspace(stacked, 1e-9).basis;
  }
  if (closed_coclosed.cols() != sol.harmonic_basis.cols())
    return 1.57079632679489662;  // dimensions differ: report a right angle
  if (closed_coclosed.cols() == 0) return 0.0;

  const Eigen::LLT<MatrixXd> llt(sol.gram1);
  const MatrixXd L = llt.matrixL();
  const VectorXd angles = principal_angles(L.transpose() * sol.harmonic_basis,
                                           L.transpose() * closed_coclosed);
  return angles.size() ? angles.maxCoeff() : 0.0;
}

}  // namespace folia
