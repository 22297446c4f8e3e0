#include "folia/structures.hpp"

#include <limits>

namespace folia {

double lie_derivative_g(const Backend& M, const VectorField& X, const VectorField& Y,
                        const VectorField& Z, const Point& p) {
  const ScalarField h = metric_pairing(M, Y, Z);
  const double t1 = dir_derivative(M, h, p, VecX<double>(X(p)));
  const double t2 = metric_inner(M, p, lie_bracket(M, X, Y, p), VecX<double>(Z(p)));
  const double t3 = metric_inner(M, p, VecX<double>(Y(p)), lie_bracket(M, X, Z, p));
  return t1 - t2 - t3;
}

namespace {

double sup_abs(const VecX<double>& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

// (L_X eta)(Y) = X(eta(Y)) - eta([X,Y])
double lie_derivative_eta(const Backend& M, const VectorField& X, const FormField& eta,
                          const VectorField& Y, const Point& p) {
  auto hfn = [eta, Y, M](const auto& q) {
    using S = point_scalar_t<decltype(q)>;
    const VecX<S> ev = eta(q);
    const VecX<S> yv = Y(q);
    S acc = S(0.0);
    for (int i = 0; i < ev.size(); ++i) acc += ev(i) * yv(i);
    return acc;
  };
  const ScalarField h = ScalarField::from<decltype(hfn), 1>(std::move(hfn));
  const double t1 = dir_derivative(M, h, p, VecX<double>(X(p)));
  const VecX<double> br = lie_bracket(M, X, Y, p);
  const VecX<double> ev = eta(p);
  double t2 = 0.0;
  for (int i = 0; i < ev.size(); ++i) t2 += ev(i) * br(i);
  return t1 - t2;
}

// (L_X phi)(Y) = [X, phi Y] - phi [X, Y]
VecX<double> lie_derivative_phi(const Backend& M, const VectorField& X,
                                const MatrixField& phi, const VectorField& Y,
                                const Point& p) {
  const VectorField phiY = matrix_apply(phi, Y);
  VecX<double> out = lie_bracket(M, X, phiY, p);
  const VecX<double> br = lie_bracket(M, X, Y, p);
  const MatX<double> ph = phi(p);
  out -= ph * br;
  return out;
}

}  // namespace

ResidualSet almost_contact_check(const FoliatedManifold& fm, const ContactData& cd,
                                 const std::vector<Point>& samples) {
  const Backend& M = fm.M;
  const int n = fm.dim();
  ResidualSet out;
  double unit = 0.0, dual = 0.0, phi_reeb = 0.0, phi_sq = 0.0, compat = 0.0;
  for (const Point& p : samples) {
    const MatX<double> g = M.metric_at(p);
    for (int s = 0; s < cd.count(); ++s) {
      const VecX<double> xi = cd.reeb[s](p);
      const VecX<double> ev = cd.eta[s](p);
      const MatX<double> ph = cd.phi[s](p);
      unit = std::max(unit, std::abs(std::sqrt(metric_inner(M, p, xi, xi)) - 1.0));
      phi_reeb = std::max(phi_reeb, sup_abs(ph * xi));
      const VecX<double> gxi = g * xi;
      dual = std::max(dual, sup_abs(VecX<double>(ev - gxi)));
      for (int j = 0; j < n; ++j) {
        VecX<double> ej = VecX<double>::Zero(n);
        ej(j) = 1.0;
        const VecX<double> lhs = ph * (ph * ej) + ej - xi * ev(j);
        phi_sq = std::max(phi_sq, sup_abs(lhs));
        for (int k = 0; k < n; ++k) {
          VecX<double> ek = VecX<double>::Zero(n);
          ek(k) = 1.0;
          const double r = metric_inner(M, p, VecX<double>(ph * ej), VecX<double>(ph * ek)) -
                           g(j, k) + ev(j) * ev(k);
          compat = std::max(compat, std::abs(r));
        }
      }
    }
  }
  out.values["unit_length"] = unit;
  out.values["eta_dual"] = dual;
  out.values["phi_reeb"] = phi_reeb;
  out.values["phi_square"] = phi_sq;
  out.values["metric_compat"] = compat;

  if (cd.count() == 3) {
    // interrelations for even permutations (i,j,k)
    double inter = 0.0;
    const int perms[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const Point& p : samples) {
      for (const auto& perm : perms) {
        const int i = perm[0], j = perm[1], k = perm[2];
        const MatX<double> pi = cd.phi[i](p), pj = cd.phi[j](p), pk = cd.phi[k](p);
        const VecX<double> xj = cd.reeb[j](p), xk = cd.reeb[k](p), xi = cd.reeb[i](p);
        const VecX<double> ei = cd.eta[i](p), ej = cd.eta[j](p), ek = cd.eta[k](p);
        inter = std::max(inter, sup_abs(VecX<double>(pi * xj - xk)));
        for (int c = 0; c < n; ++c) {
          VecX<double> bc = VecX<double>::Zero(n);
          bc(c) = 1.0;
          // eta_i o phi_j = eta_k
          double acc = 0.0;
          const VecX<double> pjb = pj * bc;
          for (int t = 0; t < n; ++t) acc += ei(t) * pjb(t);
          inter = std::max(inter, std::abs(acc - ek(c)));
          // phi_i phi_j = phi_k + xi_i (x) eta_j
          const VecX<double> lhs = pi * pjb;
          const VecX<double> rhs = pk * bc + xi * ej(c);
          inter = std::max(inter, sup_abs(VecX<double>(lhs - rhs)));
        }
      }
    }
    out.values["interrelation"] = inter;
  }
  return out;
}

ResidualSet sasaki_check(const FoliatedManifold& fm, const ContactData& cd,
                         const std::vector<Point>& samples) {
  if (cd.count() != 1)
    throw std::invalid_argument("sasaki_check: expects a single contact structure");
  const Backend& M = fm.M;
  const int n = fm.dim();
  ResidualSet out;
  const FormField deta = exterior_derivative(M, cd.eta[0]);
  const auto& pair_table = combinations(n, 2);

  double nij = 0.0, deta_2phi = 0.0;
  for (const Point& p : samples) {
    const VecX<double> dv = deta(p);
    const MatX<double> ph = cd.phi[0](p);
    const VecX<double> xi = cd.reeb[0](p);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const VectorField Ba = M.basis_field(a), Bb = M.basis_field(b);
        const VectorField phiBa = matrix_apply(cd.phi[0], Ba);
        const VectorField phiBb = matrix_apply(cd.phi[0], Bb);
        // [phi,phi](X,Y) = phi^2 [X,Y] + [phiX, phiY] - phi[phiX, Y] - phi[X, phiY]
        VecX<double> nj = ph * (ph * lie_bracket(M, Ba, Bb, p));
        nj += lie_bracket(M, phiBa, phiBb, p);
        nj -= ph * lie_bracket(M, phiBa, Bb, p);
        nj -= ph * lie_bracket(M, Ba, phiBb, p);
        const double dab = dv(combination_index(pair_table, {a, b}));
        nj += dab * xi;
        nij = std::max(nij, sup_abs(nj));

        VecX<double> ea = VecX<double>::Zero(n), eb = VecX<double>::Zero(n);
        ea(a) = 1.0;
        eb(b) = 1.0;
        const double phi_ab = metric_inner(M, p, ea, VecX<double>(ph * eb));
        deta_2phi = std::max(deta_2phi, std::abs(dab - 2.0 * phi_ab));
      }
  }
  out.values["nijenhuis"] = nij;
  out.values["deta_2phi"] = deta_2phi;
  return out;
}

EtaEinsteinFit eta_einstein_fit(const FoliatedManifold& fm,
                                const std::optional<ContactData>& cd,
                                const std::vector<Point>& samples) {
  if (!cd || cd->count() < 1)
    throw std::invalid_argument(
        "eta_einstein_fit: refused, example carries no contact structure (eta)");
  const Backend& M = fm.M;
  const int n = fm.dim();
  std::vector<double> rows_g, rows_ee, rhs;
  for (const Point& p : samples) {
    const MatX<double> g = M.metric_at(p);
    const VecX<double> ev = cd->eta[0](p);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        VecX<double> ej = VecX<double>::Zero(n), ek = VecX<double>::Zero(n);
        ej(j) = 1.0;
        ek(k) = 1.0;
        rows_g.push_back(g(j, k));
        rows_ee.push_back(ev(j) * ev(k));
        rhs.push_back(ricci_pair(M, ej, ek, p));
      }
  }
  MatrixXd A(rows_g.size(), 2);
  VectorXd b(rhs.size());
  for (std::size_t r = 0; r < rows_g.size(); ++r) {
    A(r, 0) = rows_g[r];
    A(r, 1) = rows_ee[r];
    b(r) = rhs[r];
  }
  const VectorXd sol = A.colPivHouseholderQr().solve(b);
  EtaEinsteinFit fit;
  fit.a = sol(0);
  fit.b = sol(1);
  fit.residual = (A * sol - b).cwiseAbs().maxCoeff();
  return fit;
}

ThreeAlphaDeltaFit three_alpha_delta_check(const FoliatedManifold& fm,
                                           const std::optional<ContactData>& cd,
                                           const std::vector<Point>& samples,
                                           double delta_zero_band) {
  if (!cd || cd->count() != 3)
    throw std::invalid_argument(
        "three_alpha_delta_check: refused, needs three almost contact structures");
  const Backend& M = fm.M;
  const int n = fm.dim();
  ThreeAlphaDeltaFit out;
  out.interrelation_residual = almost_contact_check(fm, *cd, samples).values.at("interrelation");

  const auto& pair_table = combinations(n, 2);
  const int perms[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  std::vector<double> fits_alpha, fits_beta;
  std::vector<std::vector<double>> all_rows;
  for (const auto& perm : perms) {
    const int i = perm[0], j = perm[1], k = perm[2];
    const FormField deta = exterior_derivative(M, cd->eta[i]);
    std::vector<double> r1, r2, rr;
    for (const Point& p : samples) {
      const VecX<double> dv = deta(p);
      const MatX<double> ph = cd->phi[i](p);
      const VecX<double> ej = cd->eta[j](p), ek = cd->eta[k](p);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          VecX<double> ea = VecX<double>::Zero(n), eb = VecX<double>::Zero(n);
          ea(a) = 1.0;
          eb(b) = 1.0;
          const double phi_ab = metric_inner(M, p, ea, VecX<double>(ph * eb));
          const double wedge_ab = ej(a) * ek(b) - ej(b) * ek(a);
          r1.push_back(2.0 * phi_ab);
          r2.push_back(2.0 * wedge_ab);
          rr.push_back(dv(combination_index(pair_table, {a, b})));
        }
    }
    MatrixXd A(r1.size(), 2);
    VectorXd rhs(rr.size());
    for (std::size_t r = 0; r < r1.size(); ++r) {
      A(r, 0) = r1[r];
      A(r, 1) = r2[r];
      rhs(r) = rr[r];
    }
    const VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    fits_alpha.push_back(sol(0));
    fits_beta.push_back(sol(1));
    all_rows.push_back({});
    for (std::size_t r = 0; r < r1.size(); ++r)
      all_rows.back().push_back(r1[r] * sol(0) + r2[r] * sol(1) - rr[r]);
  }

  // permutation consistency: the three per-permutation fits must agree
  for (int t = 1; t < 3; ++t) {
    if (std::abs(fits_alpha[t] - fits_alpha[0]) > 1e-8 ||
        std::abs(fits_beta[t] - fits_beta[0]) > 1e-8)
      out.permutation_consistent = false;
  }
  out.alpha = fits_alpha[0];
  const double beta = fits_beta[0];  // beta = alpha - delta
  out.delta = out.alpha - beta;
  for (const auto& rows : all_rows)
    for (double r : rows) out.residual = std::max(out.residual, std::abs(r));

  if (std::abs(out.delta) < delta_zero_band)
    out.classification = "degenerate";
  else if (out.alpha * out.delta > 0)
    out.classification = "positive";
  else
    out.classification = "negative";
  return out;
}

OrientationDensities structure_orientation_densities(const FoliatedManifold& fm,
                                                     const ContactData& cd,
                                                     const std::vector<Point>& samples) {
  const Backend& M = fm.M;
  const int n = fm.dim();
  const int powers = (n - cd.count()) / 2;  // (dim - #reeb)/2 wedge powers of d eta

  FormField deta = exterior_derivative(M, cd.eta[0]);
  FormField dpow = deta;
  for (int t = 1; t < powers; ++t) dpow = wedge(dpow, deta, n);
  FormField ambient = dpow;
  for (int s = 0; s < cd.count(); ++s) ambient = wedge(ambient, cd.eta[s], n);

  OrientationDensities out;
  out.ambient_min = std::numeric_limits<double>::infinity();
  out.transverse_min = std::numeric_limits<double>::infinity();
  for (const Point& p : samples) {
    std::vector<VecX<double>> full;
    for (const VectorField& L : fm.F.leaf_frame) full.push_back(L(p));
    std::vector<VecX<double>> trans;
    for (const VectorField& T : fm.F.transverse_hint) {
      full.push_back(T(p));
      trans.push_back(T(p));
    }
    out.ambient_min =
        std::min(out.ambient_min, apply_form<double>(n, n, ambient(p), full));
    out.transverse_min = std::min(
        out.transverse_min, apply_form<double>(n, 2 * powers, dpow(p), trans));
  }
  return out;
}

AutomorphismReport automorphism_bound_report(
    const FoliatedManifold& fm, const std::optional<ContactData>& cd,
    const std::vector<VectorField>& aut_ansatz, const std::vector<int>& reeb_indices,
    int b1, int dim_iso, bool ric_flat, const std::vector<Point>& samples,
    double rel_tol) {
  AutomorphismReport out;
  if (!cd || aut_ansatz.empty()) return out;  // inapplicable
  out.applicable = true;
  out.rank_E = fm.leaf_rank();
  out.b1 = b1;
  out.dim_iso = dim_iso;

  const Backend& M = fm.M;
  const int n = fm.dim();
  const int m = static_cast<int>(aut_ansatz.size());
  std::vector<std::vector<double>> cols(m);
  for (int c = 0; c < m; ++c) {
    const VectorField& X = aut_ansatz[c];
    for (const Point& p : samples) {
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
          cols[c].push_back(
              lie_derivative_g(M, X, M.basis_field(j), M.basis_field(k), p));
      for (int s = 0; s < cd->count(); ++s) {
        const VecX<double> lxi = lie_bracket(M, X, cd->reeb[s], p);
        for (int i = 0; i < n; ++i) cols[c].push_back(lxi(i));
        for (int j = 0; j < n; ++j) {
          cols[c].push_back(lie_derivative_eta(M, X, cd->eta[s], M.basis_field(j), p));
          const VecX<double> lphi =
              lie_derivative_phi(M, X, cd->phi[s], M.basis_field(j), p);
          for (int i = 0; i < n; ++i) cols[c].push_back(lphi(i));
        }
      }
    }
  }
  MatrixXd A(cols[0].size(), m);
  for (int c = 0; c < m; ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) A(r, c) = cols[c][r];
  const NullspaceResult ns = nullspace(A, rel_tol);
  out.dim_aut = static_cast<int>(ns.basis.cols());
  out.singular_values = ns.singular_values;

  // (i) perp projections of found automorphisms are transverse Killing
  for (int c = 0; c < ns.basis.cols(); ++c) {
    const VectorField Z = linear_combination(aut_ansatz, ns.basis.col(c));
    const VectorField Zperp = perp_field(fm, Z);
    for (const Point& p : samples)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
          out.projection_killing_residual =
              std::max(out.projection_killing_residual,
                       std::abs(lie_derivative_gT(fm, Zperp, M.basis_field(j),
                                                  M.basis_field(k), p)));
  }

  // (ii) leaf parts are constant-coefficient Reeb combinations
  for (int c = 0; c < ns.basis.cols(); ++c) {
    const VectorField Z = linear_combination(aut_ansatz, ns.basis.col(c));
    std::vector<VectorXd> coeffs;
    for (const Point& p : samples) {
      // coefficients of Z^E in the Reeb frame = leaf frame
      coeffs.push_back(leaf_coefficients(fm, p, VecX<double>(Z(p))));
    }
    for (int i = 0; i < fm.leaf_rank(); ++i) {
      double mean = 0.0, mean2 = 0.0;
      for (const VectorXd& cv : coeffs) {
        mean += cv(i);
        mean2 += cv(i) * cv(i);
      }
      mean /= double(coeffs.size());
      mean2 /= double(coeffs.size());
      out.reeb_coefficient_variance =
          std::max(out.reeb_coefficient_variance, mean2 - mean * mean);
    }
  }

  // xi detection: each Reeb ansatz element lies in the nullspace
  out.xi_detected = true;
  for (int idx : reeb_indices) {
    VectorXd e = VectorXd::Zero(m);
    e(idx) = 1.0;
    const VectorXd proj = ns.basis * (ns.basis.transpose() * e);
    const double res = (e - proj).norm();
    out.xi_residual = std::max(out.xi_residual, res);
    if (res > 1e-7) out.xi_detected = false;
  }

  out.iso_bound_holds = out.dim_aut <= out.dim_iso + out.rank_E;
  out.b1_bound_applicable = ric_flat;
  out.b1_bound_holds = !ric_flat || out.dim_aut <= out.b1 + out.rank_E;
  return out;
}

}  // namespace folia
