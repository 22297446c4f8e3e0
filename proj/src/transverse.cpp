#include "folia/transverse.hpp"

#include <sstream>

namespace folia {

VecX<double> bott(const FoliatedManifold& fm, const VectorField& X,
                  const VectorField& Y, const Point& p, bool* projected) {
  const VecX<double> Yp = Y(p);
  const VecX<double> Ye = project_leaf(fm, p, Yp);
  const double leaf_part = std::sqrt(metric_inner(fm.M, p, Ye, Ye));
  if (leaf_part > 1e-10) {
    if (projected) *projected = true;
    return bott_dir(fm, p, VecX<double>(X(p)), perp_field(fm, Y));
  }
  if (projected) *projected = false;
  return bott_dir(fm, p, VecX<double>(X(p)), Y);
}

double koszul_residual(const FoliatedManifold& fm, const VectorField& X,
                       const VectorField& Y, const VectorField& Z, const Point& p) {
  const VecX<double> Xp = X(p), Yp = Y(p), Zp = Z(p);
  const VecX<double> nTY = bott_dir(fm, p, Xp, Y);
  const double lhs = 2.0 * transverse_metric(fm, p, nTY, Zp);

  const ScalarField gYZ = transverse_pairing(fm, Y, Z);
  const ScalarField gZX = transverse_pairing(fm, Z, X);
  const ScalarField gXY = transverse_pairing(fm, X, Y);
  const double t1 = dir_derivative(fm.M, gYZ, p, Xp);
  const double t2 = dir_derivative(fm.M, gZX, p, Yp);
  const double t3 = dir_derivative(fm.M, gXY, p, Zp);
  const double t4 = transverse_metric(fm, p, lie_bracket(fm.M, X, Y, p), Zp);
  const double t5 = transverse_metric(fm, p, lie_bracket(fm.M, Z, X, p), Yp);
  const double t6 = transverse_metric(fm, p, lie_bracket(fm.M, Y, Z, p), Xp);
  return std::abs(lhs - (t1 + t2 - t3 + t4 + t5 - t6));
}

double transverse_ricci(const FoliatedManifold& fm, const VectorField& X,
                        const Point& p) {
  const VectorField Xperp = perp_field(fm, X);
  double acc = 0.0;
  for (const VecX<double>& nb : transverse_frame(fm, p)) {
    const VectorField N = constant_vector(nb);
    acc += transverse_curvature(fm, N, Xperp, Xperp, N, p);
  }
  return acc;
}

MatrixXd transverse_ricci_matrix(const FoliatedManifold& fm, const Point& p) {
  const auto frame = transverse_frame(fm, p);
  const int q = static_cast<int>(frame.size());
  MatrixXd R(q, q);
  // polarization of the quadratic form X -> Ric^T(X,X)
  std::vector<double> diag(q);
  for (int a = 0; a < q; ++a)
    diag[a] = transverse_ricci(fm, constant_vector(frame[a]), p);
  for (int a = 0; a < q; ++a) R(a, a) = diag[a];
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b) {
      const VectorField sum = constant_vector(VectorXd(frame[a] + frame[b]));
      const double rs = transverse_ricci(fm, sum, p);
      R(a, b) = R(b, a) = 0.5 * (rs - diag[a] - diag[b]);
    }
  return R;
}

double transverse_hessian(const FoliatedManifold& fm, const ScalarField& f,
                          const VectorXd& Xp, const VectorXd& Yp, const Point& p) {
  const VectorField gradf = gradient_field(fm.M, f);
  const VecX<double> v = bott_dir(fm, p, VecX<double>(Xp), gradf);
  return transverse_metric(fm, p, v, VecX<double>(Yp));
}

double transverse_laplacian(const FoliatedManifold& fm, const ScalarField& f,
                            const Point& p) {
  double acc = 0.0;
  for (const VecX<double>& e : adapted_frame(fm, p))
    acc += transverse_hessian(fm, f, e, e, p);
  return acc;
}

double transverse_divergence(const FoliatedManifold& fm, const VectorField& X,
                             const Point& p) {
  double acc = 0.0;
  for (const VecX<double>& nb : transverse_frame(fm, p))
    acc += transverse_metric(fm, p, bott_dir(fm, p, nb, X), nb);
  return acc;
}

ScalarField transverse_divergence_lie_field(const FoliatedManifold& fm,
                                            const VectorField& X) {
  const FormField muT = transverse_volume_form(fm);
  const FormField LX = lie_derivative_form(fm.M, X, muT);
  auto fn = [fm, LX](const EvalPoint<double>& p) {
    const auto frame = transverse_frame(fm, p);
    std::vector<VecX<double>> vecs(frame.begin(), frame.end());
    return apply_form<double>(fm.dim(), fm.codim(), LX(p), vecs);
  };
  return ScalarField::from<decltype(fn), 0>(std::move(fn));
}

double transverse_divergence_lie(const FoliatedManifold& fm, const VectorField& X,
                                 const Point& p) {
  return transverse_divergence_lie_field(fm, X)(p);
}

IntegrationResult divergence_theorem_check(const FoliatedManifold& fm,
                                           const VectorField& X, int resolution) {
  return fm.M.integrate(transverse_divergence_lie_field(fm, X), resolution);
}

double bott_endo_norm2(const FoliatedManifold& fm, const VectorField& X,
                       const Point& p) {
  double acc = 0.0;
  for (const VecX<double>& nb : transverse_frame(fm, p)) {
    const VecX<double> v = bott_dir(fm, p, nb, X);
    acc += transverse_metric(fm, p, v, v);
  }
  return acc;
}

MatrixXd bott_matrix(const FoliatedManifold& fm, const VectorField& X,
                     const Point& p) {
  const auto frame = transverse_frame(fm, p);
  const int q = static_cast<int>(frame.size());
  MatrixXd out(q, q);
  for (int a = 0; a < q; ++a) {
    const VecX<double> v = bott_dir(fm, p, frame[a], X);
    for (int b = 0; b < q; ++b) out(a, b) = transverse_metric(fm, p, v, frame[b]);
  }
  return out;
}

MatrixXd bott_antisymmetric_part(const FoliatedManifold& fm, const VectorField& X,
                                 const Point& p) {
  const MatrixXd B = bott_matrix(fm, X, p);
  return 0.5 * (B - B.transpose());
}

BochnerResiduals bochner_residuals(const FoliatedManifold& fm, const VectorField& X,
                                   const std::vector<Point>& samples,
                                   double certify_tol) {
  // certificate: transverse, nabla^T X symmetric, Div_T X = 0
  const FieldClassification cls = classify_field(fm, X, samples, certify_tol);
  double sym_res = 0.0, div_res = 0.0;
  for (const Point& p : samples) {
    sym_res = std::max(sym_res,
                       bott_antisymmetric_part(fm, X, p).cwiseAbs().maxCoeff());
    div_res = std::max(div_res, std::abs(transverse_divergence(fm, X, p)));
  }
  if (!cls.is_transverse || sym_res > certify_tol || div_res > certify_tol) {
    std::ostringstream msg;
    msg << "bochner_residuals: field is not certified basic harmonic"
        << " (foliate residual " << cls.foliate_residual << ", perp residual "
        << cls.perp_residual << ", symmetry residual " << sym_res
        << ", divergence residual " << div_res << ")";
    throw std::invalid_argument(msg.str());
  }

  const ScalarField f = ScalarField::from([fm, X](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const VecX<S> v = X(p);
    return 0.5 * transverse_metric(fm, p, v, v);
  });

  BochnerResiduals out;
  double mean = 0.0, mean2 = 0.0;
  for (const Point& p : samples) {
    const VecX<double> lhs_a = gradient(fm.M, f, p);
    const VecX<double> rhs_a = bott_dir(fm, p, VecX<double>(X(p)), X);
    const VecX<double> diff = lhs_a - rhs_a;
    out.res_a = std::max(out.res_a, std::sqrt(metric_inner(fm.M, p, diff, diff)));

    const double lap = transverse_laplacian(fm, f, p);
    const double norm2 = bott_endo_norm2(fm, X, p);
    const double ric = transverse_ricci(fm, X, p);
    out.res_c = std::max(out.res_c, std::abs(lap - norm2 - ric));

    const VecX<double> Xp = X(p);
    const double len = transverse_metric(fm, p, Xp, Xp);
    mean += len;
    mean2 += len * len;
  }
  const double n = double(samples.size());
  mean /= n;
  mean2 /= n;
  out.length_variance = (mean2 - mean * mean) / std::max(1e-30, mean * mean);
  return out;
}

double hessian_identity_residual(const FoliatedManifold& fm, const VectorField& X,
                                 const VectorField& Y, const Point& p) {
  const ScalarField f = ScalarField::from([fm, X](const auto& q) {
    using S = point_scalar_t<decltype(q)>;
    const VecX<S> v = X(q);
    return 0.5 * transverse_metric(fm, q, v, v);
  });
  const VecX<double> Yp = Y(p);
  const double lhs = transverse_hessian(fm, f, Yp, Yp, p);

  const VecX<double> nYX = bott_dir(fm, p, Yp, X);
  const double t1 = transverse_metric(fm, p, nYX, nYX);
  const double t2 = transverse_curvature(fm, Y, X, X, Y, p);
  const VectorField nYX_field = bott_field(fm, Y, X);
  const VecX<double> nXnYX = bott_dir(fm, p, VecX<double>(X(p)), nYX_field);
  const double t3 = transverse_metric(fm, p, nXnYX, Yp);
  const VecX<double> nXY = bott_dir(fm, p, VecX<double>(X(p)), Y);
  const VecX<double> nnX = bott_dir(fm, p, nXY, X);
  const double t4 = transverse_metric(fm, p, nnX, Yp);
  return std::abs(lhs - (t1 + t2 + t3 - t4));
}

}  // namespace folia
