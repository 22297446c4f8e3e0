#pragma once

#include "folia/foliation.hpp"

namespace folia {

/// Bott (transverse Levi-Civita) connection value nabla^T_X Y at p for a
/// section Y of E-perp. The direction enters by value: it is split into its
/// E-part, extended as a constant-coefficient combination of the leaf frame
/// (a genuine section of E, which the bracket branch requires), and its
/// perp-part, for which the Levi-Civita slot is tensorial outright.
template <class S>
VecX<S> bott_dir(const FoliatedManifold& fm, const EvalPoint<S>& p, const VecX<S>& Xp,
                 const VectorField& Y) {
  const VecX<S> a = leaf_coefficients(fm, p, Xp);
  VecX<S> Xperp = Xp;
  for (int i = 0; i < fm.leaf_rank(); ++i) Xperp -= a(i) * fm.F.leaf_frame[i](p);

  VecX<S> out = project_perp(fm, p, levi_civita_dir(fm.M, p, Xperp, Y));
  for (int i = 0; i < fm.leaf_rank(); ++i) {
    const VecX<S> br = lie_bracket(fm.M, fm.F.leaf_frame[i], Y, p);
    out += a(i) * project_perp(fm, p, br);
  }
  return out;
}

/// Public Bott connection: projects the argument onto E-perp first when it
/// is not already a section of it, reporting whether that happened.
VecX<double> bott(const FoliatedManifold& fm, const VectorField& X,
                  const VectorField& Y, const Point& p, bool* projected = nullptr);

/// nabla^T_Y Z as a derived field (first-derivative capped).
inline VectorField bott_field(const FoliatedManifold& fm, const VectorField& Y,
                              const VectorField& Z) {
  auto fn = [fm, Y, Z](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    return bott_dir(fm, p, VecX<S>(Y(p)), Z);
  };
  return VectorField::from<decltype(fn), 1>(std::move(fn));
}

/// Transverse curvature R^T(X,Y)Z as a vector in E-perp; Z must be a
/// section of E-perp.
inline VecX<double> transverse_curvature_vec(const FoliatedManifold& fm,
                                             const VectorField& X,
                                             const VectorField& Y,
                                             const VectorField& Z, const Point& p) {
  const VectorField nYZ = bott_field(fm, Y, Z);
  const VectorField nXZ = bott_field(fm, X, Z);
  VecX<double> out = bott_dir(fm, p, VecX<double>(X(p)), nYZ);
  out -= bott_dir(fm, p, VecX<double>(Y(p)), nXZ);
  out -= bott_dir(fm, p, lie_bracket(fm.M, X, Y, p), Z);
  return out;
}

/// Scalar transverse curvature R^T(X,Y,Z,V) = g_T(R^T(X,Y)Z, V).
inline double transverse_curvature(const FoliatedManifold& fm, const VectorField& X,
                                   const VectorField& Y, const VectorField& Z,
                                   const VectorField& V, const Point& p) {
  return transverse_metric(fm, p, transverse_curvature_vec(fm, X, Y, Z, p),
                           VecX<double>(V(p)));
}

/// Koszul residual for the Bott connection:
/// | 2 g_T(nabla^T_X Y, Z) - X g_T(Y,Z) - Y g_T(Z,X) + Z g_T(X,Y)
///   - g_T([X,Y],Z) - g_T([Z,X],Y) + g_T([Y,Z],X) |.
double koszul_residual(const FoliatedManifold& fm, const VectorField& X,
                       const VectorField& Y, const VectorField& Z, const Point& p);

/// Transverse Ricci curvature Ric^T(X,X), the trace of R^T(., X)X over an
/// orthonormal frame of E-perp. The argument is projected onto E-perp first
/// (an artifact convention extending the transverse definition).
double transverse_ricci(const FoliatedManifold& fm, const VectorField& X,
                        const Point& p);

/// Ric^T as a symmetric q x q matrix over the oriented transverse frame.
MatrixXd transverse_ricci_matrix(const FoliatedManifold& fm, const Point& p);

/// Transverse Hessian Hess_T f (X,Y) = g_T(nabla^T_X grad f, Y).
double transverse_hessian(const FoliatedManifold& fm, const ScalarField& f,
                          const VectorXd& Xp, const VectorXd& Yp, const Point& p);

/// Transverse Laplacian: trace of the transverse Hessian over a full
/// g-orthonormal frame (leaf directions contribute nothing).
double transverse_laplacian(const FoliatedManifold& fm, const ScalarField& f,
                            const Point& p);

/// Div_T X = tr nabla^T X for transverse X.
double transverse_divergence(const FoliatedManifold& fm, const VectorField& X,
                             const Point& p);

/// Div_T X through the defining property L_X mu_T = Div_T X mu_T; valid for
/// any foliate X and used as the cross-check route. The field version
/// assembles the derived-form chain once, which matters when integrating.
ScalarField transverse_divergence_lie_field(const FoliatedManifold& fm,
                                            const VectorField& X);
double transverse_divergence_lie(const FoliatedManifold& fm, const VectorField& X,
                                 const Point& p);

/// |integral of Div_T X over M|, the transverse divergence theorem residual.
/// Requires a harmonic foliation; the caller gates on that.
IntegrationResult divergence_theorem_check(const FoliatedManifold& fm,
                                           const VectorField& X, int resolution = 16);

/// Squared endomorphism norm |nabla^T X|^2 over the transverse frame.
double bott_endo_norm2(const FoliatedManifold& fm, const VectorField& X,
                       const Point& p);

struct BochnerResiduals {
  double res_a = 0.0;           // sup |grad f - nabla^T_X X|
  double res_c = 0.0;           // sup |Delta_T f - |nabla^T X|^2 - Ric^T(X,X)|
  double length_variance = 0.0; // relative variance of g_T(X,X)
};

/// Residuals of the pointwise identities satisfied by a basic harmonic
/// field X with f = g_T(X,X)/2. Refuses (std::invalid_argument carrying the
/// residuals) when X fails the basic-harmonic certificate.
BochnerResiduals bochner_residuals(const FoliatedManifold& fm, const VectorField& X,
                                   const std::vector<Point>& samples,
                                   double certify_tol = 1e-7);

/// Residual of the Hessian identity
/// Hess_T f(Y,Y) = g_T(nabla^T_Y X, nabla^T_Y X) + R^T(Y,X,X,Y)
///                + g_T(nabla^T_X nabla^T_Y X, Y) - g_T(nabla^T_{nabla^T_X Y} X, Y)
/// for basic harmonic X and transverse Y.
double hessian_identity_residual(const FoliatedManifold& fm, const VectorField& X,
                                 const VectorField& Y, const Point& p);

/// Antisymmetric part of nabla^T X over the transverse frame; vanishes
/// exactly when the dual one-form is d_B-closed.
MatrixXd bott_antisymmetric_part(const FoliatedManifold& fm, const VectorField& X,
                                 const Point& p);

/// Symmetric part minus divergence data, used by the harmonic classifier.
MatrixXd bott_matrix(const FoliatedManifold& fm, const VectorField& X,
                     const Point& p);

}  // namespace folia
