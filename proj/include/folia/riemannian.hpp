#pragma once

#include "folia/backend.hpp"

namespace folia {

template <class S>
S metric_inner(const Backend& M, const EvalPoint<S>& p, const VecX<S>& u,
               const VecX<S>& v) {
  const MatX<S> g = M.metric_at(p);
  S acc = S(0.0);
  for (int i = 0; i < u.size(); ++i)
    for (int j = 0; j < v.size(); ++j) acc += u(i) * g(i, j) * v(j);
  return acc;
}

inline ScalarField metric_pairing(const Backend& M, const VectorField& X,
                                  const VectorField& Y) {
  return ScalarField::from([M, X, Y](const auto& p) {
    return metric_inner(M, p, X(p), Y(p));
  });
}

/// Levi-Civita connection nabla_X Y at p through the classical Koszul
/// formula, assembled against the basis coframe and solved against the
/// metric. The connection is tensorial in the direction, so X enters by
/// value: the formula is evaluated with the constant-component extension
/// of Xp, which changes nothing at p.
///
///   2 g(nabla_X Y, Z) = X g(Y,Z) + Y g(X,Z) - Z g(X,Y)
///                      + g([X,Y],Z) - g([X,Z],Y) - g([Y,Z],X)
template <class S>
VecX<S> levi_civita_dir(const Backend& M, const EvalPoint<S>& p, const VecX<S>& Xp,
                        const VectorField& Y) {
  const int n = M.dim();
  const MatX<S> g = M.metric_at(p);
  const VecX<S> Yp = Y(p);

  const auto qX = M.seed(p, Xp);
  const auto gX = M.metric_at(qX);
  const auto YX = Y(qX);  // Y along the X-direction curve
  const auto qY = M.seed(p, Yp);
  const auto gY = M.metric_at(qY);

  // [X, Y] for the constant extension of Xp: derivative of Y along Xp plus
  // structure constants.
  VecX<S> brXY(n);
  for (int i = 0; i < n; ++i) brXY(i) = YX(i).b;
  if (!M.is_chart()) brXY += M.bracket_constants(Xp, Yp);

  VecX<S> rhs(n);
  for (int k = 0; k < n; ++k) {
    VecX<S> ek = VecX<S>::Zero(n);
    ek(k) = S(1.0);
    const auto qk = M.seed(p, ek);
    const auto gk = M.metric_at(qk);
    const auto Yk = Y(qk);

    Jet<S> t1(S(0.0)), t2(S(0.0)), t3(S(0.0));
    for (int i = 0; i < n; ++i) {
      t1 += YX(i) * gX(i, k);           // g(Y, B_k) along X
      t2 += Jet<S>(Xp(i)) * gY(i, k);   // g(X, B_k) along Y, X constant
      for (int j = 0; j < n; ++j)
        t3 += Jet<S>(Xp(i)) * gk(i, j) * Yk(j);  // g(X, Y) along B_k
    }

    // [X, B_k] = c(Xp, e_k); [Y, B_k] = -d_k Y + c(Yp, e_k)
    VecX<S> brXB = VecX<S>::Zero(n), brYB(n);
    for (int i = 0; i < n; ++i) brYB(i) = -Yk(i).b;
    if (!M.is_chart()) {
      VecX<S> ekv = VecX<S>::Zero(n);
      ekv(k) = S(1.0);
      brXB = M.bracket_constants(Xp, ekv);
      brYB += M.bracket_constants(Yp, ekv);
    }

    S t4(0.0), t5(0.0), t6(0.0);
    for (int i = 0; i < n; ++i) {
      t4 += brXY(i) * g(i, k);
      for (int j = 0; j < n; ++j) {
        t5 += brXB(i) * g(i, j) * Yp(j);
        t6 += brYB(i) * g(i, j) * Xp(j);
      }
    }
    rhs(k) = 0.5 * (t1.b + t2.b - t3.b + t4 - t5 - t6);
  }
  try {
    return solve_linear<S>(g, rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("levi_civita: metric singular at evaluation point");
  }
}

template <class S>
VecX<S> levi_civita(const Backend& M, const VectorField& X, const VectorField& Y,
                    const EvalPoint<S>& p) {
  return levi_civita_dir(M, p, VecX<S>(X(p)), Y);
}

/// nabla_Y Z as a derived field; first-derivative capped since its own
/// evaluation already consumes one derivative level of the inputs.
inline VectorField levi_civita_field(const Backend& M, const VectorField& Y,
                                     const VectorField& Z) {
  auto fn = [M, Y, Z](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    return levi_civita_dir(M, p, VecX<S>(Y(p)), Z);
  };
  return VectorField::from<decltype(fn), 1>(std::move(fn));
}

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z,
/// computed by differentiating the connection (the nested evaluation runs
/// on second-order jets).
inline VecX<double> riemann(const Backend& M, const VectorField& X,
                            const VectorField& Y, const VectorField& Z,
                            const Point& p) {
  const VectorField nYZ = levi_civita_field(M, Y, Z);
  const VectorField nXZ = levi_civita_field(M, X, Z);
  VecX<double> out = levi_civita_dir(M, p, VecX<double>(X(p)), nYZ);
  out -= levi_civita_dir(M, p, VecX<double>(Y(p)), nXZ);
  out -= levi_civita_dir(M, p, lie_bracket(M, X, Y, p), Z);
  return out;
}

inline double riemann_scalar(const Backend& M, const VectorField& X,
                             const VectorField& Y, const VectorField& Z,
                             const VectorField& V, const Point& p) {
  return metric_inner(M, p, riemann(M, X, Y, Z, p), V(p));
}

/// g-orthonormal frame at p from Gram-Schmidt of the basis fields, returned
/// as component vectors.
inline std::vector<VectorXd> orthonormal_frame_at(const Backend& M, const Point& p) {
  const MatX<double> g = M.metric_at(p);
  const MatrixXd C = gram_schmidt_coefficients<double>(g);
  std::vector<VectorXd> frame;
  for (int k = 0; k < M.dim(); ++k) frame.push_back(C.col(k));
  return frame;
}

/// Ric(X,X) = sum_i R(F_i, X, X, F_i) over a g-orthonormal frame. Curvature
/// is tensorial in every slot, so frozen frame values are valid arguments.
inline double ricci(const Backend& M, const VectorField& X, const Point& p) {
  double acc = 0.0;
  for (const VectorXd& f : orthonormal_frame_at(M, p)) {
    const VectorField F = constant_vector(f);
    acc += riemann_scalar(M, F, X, X, F, p);
  }
  return acc;
}

/// Polarized Ricci tensor on a pair of frozen vectors.
inline double ricci_pair(const Backend& M, const VectorXd& u, const VectorXd& v,
                         const Point& p) {
  const VectorField Upv = constant_vector(VectorXd(u + v));
  const VectorField Umv = constant_vector(VectorXd(u - v));
  double acc = 0.0;
  for (const VectorXd& f : orthonormal_frame_at(M, p)) {
    const VectorField F = constant_vector(f);
    const double rp = riemann_scalar(M, F, Upv, Upv, F, p);
    const double rm = riemann_scalar(M, F, Umv, Umv, F, p);
    acc += 0.25 * (rp - rm);
  }
  return acc;
}

/// Sectional curvature of the plane spanned by X_p, Y_p.
inline double sectional_curvature(const Backend& M, const VectorField& X,
                                  const VectorField& Y, const Point& p) {
  const VecX<double> Xp = X(p), Yp = Y(p);
  const double xx = metric_inner(M, p, Xp, Xp);
  const double yy = metric_inner(M, p, Yp, Yp);
  const double xy = metric_inner(M, p, Xp, Yp);
  const double denom = xx * yy - xy * xy;
  if (std::abs(denom) < 1e-14)
    throw std::invalid_argument("sectional_curvature: degenerate plane");
  return riemann_scalar(M, X, Y, Y, X, p) / denom;
}

/// Gradient: solves g(grad f, .) = df at p.
template <class S>
VecX<S> gradient(const Backend& M, const ScalarField& f, const EvalPoint<S>& p) {
  const int n = M.dim();
  VecX<S> df(n);
  for (int k = 0; k < n; ++k) {
    VecX<S> ek = VecX<S>::Zero(n);
    ek(k) = S(1.0);
    df(k) = dir_derivative(M, f, p, ek);
  }
  return solve_linear<S>(M.metric_at(p), df);
}

inline VectorField gradient_field(const Backend& M, const ScalarField& f) {
  auto fn = [M, f](const auto& p) { return gradient(M, f, p); };
  return VectorField::from<decltype(fn), 1>(std::move(fn));
}

/// g-dual one-form of a vector field, omega_X = g(X, .).
inline FormField musical_flat(const Backend& M, const VectorField& X) {
  return FormField::from(1, [M, X](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const auto g = M.metric_at(p);
    const auto v = X(p);
    VecX<S> out = VecX<S>::Zero(v.size());
    for (int k = 0; k < v.size(); ++k)
      for (int i = 0; i < v.size(); ++i) out(k) += g(k, i) * v(i);
    return out;
  });
}

}  // namespace folia
