#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// central finite differences for derivatives and Christoffel symbols, and
// direct structure-constant contractions for frame algebras.

#include "folia/foliation.hpp"

namespace oracle {

using namespace folia;

inline double fd_scalar_derivative(const ScalarField& f, const Point& p, int axis,
                                   double h = 1e-6) {
  Point pp = p, pm = p;
  pp.x(axis) += h;
  pm.x(axis) -= h;
  return (f(pp) - f(pm)) / (2.0 * h);
}

inline VectorXd fd_field_derivative(const VectorField& X, const Point& p, int axis,
                                    double h = 1e-6) {
  Point pp = p, pm = p;
  pp.x(axis) += h;
  pm.x(axis) -= h;
  return (VectorXd(X(pp)) - VectorXd(X(pm))) / (2.0 * h);
}

/// Chart-backend bracket through finite-difference Jacobians.
inline VectorXd fd_bracket(const VectorField& X, const VectorField& Y,
                           const Point& p) {
  const VectorXd Xp = X(p), Yp = Y(p);
  VectorXd out = VectorXd::Zero(Xp.size());
  for (int j = 0; j < Xp.size(); ++j) {
    out += Xp(j) * fd_field_derivative(Y, p, j);
    out -= Yp(j) * fd_field_derivative(X, p, j);
  }
  return out;
}

/// Structure-constant contraction for constant-coefficient frame fields.
inline VectorXd structure_bracket(const std::vector<std::vector<std::vector<double>>>& c,
                                  const VectorXd& u, const VectorXd& v) {
  const int n = u.size();
  VectorXd out = VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(k) += u(i) * v(j) * c[i][j][k];
  return out;
}

/// Christoffel symbols of a chart metric through finite differences:
/// Gamma^k_{ij} = g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij}) / 2.
inline std::vector<MatrixXd> fd_christoffel(const Backend& M, const Point& p,
                                            double h = 1e-5) {
  const int n = M.dim();
  std::vector<MatrixXd> dg(n);
  for (int a = 0; a < n; ++a) {
    Point pp = p, pm = p;
    pp.x(a) += h;
    pm.x(a) -= h;
    dg[a] = (MatrixXd(M.metric_at(pp)) - MatrixXd(M.metric_at(pm))) / (2.0 * h);
  }
  const MatrixXd ginv = invert<double>(M.metric_at(p));
  std::vector<MatrixXd> gamma(n, MatrixXd::Zero(n, n));  // gamma[k](i,j)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * acc;
      }
  return gamma;
}

/// nabla_X Y at p from finite-difference Christoffel symbols.
inline VectorXd fd_levi_civita(const Backend& M, const VectorField& X,
                               const VectorField& Y, const Point& p) {
  const int n = M.dim();
  const VectorXd Xp = X(p), Yp = Y(p);
  const auto gamma = fd_christoffel(M, p);
  VectorXd out = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) out += Xp(j) * fd_field_derivative(Y, p, j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(k) += gamma[k](i, j) * Xp(i) * Yp(j);
  return out;
}

inline VectorField random_combination(const std::vector<VectorField>& pool,
                                      Rng& rng) {
  VectorXd c(pool.size());
  for (int i = 0; i < c.size(); ++i) c(i) = rng.uniform(-1.0, 1.0);
  return linear_combination(pool, c);
}

}  // namespace oracle
