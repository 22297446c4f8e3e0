#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "folia/jet.hpp"

namespace folia {

template <class S> using VecX = Eigen::Vector<S, Eigen::Dynamic>;
template <class S> using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Gaussian elimination with partial pivoting, templated on the scalar so
/// jet-valued systems can be solved exactly. Pivoting compares the numeric
/// value part only, which keeps the elimination path identical across
/// derivative orders.
template <class S>
VecX<S> solve_linear(MatX<S> A, VecX<S> rhs, double singular_tol = 1e-12) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || rhs.size() != n)
    throw std::invalid_argument("solve_linear: dimension mismatch");
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, jet_abs_value(A(i, j)));
  if (scale == 0.0) throw std::runtime_error("solve_linear: zero matrix");

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = jet_abs_value(A(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double cand = jet_abs_value(A(r, col));
      if (cand > best) { best = cand; piv = r; }
    }
    if (best <= singular_tol * scale)
      throw std::runtime_error("solve_linear: singular matrix");
    if (piv != col) {
      A.row(piv).swap(A.row(col));
      std::swap(rhs(piv), rhs(col));
    }
    const S inv_piv = S(1.0) / A(col, col);
    for (int r = col + 1; r < n; ++r) {
      const S f = A(r, col) * inv_piv;
      for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
      rhs(r) -= f * rhs(col);
    }
  }
  VecX<S> x(n);
  for (int r = n - 1; r >= 0; --r) {
    S acc = rhs(r);
    for (int c = r + 1; c < n; ++c) acc -= A(r, c) * x(c);
    x(r) = acc / A(r, r);
  }
  return x;
}

template <class S>
MatX<S> invert(const MatX<S>& A, double singular_tol = 1e-12) {
  const int n = static_cast<int>(A.rows());
  MatX<S> inv(n, n);
  for (int j = 0; j < n; ++j) {
    VecX<S> e = VecX<S>::Zero(n);
    e(j) = S(1.0);
    inv.col(j) = solve_linear<S>(A, e, singular_tol);
  }
  return inv;
}

/// Determinant by cofactor expansion. Exact for jet scalars even at
/// value-singular matrices, where pivoted elimination would drop the
/// derivative part; fine at the small dimensions used here.
template <class S>
S determinant(const MatX<S>& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 0) return S(1.0);
  if (n == 1) return A(0, 0);
  if (n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  if (n == 3)
    return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
           A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
           A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
  S acc = S(0.0);
  for (int j = 0; j < n; ++j) {
    MatX<S> minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = A(r, c);
      }
    }
    const S term = A(0, j) * determinant<S>(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

/// Gram-Schmidt in a fixed order against a supplied inner product matrix G,
/// returning coefficient columns: output column k expresses the k-th
/// orthonormal vector in terms of the input vectors. No pivoting, so the
/// result depends smoothly on G and stays jet-differentiable.
template <class S>
MatX<S> gram_schmidt_coefficients(const MatX<S>& G, double indep_tol = 1e-10) {
  const int m = static_cast<int>(G.rows());
  MatX<S> C = MatX<S>::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    VecX<S> c = VecX<S>::Zero(m);
    c(k) = S(1.0);
    for (int j = 0; j < k; ++j) {
      // remove the G-projection onto column j
      S proj = S(0.0);
      for (int r = 0; r <= k; ++r)
        for (int s = 0; s <= j; ++s) proj += c(r) * C(s, j) * G(r, s);
      for (int s = 0; s <= j; ++s) c(s) -= proj * C(s, j);
    }
    S norm2 = S(0.0);
    for (int r = 0; r <= k; ++r)
      for (int s = 0; s <= k; ++s) norm2 += c(r) * c(s) * G(r, s);
    if (jet_value(norm2) <= indep_tol)
      throw std::runtime_error("gram_schmidt: vectors not linearly independent");
    const S inv_norm = S(1.0) / sqrt(norm2);
    C.col(k) = c * inv_norm;
  }
  return C;
}

/// Plain matrix exponential via scaling and squaring with a Taylor core;
/// used for sampling group elements, double precision only.
inline MatrixXd matrix_exp(const MatrixXd& M) {
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double s = norm;
  while (s > 0.5) { s *= 0.5; ++squarings; }
  MatrixXd X = M / std::pow(2.0, squarings);
  const int n = static_cast<int>(M.rows());
  MatrixXd term = MatrixXd::Identity(n, n);
  MatrixXd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * X / double(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Gauss-Legendre nodes and weights on (-1, 1) via Newton iteration on the
/// Legendre polynomial; exact for polynomials of degree 2n - 1.
inline std::pair<VectorXd, VectorXd> legendre_rule(int n) {
  VectorXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess
    double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        double q0 = 1.0, q1 = t;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2.0 * k - 1.0) * t * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        const double dq = n * (t * q1 - q0) / (t * t - 1.0);
        x(i) = t;
        w(i) = 2.0 / ((1.0 - t * t) * dq * dq);
        break;
      }
    }
  }
  return {x, w};
}

/// Orthonormal basis of the (right) nullspace of A with a relative singular
/// value threshold; also reports the singular values for gap diagnostics.
struct NullspaceResult {
  MatrixXd basis;            // columns span the nullspace
  VectorXd singular_values;  // all singular values, descending
  double threshold = 0.0;    // absolute cutoff used
};

inline NullspaceResult nullspace(const MatrixXd& A, double rel_tol = 1e-7) {
  NullspaceResult out;
  const int cols = static_cast<int>(A.cols());
  if (A.rows() == 0 || cols == 0) {
    out.basis = MatrixXd::Identity(cols, cols);
    out.singular_values = VectorXd::Zero(0);
    return out;
  }
  Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
  // relative to the spectrum, with an absolute floor at the O(1) scale of
  // the sampled maps so an identically vanishing map has a full nullspace
  out.threshold = rel_tol * std::max(smax, 1.0);
  int rank = 0;
  for (int i = 0; i < out.singular_values.size(); ++i)
    if (out.singular_values(i) > out.threshold) ++rank;
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

/// Principal angles (radians) between the column spans of U and V, which are
/// first orthonormalized. Returns min(dim U, dim V) angles, ascending.
inline VectorXd principal_angles(const MatrixXd& U, const MatrixXd& V) {
  if (U.cols() == 0 || V.cols() == 0) return VectorXd::Zero(0);
  Eigen::HouseholderQR<MatrixXd> qu(U), qv(V);
  MatrixXd Qu = qu.householderQ() * MatrixXd::Identity(U.rows(), U.cols());
  MatrixXd Qv = qv.householderQ() * MatrixXd::Identity(V.rows(), V.cols());
  Eigen::JacobiSVD<MatrixXd> svd(Qu.transpose() * Qv);
  VectorXd s = svd.singularValues();
  VectorXd angles(s.size());
  for (int i = 0; i < s.size(); ++i)
    angles(i) = std::acos(std::clamp(s(i), -1.0, 1.0));
  return angles;
}

}  // namespace folia
