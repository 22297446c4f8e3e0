#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "folia/expr.hpp"
#include "folia/rng.hpp"

namespace folia {

/// Coordinate-chart backend: a box fundamental domain with optional per-axis
/// periodic identification and a metric given by component functions. Field
/// well-definedness on the quotient is the responsibility of whoever builds
/// fields on it.
struct ChartBackend {
  int n = 0;
  VectorXd lo, hi;
  std::vector<double> period;  // per-axis period, 0 = not periodic
  MatrixField metric;
};

/// Homogeneous frame backend: a Lie frame algebra with structure constants,
/// an invariant (constant) metric and a total volume. Points are carried as
/// the adjoint matrix of the group element, so coefficient functions may be
/// polynomials in adjoint entries; invariant data ignores the point.
struct FrameBackend {
  int n = 0;
  std::vector<MatrixXd> ad;  // ad[k](i,j): [e_k, e_j] = sum_i ad[k](i,j) e_i
  MatrixXd metric;
  double total_volume = 1.0;
  // Optional group quadrature rule (point matrix, weight); weights sum to
  // total_volume. Empty rule = invariant integrands only.
  std::vector<std::pair<MatrixXd, double>> quadrature;
  std::vector<std::pair<MatrixXd, double>> quadrature_fine;
};

/// Builds the ad matrices from structure constants c[i][j][k] with
/// [e_i, e_j] = sum_k c[i][j][k] e_k, validating antisymmetry and the Jacobi
/// identity.
FrameBackend make_frame_backend(const std::vector<std::vector<std::vector<double>>>& c,
                                const MatrixXd& metric, double total_volume,
                                double tol = 1e-9);

struct IntegrationResult {
  double value = 0.0;
  bool converged = true;
  double rel_change = 0.0;
};

/// Immutable backend handle; copies share the payload (frame quadrature
/// rules can be large, and derived expressions capture backends freely).
class Backend {
 public:
  Backend() = default;
  Backend(ChartBackend c)
      : v_(std::make_shared<const Variant>(std::move(c))) {}
  Backend(FrameBackend f)
      : v_(std::make_shared<const Variant>(std::move(f))) {}

  bool is_chart() const { return std::holds_alternative<ChartBackend>(*v_); }
  const ChartBackend& chart() const { return std::get<ChartBackend>(*v_); }
  const FrameBackend& frame() const { return std::get<FrameBackend>(*v_); }

  int dim() const { return is_chart() ? chart().n : frame().n; }

  template <class S>
  MatX<S> metric_at(const EvalPoint<S>& p) const {
    if (is_chart()) return chart().metric(p);
    const MatrixXd& m = frame().metric;
    MatX<S> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out(i, j) = S(m(i, j));
    return out;
  }

  /// k-th coordinate/frame field (unit coefficient vector).
  VectorField basis_field(int k) const {
    VectorXd e = VectorXd::Zero(dim());
    e(k) = 1.0;
    return constant_vector(e);
  }

  Point base_point() const {
    Point p;
    if (is_chart()) {
      p.x = 0.5 * (chart().lo + chart().hi);
    } else {
      p.A = MatrixXd::Identity(frame().ad.empty() ? dim() : frame().ad[0].rows(),
                               frame().ad.empty() ? dim() : frame().ad[0].cols());
    }
    return p;
  }

  Point random_point(Rng& rng) const;

  /// Periodic reduction of chart coordinates into the fundamental domain.
  Point reduce(Point p) const;

  /// Structure-constant contraction [u, v] for frame backends; zero on charts
  /// (coordinate fields commute).
  template <class S>
  VecX<S> bracket_constants(const VecX<S>& u, const VecX<S>& v) const {
    VecX<S> out = VecX<S>::Zero(dim());
    if (is_chart()) return out;
    const auto& ad = frame().ad;
    for (int k = 0; k < dim(); ++k) {
      // u_k * ad_k * v
      for (int i = 0; i < dim(); ++i) {
        S acc = S(0.0);
        for (int j = 0; j < dim(); ++j) acc += ad[k](i, j) * v(j);
        out(i) += u(k) * acc;
      }
    }
    return out;
  }

  /// Seeds a first-order jet curve through p with tangent `dir` (components
  /// in the backend basis). Chart: straight coordinate curve. Frame: the
  /// exponential curve g·exp(t·dir), acting on the adjoint matrix; exact for
  /// dual numbers since t^2 = 0.
  template <class S>
  EvalPoint<Jet<S>> seed(const EvalPoint<S>& p, const VecX<S>& dir) const {
    EvalPoint<Jet<S>> q;
    if (is_chart()) {
      q.x.resize(p.x.size());
      for (int i = 0; i < p.x.size(); ++i) q.x(i) = Jet<S>(p.x(i), dir(i));
    } else {
      const auto& ad = frame().ad;
      const int m = static_cast<int>(p.A.rows());
      // C = sum_k dir_k ad_k ; A(t) = (I - t C) A
      MatX<S> CA = MatX<S>::Zero(m, m);
      for (int k = 0; k < dim(); ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            S acc = S(0.0);
            for (int l = 0; l < m; ++l) acc += ad[k](i, l) * p.A(l, j);
            CA(i, j) += dir(k) * acc;
          }
      q.A.resize(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q.A(i, j) = Jet<S>(p.A(i, j), -CA(i, j));
    }
    return q;
  }

  /// Lifts a point to jet level S with constant (underived) entries.
  template <class S>
  EvalPoint<S> lift(const Point& p) const {
    EvalPoint<S> q;
    q.x.resize(p.x.size());
    for (int i = 0; i < p.x.size(); ++i) q.x(i) = S(p.x(i));
    q.A.resize(p.A.rows(), p.A.cols());
    for (int i = 0; i < p.A.rows(); ++i)
      for (int j = 0; j < p.A.cols(); ++j) q.A(i, j) = S(p.A(i, j));
    return q;
  }

  /// Integral of f over the manifold against the Riemannian density
  /// sqrt(det g). Chart backends use a composite midpoint rule (periodic
  /// smooth integrands converge spectrally); frame backends use the supplied
  /// group rule, or value * total_volume for invariant integrands.
  IntegrationResult integrate(const ScalarField& f, int resolution = 32) const;

 private:
  using Variant = std::variant<ChartBackend, FrameBackend>;
  std::shared_ptr<const Variant> v_;
};

/// Directional derivative of a scalar field at p along `dir`.
template <class S>
S dir_derivative(const Backend& M, const ScalarField& f, const EvalPoint<S>& p,
                 const VecX<S>& dir) {
  return f(M.seed(p, dir)).b;
}

/// Lie bracket [X, Y] at p: jet Jacobian terms plus, on frame backends, the
/// structure-constant contraction of the coefficient vectors.
template <class S>
VecX<S> lie_bracket(const Backend& M, const VectorField& X, const VectorField& Y,
                    const EvalPoint<S>& p) {
  const VecX<S> Xp = X(p), Yp = Y(p);
  const auto dY = Y(M.seed(p, Xp));  // Y along the X-curve
  const auto dX = X(M.seed(p, Yp));
  VecX<S> out(Xp.size());
  for (int i = 0; i < out.size(); ++i) out(i) = dY(i).b - dX(i).b;
  if (!M.is_chart()) out += M.bracket_constants(Xp, Yp);
  return out;
}

/// Bracket as a derived field (first-derivative capped: evaluating it at
/// jet level 1 already consumes second derivatives of its arguments).
inline VectorField bracket_field(const Backend& M, const VectorField& X,
                                 const VectorField& Y) {
  auto fn = [M, X, Y](const auto& p) { return lie_bracket(M, X, Y, p); };
  return VectorField::from<decltype(fn), 1>(std::move(fn));
}

}  // namespace folia
