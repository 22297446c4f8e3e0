#pragma once

#include "folia/forms.hpp"

namespace folia {

/// A foliation presented by a spanning frame of the integrable subbundle E
/// plus an ordered transverse frame fixing the transverse orientation. The
/// transverse frame is a convention supplied by the example constructor;
/// the library only checks its consistency.
struct Foliation {
  std::vector<VectorField> leaf_frame;
  std::vector<VectorField> transverse_hint;
  std::vector<int> grid_axes;  // coordinate axes used for deterministic grids
};

struct FoliatedManifold {
  Backend M;
  Foliation F;

  int dim() const { return M.dim(); }
  int leaf_rank() const { return static_cast<int>(F.leaf_frame.size()); }
  int codim() const { return dim() - leaf_rank(); }
};

template <class S>
MatX<S> leaf_gram(const FoliatedManifold& fm, const EvalPoint<S>& p) {
  const int r = fm.leaf_rank();
  MatX<S> G(r, r);
  std::vector<VecX<S>> vals(r);
  for (int i = 0; i < r; ++i) vals[i] = fm.F.leaf_frame[i](p);
  const MatX<S> g = fm.M.metric_at(p);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j) {
      S acc = S(0.0);
      for (int a = 0; a < g.rows(); ++a)
        for (int b = 0; b < g.cols(); ++b) acc += vals[i](a) * g(a, b) * vals[j](b);
      G(i, j) = acc;
      G(j, i) = acc;
    }
  return G;
}

/// Leaf-frame coefficients of the g-orthogonal projection of v onto E.
template <class S>
VecX<S> leaf_coefficients(const FoliatedManifold& fm, const EvalPoint<S>& p,
                          const VecX<S>& v) {
  const int r = fm.leaf_rank();
  const MatX<S> g = fm.M.metric_at(p);
  VecX<S> rhs(r);
  for (int i = 0; i < r; ++i) {
    const VecX<S> li = fm.F.leaf_frame[i](p);
    S acc = S(0.0);
    for (int a = 0; a < g.rows(); ++a)
      for (int b = 0; b < g.cols(); ++b) acc += v(a) * g(a, b) * li(b);
    rhs(i) = acc;
  }
  MatX<S> G = leaf_gram(fm, p);
  try {
    return solve_linear<S>(G, rhs, 1e-10);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("leaf frame degenerate at sample point");
  }
}

template <class S>
VecX<S> project_leaf(const FoliatedManifold& fm, const EvalPoint<S>& p,
                     const VecX<S>& v) {
  const VecX<S> a = leaf_coefficients(fm, p, v);
  VecX<S> out = VecX<S>::Zero(fm.dim());
  for (int i = 0; i < fm.leaf_rank(); ++i) out += a(i) * fm.F.leaf_frame[i](p);
  return out;
}

template <class S>
VecX<S> project_perp(const FoliatedManifold& fm, const EvalPoint<S>& p,
                     const VecX<S>& v) {
  return v - project_leaf(fm, p, v);
}

/// Transverse metric g_T(u, v) = g(u_perp, v_perp); projection is
/// g-orthogonal, so one projection suffices.
template <class S>
S transverse_metric(const FoliatedManifold& fm, const EvalPoint<S>& p,
                    const VecX<S>& u, const VecX<S>& v) {
  return metric_inner(fm.M, p, u, project_perp(fm, p, v));
}

inline ScalarField transverse_pairing(const FoliatedManifold& fm, const VectorField& X,
                                      const VectorField& Y) {
  return ScalarField::from([fm, X, Y](const auto& p) {
    return transverse_metric(fm, p, X(p), Y(p));
  });
}

/// Projection of a field onto E / E-perp as derived fields.
inline VectorField leaf_part_field(const FoliatedManifold& fm, const VectorField& X) {
  return VectorField::from([fm, X](const auto& p) { return project_leaf(fm, p, X(p)); });
}

inline VectorField perp_field(const FoliatedManifold& fm, const VectorField& X) {
  return VectorField::from([fm, X](const auto& p) { return project_perp(fm, p, X(p)); });
}

/// g_T-orthonormal oriented transverse frame at p (component vectors),
/// Gram-Schmidt of the projected hint frame in the declared order.
template <class S>
std::vector<VecX<S>> transverse_frame(const FoliatedManifold& fm,
                                      const EvalPoint<S>& p) {
  const int q = fm.codim();
  std::vector<VecX<S>> w(q);
  for (int a = 0; a < q; ++a)
    w[a] = project_perp(fm, p, fm.F.transverse_hint[a](p));
  MatX<S> G(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b <= a; ++b) {
      const S v = metric_inner(fm.M, p, w[a], w[b]);
      G(a, b) = v;
      G(b, a) = v;
    }
  const MatX<S> C = gram_schmidt_coefficients<S>(G);
  std::vector<VecX<S>> out(q);
  for (int b = 0; b < q; ++b) {
    out[b] = VecX<S>::Zero(fm.dim());
    for (int a = 0; a <= b; ++a) out[b] += C(a, b) * w[a];
  }
  return out;
}

/// Full g-orthonormal frame adapted to the foliation: leaf directions first,
/// then the oriented transverse frame.
template <class S>
std::vector<VecX<S>> adapted_frame(const FoliatedManifold& fm, const EvalPoint<S>& p) {
  const int r = fm.leaf_rank();
  std::vector<VecX<S>> leaf(r);
  MatX<S> G = leaf_gram(fm, p);
  const MatX<S> C = gram_schmidt_coefficients<S>(G);
  for (int b = 0; b < r; ++b) {
    leaf[b] = VecX<S>::Zero(fm.dim());
    for (int a = 0; a <= b; ++a) leaf[b] += C(a, b) * fm.F.leaf_frame[a](p);
  }
  auto trans = transverse_frame(fm, p);
  leaf.insert(leaf.end(), trans.begin(), trans.end());
  return leaf;
}

/// Transverse volume form mu_T: wedge of the g-duals of the oriented
/// orthonormal transverse frame; evaluates to 1 on that frame.
inline FormField transverse_volume_form(const FoliatedManifold& fm) {
  const int q = fm.codim();
  return FormField::from(q, [fm](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const auto frame = transverse_frame(fm, p);
    const MatX<S> g = fm.M.metric_at(p);
    std::vector<VecX<S>> covs(frame.size());
    for (std::size_t a = 0; a < frame.size(); ++a) {
      covs[a] = VecX<S>::Zero(fm.dim());
      for (int i = 0; i < fm.dim(); ++i)
        for (int j = 0; j < fm.dim(); ++j) covs[a](i) += g(i, j) * frame[a](j);
    }
    return wedge_covectors<S>(fm.dim(), covs);
  });
}

/// Riemannian density sqrt(det g) in the backend basis.
inline ScalarField volume_density(const Backend& M) {
  return ScalarField::from([M](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    return sqrt(determinant<S>(M.metric_at(p)));
  });
}

// ---------------------------------------------------------------------------
// Sampled classification results (double level), implemented in foliation.cpp.

struct SamplePlan {
  int grid_per_axis = 16;
  int n_random = 32;
  std::uint64_t seed = 42;
};

std::vector<Point> sample_points(const FoliatedManifold& fm, const SamplePlan& plan);

struct FieldClassification {
  bool is_foliate = false;
  bool is_transverse = false;
  double foliate_residual = 0.0;  // sup over samples of |[L_i, X]^perp|
  double perp_residual = 0.0;     // sup over samples of |X^E|
};

FieldClassification classify_field(const FoliatedManifold& fm, const VectorField& X,
                                   const std::vector<Point>& samples,
                                   double tol = 1e-8);

struct BasicFunctionCheck {
  bool is_basic = false;
  double residual = 0.0;  // sup |L_i(f)|
};

BasicFunctionCheck is_basic_function(const FoliatedManifold& fm, const ScalarField& f,
                                     const std::vector<Point>& samples,
                                     double tol = 1e-8);

/// Mean curvature vector of the leaf through p:
/// H = sum_{ij} G^{ij} (nabla_{L_i} L_j)^perp over the leaf frame.
VectorXd leaf_mean_curvature(const FoliatedManifold& fm, const Point& p);

/// sup |H| over the samples; the foliation counts as harmonic below tol.
struct HarmonicityCheck {
  bool harmonic = false;
  double sup_mean_curvature = 0.0;
};
HarmonicityCheck harmonicity(const FoliatedManifold& fm,
                             const std::vector<Point>& samples, double tol = 1e-9);

/// (L_X g_T)(Y, Z) at p via X(g_T(Y,Z)) - g_T([X,Y],Z) - g_T(Y,[X,Z]).
double lie_derivative_gT(const FoliatedManifold& fm, const VectorField& X,
                         const VectorField& Y, const VectorField& Z, const Point& p);

/// Frobenius integrability residual: sup |[L_i, L_j]^perp|.
double integrability_residual(const FoliatedManifold& fm,
                              const std::vector<Point>& samples);

/// Holonomy invariance residual: sup |(L_{L_i} g_T)(B_j, B_k)| over samples
/// and basis pairs. Vanishing certifies (F, g_T) as a Riemannian foliation.
double holonomy_residual(const FoliatedManifold& fm,
                         const std::vector<Point>& samples);

/// Checks that (leaf frame, transverse hints) is positively oriented against
/// the backend basis at every sample; throws on inconsistency.
void check_orientation(const FoliatedManifold& fm, const std::vector<Point>& samples);

}  // namespace folia
