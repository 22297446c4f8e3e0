#include "folia/foliation.hpp"

namespace folia {

std::vector<Point> sample_points(const FoliatedManifold& fm, const SamplePlan& plan) {
  std::vector<Point> out;
  Rng rng(plan.seed);
  const int q = fm.codim();

  if (fm.M.is_chart()) {
    const auto& C = fm.M.chart();
    if (!fm.F.grid_axes.empty()) {
      // deterministic grid over the declared transverse axes, other
      // coordinates held at the domain midpoint
      const int axes = static_cast<int>(fm.F.grid_axes.size());
      const int per_axis = std::max(2, plan.grid_per_axis);
      std::vector<int> idx(axes, 0);
      while (true) {
        Point p = fm.M.base_point();
        for (int a = 0; a < axes; ++a) {
          const int ax = fm.F.grid_axes[a];
          p.x(ax) = C.lo(ax) + (idx[a] + 0.5) * (C.hi(ax) - C.lo(ax)) / per_axis;
        }
        out.push_back(p);
        int a = 0;
        while (a < axes && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == axes) break;
      }
    } else {
      // generic position: a diagonal segment through the domain
      const int count = std::max(2, plan.grid_per_axis);
      for (int i = 0; i < count; ++i) {
        Point p;
        const double t = (i + 0.5) / count;
        p.x = C.lo + t * (C.hi - C.lo);
        out.push_back(p);
      }
    }
  } else {
    // frame backend: pseudorandom group elements stand in for the grid
    for (int i = 0; i < plan.grid_per_axis * std::max(1, q); ++i)
      out.push_back(fm.M.random_point(rng));
  }

  for (int i = 0; i < plan.n_random; ++i) out.push_back(fm.M.random_point(rng));
  return out;
}

FieldClassification classify_field(const FoliatedManifold& fm, const VectorField& X,
                                   const std::vector<Point>& samples, double tol) {
  FieldClassification out;
  for (const Point& p : samples) {
    for (const VectorField& L : fm.F.leaf_frame) {
      const VecX<double> br = lie_bracket(fm.M, L, X, p);
      const VecX<double> brp = project_perp(fm, p, br);
      out.foliate_residual =
          std::max(out.foliate_residual, std::sqrt(metric_inner(fm.M, p, brp, brp)));
    }
    const VecX<double> xe = project_leaf(fm, p, X(p));
    out.perp_residual =
        std::max(out.perp_residual, std::sqrt(metric_inner(fm.M, p, xe, xe)));
  }
  out.is_foliate = out.foliate_residual < tol;
  out.is_transverse = out.is_foliate && out.perp_residual < tol;
  return out;
}

BasicFunctionCheck is_basic_function(const FoliatedManifold& fm, const ScalarField& f,
                                     const std::vector<Point>& samples, double tol) {
  BasicFunctionCheck out;
  for (const Point& p : samples)
    for (const VectorField& L : fm.F.leaf_frame)
      out.residual = std::max(
          out.residual, std::abs(dir_derivative(fm.M, f, p, VecX<double>(L(p)))));
  out.is_basic = out.residual < tol;
  return out;
}

VectorXd leaf_mean_curvature(const FoliatedManifold& fm, const Point& p) {
  const int r = fm.leaf_rank();
  const MatrixXd Ginv = invert<double>(leaf_gram(fm, p));
  VectorXd H = VectorXd::Zero(fm.dim());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const VecX<double> nij =
          levi_civita(fm.M, fm.F.leaf_frame[i], fm.F.leaf_frame[j], p);
      H += Ginv(i, j) * project_perp(fm, p, nij);
    }
  return H;
}

HarmonicityCheck harmonicity(const FoliatedManifold& fm,
                             const std::vector<Point>& samples, double tol) {
  HarmonicityCheck out;
  for (const Point& p : samples) {
    const VecX<double> H = leaf_mean_curvature(fm, p);
    out.sup_mean_curvature =
        std::max(out.sup_mean_curvature, std::sqrt(metric_inner(fm.M, p, H, H)));
  }
  out.harmonic = out.sup_mean_curvature < tol;
  return out;
}

double lie_derivative_gT(const FoliatedManifold& fm, const VectorField& X,
                         const VectorField& Y, const VectorField& Z, const Point& p) {
  const ScalarField h = transverse_pairing(fm, Y, Z);
  const double t1 = dir_derivative(fm.M, h, p, VecX<double>(X(p)));
  const double t2 =
      transverse_metric(fm, p, lie_bracket(fm.M, X, Y, p), VecX<double>(Z(p)));
  const double t3 =
      transverse_metric(fm, p, VecX<double>(Y(p)), lie_bracket(fm.M, X, Z, p));
  return t1 - t2 - t3;
}

double integrability_residual(const FoliatedManifold& fm,
                              const std::vector<Point>& samples) {
  double res = 0.0;
  const int r = fm.leaf_rank();
  for (const Point& p : samples)
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        const VecX<double> br =
            lie_bracket(fm.M, fm.F.leaf_frame[i], fm.F.leaf_frame[j], p);
        const VecX<double> brp = project_perp(fm, p, br);
        res = std::max(res, std::sqrt(metric_inner(fm.M, p, brp, brp)));
      }
  return res;
}

double holonomy_residual(const FoliatedManifold& fm,
                         const std::vector<Point>& samples) {
  double res = 0.0;
  const int n = fm.dim();
  for (const Point& p : samples)
    for (const VectorField& L : fm.F.leaf_frame)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
          res = std::max(res,
                         std::abs(lie_derivative_gT(fm, L, fm.M.basis_field(j),
                                                    fm.M.basis_field(k), p)));
  return res;
}

void check_orientation(const FoliatedManifold& fm, const std::vector<Point>& samples) {
  const int n = fm.dim();
  for (const Point& p : samples) {
    MatX<double> B(n, n);
    int col = 0;
    for (const VectorField& L : fm.F.leaf_frame) B.col(col++) = L(p);
    for (const VectorField& T : fm.F.transverse_hint) B.col(col++) = T(p);
    if (determinant<double>(B) <= 0.0)
      throw std::runtime_error(
          "foliation frame (leaf, transverse) is not positively oriented");
  }
}

}  // namespace folia
