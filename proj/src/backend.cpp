#include "folia/backend.hpp"

#include <cmath>
#include <stdexcept>

namespace folia {

FrameBackend make_frame_backend(const std::vector<std::vector<std::vector<double>>>& c,
                                const MatrixXd& metric, double total_volume,
                                double tol) {
  const int n = static_cast<int>(c.size());
  if (metric.rows() != n || metric.cols() != n)
    throw std::invalid_argument("make_frame_backend: metric dimension mismatch");
  if (total_volume <= 0.0)
    throw std::invalid_argument("make_frame_backend: total_volume must be positive");

  FrameBackend F;
  F.n = n;
  F.metric = metric;
  F.total_volume = total_volume;
  F.ad.assign(n, MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        F.ad[i](k, j) = c[i][j][k];
        if (std::abs(c[i][j][k] + c[j][i][k]) > tol)
          throw std::invalid_argument("make_frame_backend: structure constants not antisymmetric");
      }

  // Jacobi identity: [e_i,[e_j,e_k]] + cyclic = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        VectorXd res = VectorXd::Zero(n);
        for (int m = 0; m < n; ++m) {
          res += c[j][k][m] * F.ad[i].col(m);
          res += c[k][i][m] * F.ad[j].col(m);
          res += c[i][j][m] * F.ad[k].col(m);
        }
        if (res.cwiseAbs().maxCoeff() > tol)
          throw std::invalid_argument("make_frame_backend: Jacobi identity violated");
      }
  return F;
}

Point Backend::random_point(Rng& rng) const {
  Point p;
  if (is_chart()) {
    const auto& C = chart();
    p.x.resize(C.n);
    for (int i = 0; i < C.n; ++i) p.x(i) = rng.uniform(C.lo(i), C.hi(i));
  } else {
    const auto& F = frame();
    const int m = static_cast<int>(F.ad.empty() ? F.n : F.ad[0].rows());
    VectorXd t(F.n);
    for (int i = 0; i < F.n; ++i) t(i) = rng.normal();
    if (t.norm() > 0) t *= rng.uniform(0.0, 1.6) / t.norm();
    MatrixXd C = MatrixXd::Zero(m, m);
    for (int k = 0; k < F.n; ++k) C -= t(k) * F.ad[k];
    p.A = matrix_exp(C);
  }
  return p;
}

Point Backend::reduce(Point p) const {
  if (!is_chart()) return p;
  const auto& C = chart();
  for (int i = 0; i < C.n; ++i) {
    const double per = C.period[i];
    if (per > 0.0) {
      double r = std::fmod(p.x(i) - C.lo(i), per);
      if (r < 0.0) r += per;
      p.x(i) = C.lo(i) + r;
    }
  }
  return p;
}

namespace {

double chart_midpoint_integral(const Backend& M, const ChartBackend& C,
                               const ScalarField& f, int res) {
  const int n = C.n;
  std::vector<double> h(n);
  double cell = 1.0;
  for (int i = 0; i < n; ++i) {
    h[i] = (C.hi(i) - C.lo(i)) / res;
    cell *= h[i];
  }
  std::vector<int> idx(n, 0);
  double sum = 0.0;
  Point p;
  p.x.resize(n);
  while (true) {
    for (int i = 0; i < n; ++i) p.x(i) = C.lo(i) + (idx[i] + 0.5) * h[i];
    const double density = std::sqrt(jet_value(determinant<double>(M.metric_at(p))));
    sum += f(p) * density;
    int axis = 0;
    while (axis < n && ++idx[axis] == res) idx[axis++] = 0;
    if (axis == n) break;
  }
  return sum * cell;
}

}  // namespace

IntegrationResult Backend::integrate(const ScalarField& f, int resolution) const {
  IntegrationResult out;
  if (is_chart()) {
    const auto& C = chart();
    const double coarse = chart_midpoint_integral(*this, C, f, resolution);
    const double fine = chart_midpoint_integral(*this, C, f, resolution * 2);
    out.value = fine;
    out.rel_change = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
    out.converged = out.rel_change < 1e-6;
    return out;
  }

  const auto& F = frame();
  if (!F.quadrature.empty()) {
    double coarse = 0.0;
    for (const auto& [A, w] : F.quadrature) {
      Point p;
      p.A = A;
      coarse += w * f(p);
    }
    double fine = coarse;
    if (!F.quadrature_fine.empty()) {
      fine = 0.0;
      for (const auto& [A, w] : F.quadrature_fine) {
        Point p;
        p.A = A;
        fine += w * f(p);
      }
    }
    out.value = fine;
    out.rel_change = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
    out.converged = out.rel_change < 1e-6;
    return out;
  }

  // No group rule: integrand must be invariant; integral = value * volume.
  // Non-constancy over a few sampled group elements raises the warning flag.
  Rng rng(0x5eedULL);
  const double v0 = f(base_point());
  double max_dev = 0.0;
  for (int s = 0; s < 8; ++s) {
    Point p = random_point(rng);
    max_dev = std::max(max_dev, std::abs(f(p) - v0));
  }
  out.value = v0 * F.total_volume;
  out.rel_change = max_dev / std::max(1.0, std::abs(v0));
  out.converged = out.rel_change < 1e-9;
  return out;
}

}  // namespace folia
