#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "folia/riemannian.hpp"

namespace folia {

/// Sorted k-index combinations of {0,...,n-1} in lexicographic order; the
/// component layout used by every FormField. Tables are memoized per thread
/// since form evaluations consult them constantly.
inline const std::vector<std::vector<int>>& combinations(int n, int k) {
  thread_local std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  const auto key = std::make_pair(n, k);
  const auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;

  std::vector<std::vector<int>> out;
  if (k >= 0 && k <= n) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
      out.push_back(c);
      int i = k - 1;
      while (i >= 0 && c[i] == n - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

inline int combination_index(const std::vector<std::vector<int>>& table,
                             const std::vector<int>& combo) {
  const auto it = std::lower_bound(table.begin(), table.end(), combo);
  if (it == table.end() || *it != combo)
    throw std::logic_error("combination_index: combination not found");
  return static_cast<int>(it - table.begin());
}

/// Inserts index i into the sorted combination J; returns {sign, position} or
/// sign 0 if i already occurs.
inline std::pair<int, std::vector<int>> insert_index(int i, const std::vector<int>& J) {
  std::vector<int> out;
  out.reserve(J.size() + 1);
  int sign = 1;
  bool placed = false;
  for (int j : J) {
    if (j == i) return {0, {}};
    if (!placed && j > i) {
      out.push_back(i);
      placed = true;
    }
    if (!placed) sign = -sign;
    out.push_back(j);
  }
  if (!placed) out.push_back(i);
  return {sign, out};
}

/// Applies a k-form (components over combinations(n,k)) to k vectors.
template <class S>
S apply_form(int n, int k, const VecX<S>& comps, const std::vector<VecX<S>>& vecs) {
  const auto& table = combinations(n, k);
  S acc = S(0.0);
  for (std::size_t ci = 0; ci < table.size(); ++ci) {
    const auto& I = table[ci];
    MatX<S> sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = vecs[c](I[r]);
    acc += comps(int(ci)) * determinant<S>(sub);
  }
  return acc;
}

/// Exterior derivative via the invariant formula over the basis fields:
/// coordinate fields commute on charts; on frame backends the bracket terms
/// contract the structure constants.
template <class S>
VecX<S> exterior_derivative_components(const Backend& M, const FormField& w,
                                       const EvalPoint<S>& p) {
  const int n = M.dim();
  const int k = w.degree();
  if (k + 1 > n)
    throw std::invalid_argument("exterior_derivative: degree overflow");
  const auto& in_table = combinations(n, k);
  const auto& out_table = combinations(n, k + 1);

  // Component derivatives along every basis axis (one seeded pass per axis).
  std::vector<VecX<S>> dcomp(n);
  for (int axis = 0; axis < n; ++axis) {
    VecX<S> e = VecX<S>::Zero(n);
    e(axis) = S(1.0);
    const auto jw = w(M.seed(p, e));
    dcomp[axis].resize(jw.size());
    for (int i = 0; i < jw.size(); ++i) dcomp[axis](i) = jw(i).b;
  }

  const VecX<S> comps = w(p);
  VecX<S> out = VecX<S>::Zero(int(out_table.size()));
  for (std::size_t oi = 0; oi < out_table.size(); ++oi) {
    const auto& J = out_table[oi];
    S acc = S(0.0);
    // sum_m (-1)^m B_{j_m} ( w(B_{J minus j_m}) )
    for (int m = 0; m <= k; ++m) {
      std::vector<int> rest;
      for (int t = 0; t <= k; ++t)
        if (t != m) rest.push_back(J[t]);
      const int ci = combination_index(in_table, rest);
      const S term = dcomp[J[m]](ci);
      acc += (m % 2 == 0) ? term : -term;
    }
    // bracket terms, frame backends only
    if (!M.is_chart()) {
      for (int m = 0; m <= k; ++m)
        for (int l = m + 1; l <= k; ++l) {
          VecX<S> em = VecX<S>::Zero(n), el = VecX<S>::Zero(n);
          em(J[m]) = S(1.0);
          el(J[l]) = S(1.0);
          const VecX<S> br = M.bracket_constants(em, el);
          std::vector<int> rest;
          for (int t = 0; t <= k; ++t)
            if (t != m && t != l) rest.push_back(J[t]);
          S term = S(0.0);
          for (int i = 0; i < n; ++i) {
            if (jet_abs_value(br(i)) == 0.0) continue;
            const auto [sgn, full] = insert_index(i, rest);
            if (sgn == 0) continue;
            term += br(i) * double(sgn) * comps(combination_index(in_table, full));
          }
          acc += ((m + l) % 2 == 0) ? term : -term;
        }
    }
    out(int(oi)) = acc;
  }
  return out;
}

inline FormField exterior_derivative(const Backend& M, const FormField& w) {
  auto fn = [M, w](const auto& p) { return exterior_derivative_components(M, w, p); };
  return FormField::from<decltype(fn), 1>(w.degree() + 1, std::move(fn));
}

/// Interior product ι_X ω as a derived (k-1)-form.
inline FormField interior_product(const Backend& M, const VectorField& X,
                                  const FormField& w) {
  const int n = M.dim();
  const int k = w.degree();
  if (k == 0) throw std::invalid_argument("interior_product: degree 0 form");
  auto fn = [M, X, w, n, k](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const auto& in_table = combinations(n, k);
    const auto& out_table = combinations(n, k - 1);
    const VecX<S> comps = w(p);
    const VecX<S> Xp = X(p);
    VecX<S> out = VecX<S>::Zero(int(out_table.size()));
    for (std::size_t oi = 0; oi < out_table.size(); ++oi) {
      const auto& J = out_table[oi];
      S acc = S(0.0);
      for (int i = 0; i < n; ++i) {
        const auto [sgn, full] = insert_index(i, J);
        if (sgn == 0) continue;
        acc += Xp(i) * double(sgn) * comps(combination_index(in_table, full));
      }
      out(int(oi)) = acc;
    }
    return out;
  };
  return FormField::from(k - 1, std::move(fn));
}

/// Form evaluation contracted in the first slot with an arbitrary vector:
/// returns ω(v, B_{j_1}, ..., B_{j_{k-1}}) over (k-1)-combinations.
template <class S>
VecX<S> contract_first_slot(int n, int k, const VecX<S>& comps, const VecX<S>& v) {
  const auto& in_table = combinations(n, k);
  const auto& out_table = combinations(n, k - 1);
  VecX<S> out = VecX<S>::Zero(int(out_table.size()));
  for (std::size_t oi = 0; oi < out_table.size(); ++oi) {
    const auto& J = out_table[oi];
    S acc = S(0.0);
    for (int i = 0; i < n; ++i) {
      const auto [sgn, full] = insert_index(i, J);
      if (sgn == 0) continue;
      acc += v(i) * double(sgn) * comps(combination_index(in_table, full));
    }
    out(int(oi)) = acc;
  }
  return out;
}

/// Cartan formula L_X ω = d(ι_X ω) + ι_X dω.
inline FormField lie_derivative_form(const Backend& M, const VectorField& X,
                                     const FormField& w) {
  if (w.degree() == 0) {
    // scalar case: plain directional derivative
    auto fn = [M, X, w](const auto& p) {
      using S = point_scalar_t<decltype(p)>;
      auto q = M.seed(p, X(p));
      const auto jw = w(q);
      VecX<S> out(1);
      out(0) = jw(0).b;
      return out;
    };
    return FormField::from<decltype(fn), 1>(0, std::move(fn));
  }
  const FormField a = exterior_derivative(M, interior_product(M, X, w));
  if (w.degree() == M.dim()) {
    // top degree: d w vanishes identically, only the d iota term remains
    auto fn = [a](const auto& p) { return a(p); };
    return FormField::from<decltype(fn), 1>(w.degree(), std::move(fn));
  }
  const FormField b = interior_product(M, X, exterior_derivative(M, w));
  auto fn = [a, b](const auto& p) {
    auto out = a(p);
    out += b(p);
    return out;
  };
  return FormField::from<decltype(fn), 1>(w.degree(), std::move(fn));
}

inline FormField wedge(const FormField& a, const FormField& b, int n) {
  const int ka = a.degree(), kb = b.degree();
  if (ka + kb > n) throw std::invalid_argument("wedge: degree overflow");
  auto fn = [a, b, ka, kb, n](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    const auto& ta = combinations(n, ka);
    const auto& tb = combinations(n, kb);
    const auto& tout = combinations(n, ka + kb);
    const VecX<S> ca = a(p), cb = b(p);
    VecX<S> out = VecX<S>::Zero(int(tout.size()));
    for (std::size_t ia = 0; ia < ta.size(); ++ia)
      for (std::size_t ib = 0; ib < tb.size(); ++ib) {
        // merge; sign = parity of the shuffle
        std::vector<int> merged;
        merged.reserve(ka + kb);
        int sign = 1;
        bool dup = false;
        {
          std::size_t i = 0, j = 0;
          while (i < ta[ia].size() || j < tb[ib].size()) {
            if (j == tb[ib].size() ||
                (i < ta[ia].size() && ta[ia][i] < tb[ib][j])) {
              merged.push_back(ta[ia][i++]);
            } else if (i < ta[ia].size() && ta[ia][i] == tb[ib][j]) {
              dup = true;
              break;
            } else {
              // element of b passes the remaining ka - i elements of a
              if ((ta[ia].size() - i) % 2 == 1) sign = -sign;
              merged.push_back(tb[ib][j++]);
            }
          }
        }
        if (dup) continue;
        out(combination_index(tout, merged)) += double(sign) * ca(int(ia)) * cb(int(ib));
      }
    return out;
  };
  return FormField::from(ka + kb, std::move(fn));
}

/// Pointwise inner product of two k-forms induced by the metric:
/// <a, b> = sum_{I,J} a_I b_J det( g^{-1}[I, J] ).
template <class S>
S form_inner(const Backend& M, const EvalPoint<S>& p, int k, const VecX<S>& a,
             const VecX<S>& b) {
  if (k == 0) return a(0) * b(0);
  const int n = M.dim();
  const MatX<S> ginv = invert<S>(M.metric_at(p));
  const auto& table = combinations(n, k);
  S acc = S(0.0);
  for (std::size_t ia = 0; ia < table.size(); ++ia)
    for (std::size_t ib = 0; ib < table.size(); ++ib) {
      MatX<S> sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = ginv(table[ia][r], table[ib][c]);
      acc += a(int(ia)) * b(int(ib)) * determinant<S>(sub);
    }
  return acc;
}

/// Basis 1-form dx^i (chart) / eta^i (frame coframe).
inline FormField basis_coform(int n, int i) {
  return FormField::from(1, [n, i](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    (void)p;
    VecX<S> out = VecX<S>::Zero(n);
    out(i) = S(1.0);
    return out;
  });
}

/// Wedge of q covector values into q-form components.
template <class S>
VecX<S> wedge_covectors(int n, const std::vector<VecX<S>>& covs) {
  const int q = static_cast<int>(covs.size());
  const auto& table = combinations(n, q);
  VecX<S> out(int(table.size()));
  for (std::size_t ci = 0; ci < table.size(); ++ci) {
    MatX<S> sub(q, q);
    for (int r = 0; r < q; ++r)
      for (int c = 0; c < q; ++c) sub(r, c) = covs[r](table[ci][c]);
    out(int(ci)) = determinant<S>(sub);
  }
  return out;
}

}  // namespace folia
