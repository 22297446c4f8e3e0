#pragma once

#include <memory>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "folia/jet.hpp"
#include "folia/linalg.hpp"

namespace folia {

/// Evaluation point at jet level S. Chart backends use the coordinate
/// vector x; frame backends use the representation matrix A (the adjoint
/// matrix of the group element), through which position-dependent
/// coefficient functions and their exact frame derivatives are evaluated.
template <class S>
struct EvalPoint {
  VecX<S> x;
  MatX<S> A;
};

using Point = EvalPoint<double>;

template <class>
inline constexpr bool dependent_false_v = false;

template <class P> struct point_scalar;
template <class S> struct point_scalar<EvalPoint<S>> { using type = S; };
template <class P>
using point_scalar_t = typename point_scalar<std::decay_t<P>>::type;

// The concept machinery is easier to read written out per expression kind
// than through a generic Out tag; three small copies below.

#define FOLIA_EXPR_BODY(Name, Ret0, Ret1, Ret2)                                   \
  struct Concept {                                                                \
    virtual ~Concept() = default;                                                 \
    virtual Ret0 eval0(const EvalPoint<double>&) const = 0;                       \
    virtual Ret1 eval1(const EvalPoint<J1>&) const = 0;                           \
    virtual Ret2 eval2(const EvalPoint<J2>&) const = 0;                           \
  };                                                                              \
  template <class F, int MaxLevel>                                                \
  struct Model final : Concept {                                                  \
    F f;                                                                          \
    explicit Model(F fn) : f(std::move(fn)) {}                                    \
    Ret0 eval0(const EvalPoint<double>& p) const override { return f(p); }        \
    Ret1 eval1(const EvalPoint<J1>& p) const override {                           \
      if constexpr (MaxLevel >= 1) return f(p);                                   \
      else throw std::logic_error(#Name ": first derivative not supported");     \
    }                                                                             \
    Ret2 eval2(const EvalPoint<J2>& p) const override {                           \
      if constexpr (MaxLevel >= 2) return f(p);                                   \
      else throw std::logic_error(#Name ": second derivative not supported");    \
    }                                                                             \
  };                                                                              \
  std::shared_ptr<const Concept> self_;                                           \
                                                                                  \
 public:                                                                          \
  Name() = default;                                                               \
  template <class F, int MaxLevel = 2>                                            \
  static Name from(F f) {                                                         \
    Name e;                                                                       \
    e.self_ = std::make_shared<Model<F, MaxLevel>>(std::move(f));                 \
    return e;                                                                     \
  }                                                                               \
  bool valid() const { return static_cast<bool>(self_); }                         \
  template <class S>                                                              \
  auto operator()(const EvalPoint<S>& p) const {                                  \
    if (!self_) throw std::logic_error(#Name ": empty expression");               \
    if constexpr (std::is_same_v<S, double>) return self_->eval0(p);              \
    else if constexpr (std::is_same_v<S, J1>) return self_->eval1(p);             \
    else if constexpr (std::is_same_v<S, J2>) return self_->eval2(p);             \
    else static_assert(dependent_false_v<S>, "unsupported jet level");            \
  }

/// Scalar function on the manifold, evaluable with exact first and second
/// derivatives through jet-valued points.
class ScalarField {
  FOLIA_EXPR_BODY(ScalarField, double, J1, J2)
};

/// Vector field; components in the backend's coordinate/frame basis.
class VectorField {
  FOLIA_EXPR_BODY(VectorField, VecX<double>, VecX<J1>, VecX<J2>)
};

/// Endomorphism field (matrix in the backend basis).
class MatrixField {
  FOLIA_EXPR_BODY(MatrixField, MatX<double>, MatX<J1>, MatX<J2>)
};

#undef FOLIA_EXPR_BODY

/// Differential k-form: components over the sorted k-index combinations of
/// the basis coframe, in lexicographic order (see forms.hpp).
class FormField {
  struct Concept {
    virtual ~Concept() = default;
    virtual VecX<double> eval0(const EvalPoint<double>&) const = 0;
    virtual VecX<J1> eval1(const EvalPoint<J1>&) const = 0;
    virtual VecX<J2> eval2(const EvalPoint<J2>&) const = 0;
  };
  template <class F, int MaxLevel>
  struct Model final : Concept {
    F f;
    explicit Model(F fn) : f(std::move(fn)) {}
    VecX<double> eval0(const EvalPoint<double>& p) const override { return f(p); }
    VecX<J1> eval1(const EvalPoint<J1>& p) const override {
      if constexpr (MaxLevel >= 1) return f(p);
      else throw std::logic_error("FormField: first derivative not supported");
    }
    VecX<J2> eval2(const EvalPoint<J2>& p) const override {
      if constexpr (MaxLevel >= 2) return f(p);
      else throw std::logic_error("FormField: second derivative not supported");
    }
  };
  std::shared_ptr<const Concept> self_;
  int degree_ = 0;

 public:
  FormField() = default;
  template <class F, int MaxLevel = 2>
  static FormField from(int degree, F f) {
    FormField e;
    e.degree_ = degree;
    e.self_ = std::make_shared<Model<F, MaxLevel>>(std::move(f));
    return e;
  }
  bool valid() const { return static_cast<bool>(self_); }
  int degree() const { return degree_; }
  template <class S>
  VecX<S> operator()(const EvalPoint<S>& p) const {
    if (!self_) throw std::logic_error("FormField: empty expression");
    if constexpr (std::is_same_v<S, double>) return self_->eval0(p);
    else if constexpr (std::is_same_v<S, J1>) return self_->eval1(p);
    else if constexpr (std::is_same_v<S, J2>) return self_->eval2(p);
    else static_assert(dependent_false_v<S>, "unsupported jet level");
  }
};

// ---------------------------------------------------------------------------
// Combinators. These evaluate their constituents at the caller's jet level,
// so they preserve whatever depth the constituents support.

inline ScalarField constant_scalar(double c) {
  return ScalarField::from([c](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    (void)p;
    return S(c);
  });
}

inline VectorField constant_vector(const VectorXd& v) {
  return VectorField::from([v](const auto& p) {
    using S = point_scalar_t<decltype(p)>;
    VecX<S> out(v.size());
    for (int i = 0; i < v.size(); ++i) out(i) = S(v(i));
    return out;
  });
}

inline VectorField linear_combination(const std::vector<VectorField>& basis,
                                      const VectorXd& coeffs) {
  if (static_cast<int>(basis.size()) != coeffs.size())
    throw std::invalid_argument("linear_combination: size mismatch");
  return VectorField::from([basis, coeffs](const auto& p) {
    auto out = basis[0](p);
    out *= coeffs(0);
    for (std::size_t i = 1; i < basis.size(); ++i)
      out += coeffs(int(i)) * basis[i](p);
    return out;
  });
}

inline VectorField scaled_field(const ScalarField& f, const VectorField& X) {
  return VectorField::from([f, X](const auto& p) {
    auto v = X(p);
    auto s = f(p);
    for (int i = 0; i < v.size(); ++i) v(i) = s * v(i);
    return v;
  });
}

inline VectorField field_sum(const VectorField& X, const VectorField& Y) {
  return VectorField::from([X, Y](const auto& p) {
    auto v = X(p);
    v += Y(p);
    return v;
  });
}

inline VectorField matrix_apply(const MatrixField& M, const VectorField& X) {
  return VectorField::from([M, X](const auto& p) {
    auto v = X(p);
    auto mat = M(p);
    using S = std::decay_t<decltype(v(0))>;
    VecX<S> out = VecX<S>::Zero(v.size());
    for (int i = 0; i < mat.rows(); ++i)
      for (int j = 0; j < mat.cols(); ++j) out(i) += mat(i, j) * v(j);
    return out;
  });
}

inline ScalarField scalar_sum(const ScalarField& f, const ScalarField& g) {
  return ScalarField::from([f, g](const auto& p) { return f(p) + g(p); });
}

inline ScalarField scalar_product(const ScalarField& f, const ScalarField& g) {
  return ScalarField::from([f, g](const auto& p) { return f(p) * g(p); });
}

inline ScalarField scalar_scale(double c, const ScalarField& f) {
  return ScalarField::from([c, f](const auto& p) { return c * f(p); });
}

inline FormField form_linear_combination(const std::vector<FormField>& basis,
                                         const VectorXd& coeffs) {
  if (basis.empty() || static_cast<int>(basis.size()) != coeffs.size())
    throw std::invalid_argument("form_linear_combination: size mismatch");
  const int deg = basis[0].degree();
  return FormField::from(deg, [basis, coeffs](const auto& p) {
    auto out = basis[0](p);
    out *= coeffs(0);
    for (std::size_t i = 1; i < basis.size(); ++i)
      out += coeffs(int(i)) * basis[i](p);
    return out;
  });
}

inline FormField form_scaled(const ScalarField& f, const FormField& w) {
  return FormField::from(w.degree(), [f, w](const auto& p) {
    auto comps = w(p);
    auto s = f(p);
    for (int i = 0; i < comps.size(); ++i) comps(i) = s * comps(i);
    return comps;
  });
}

}  // namespace folia
