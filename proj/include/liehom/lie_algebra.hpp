#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liehom/error.hpp"
#include "liehom/linalg.hpp"

namespace liehom {

class InvalidStructureConstants : public Error {
 public:
  explicit InvalidStructureConstants(const std::string& what) : Error("InvalidStructureConstants", what) {}
};

class NotIndependent : public Error {
 public:
  explicit NotIndependent(const std::string& what) : Error("NotIndependent", what) {}
};

/// A commutator of two generators left the real span of the generators.
class NotClosed : public Error {
 public:
  NotClosed(Index a, Index b, MatrixQi commutator, const std::string& what)
      : Error("NotClosed", what), first(a), second(b), commutator(std::move(commutator)) {}
  Index first;
  Index second;
  MatrixQi commutator;
};

class NonRealStructureConstants : public Error {
 public:
  NonRealStructureConstants(Index a, Index b, const std::string& what)
      : Error("NonRealStructureConstants", what), first(a), second(b) {}
  Index first;
  Index second;
};

class NotClosedUnderBracket : public Error {
 public:
  NotClosedUnderBracket(VectorQ x, VectorQ y, VectorQ bracket, const std::string& what)
      : Error("NotClosedUnderBracket", what), x(std::move(x)), y(std::move(y)), bracket(std::move(bracket)) {}
  VectorQ x;
  VectorQ y;
  VectorQ bracket;
};

/// Dense structure tensor: [b_i, b_j] = sum_k c(i, j, k) b_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(Index n) : n_(n), c_(static_cast<std::size_t>(n * n * n), Rational(0)) {}

  [[nodiscard]] Index dim() const { return n_; }
  Rational& operator()(Index i, Index j, Index k) { return c_[flat(i, j, k)]; }
  const Rational& operator()(Index i, Index j, Index k) const { return c_[flat(i, j, k)]; }

  /// Sets [b_i, b_j] = v and [b_j, b_i] = -v.
  void set_bracket(Index i, Index j, const VectorQ& v);

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  [[nodiscard]] std::size_t flat(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  Index n_ = 0;
  std::vector<Rational> c_;
};

/// Generator matrices a Lie algebra was built from; entries in Q(i).
struct MatrixRealization {
  Index size = 0;
  std::vector<MatrixQi> generators;

  [[nodiscard]] bool is_real() const;
  /// Real-linear combination sum_k v_k * generators[k].
  [[nodiscard]] MatrixQi element(const VectorQ& v) const;
  /// Coordinates of a matrix in the generator basis, if it lies in the real span.
  [[nodiscard]] std::optional<VectorQ> coordinates(const MatrixQi& m) const;
};

/// Finite-dimensional real Lie algebra over Q given by structure constants in a
/// fixed labelled basis. Antisymmetry and the Jacobi identity are verified on
/// construction.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, std::vector<std::string> labels, StructureConstants c,
             std::optional<MatrixRealization> realization = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Index dim() const { return static_cast<Index>(labels_.size()); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::optional<Index> label_index(const std::string& label) const;
  [[nodiscard]] const StructureConstants& structure_constants() const { return c_; }
  [[nodiscard]] const std::optional<MatrixRealization>& realization() const { return realization_; }

  /// [v, w] = ad_v w, for rational, Gaussian-rational or floating coordinates.
  template <class S>
  Vector<S> bracket(const Vector<S>& v, const Vector<S>& w) const {
    require_dim("bracket", dim(), v.size());
    require_dim("bracket", dim(), w.size());
    Vector<S> out = Vector<S>::Constant(dim(), S(0));
    for (Index i = 0; i < dim(); ++i) {
      if (is_zero_scalar(v[i])) continue;
      for (const Term& t : terms_[static_cast<std::size_t>(i)]) {
        if (is_zero_scalar(w[t.j])) continue;
        out[t.k] += scaled(v[i] * w[t.j], t);
      }
    }
    return out;
  }

  /// Matrix of w -> [d, w].
  template <class S>
  Matrix<S> ad_matrix(const Vector<S>& d) const {
    require_dim("ad", dim(), d.size());
    Matrix<S> out = Matrix<S>::Constant(dim(), dim(), S(0));
    for (Index i = 0; i < dim(); ++i) {
      if (is_zero_scalar(d[i])) continue;
      for (const Term& t : terms_[static_cast<std::size_t>(i)]) out(t.k, t.j) += scaled(d[i], t);
    }
    return out;
  }

  [[nodiscard]] VectorQ basis_vector(Index k) const { return unit_vector<Rational>(dim(), k); }

 private:
  struct Term {
    Index j;
    Index k;
    Rational c;
    double c_float;
  };

  static bool is_zero_scalar(const Rational& x) { return x.is_zero(); }
  static bool is_zero_scalar(const GaussianRational& x) { return x.is_zero(); }
  static bool is_zero_scalar(double x) { return x == 0.0; }
  static Rational scaled(const Rational& x, const Term& t) { return x * t.c; }
  static GaussianRational scaled(const GaussianRational& x, const Term& t) { return x * t.c; }
  static double scaled(double x, const Term& t) { return x * t.c_float; }

  void validate() const;

  std::string name_;
  std::vector<std::string> labels_;
  StructureConstants c_;
  std::optional<MatrixRealization> realization_;
  // terms_[i] lists the nonzero c(i, j, k).
  std::vector<std::vector<Term>> terms_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Builds a real Lie algebra from matrix generators by extracting structure
/// constants from their commutators. Generators must be linearly independent
/// over R and their real span closed under the commutator.
LieAlgebraPtr from_matrix_generators(std::string name, Index matrix_size, std::vector<std::string> labels,
                                     const std::vector<MatrixQi>& generators);

/// A subalgebra k of g, stored as a canonical subspace of g's coordinates.
class Subalgebra {
 public:
  Subalgebra(LieAlgebraPtr parent, SubspaceQ space);

  [[nodiscard]] const LieAlgebraPtr& parent() const { return parent_; }
  [[nodiscard]] const SubspaceQ& space() const { return space_; }
  [[nodiscard]] Index dim() const { return space_.dim(); }
  [[nodiscard]] bool contains(const VectorQ& v) const { return space_.contains(v); }

 private:
  LieAlgebraPtr parent_;
  SubspaceQ space_;
};

/// Echelonizes the span of `vectors` and certifies bracket closure.
Subalgebra make_subalgebra(const LieAlgebraPtr& alg, const std::vector<VectorQ>& vectors);

/// g^C: the same structure constants read over Q(i).
class ComplexifiedAlgebra {
 public:
  explicit ComplexifiedAlgebra(LieAlgebraPtr real_form) : real_form_(std::move(real_form)) {}
  [[nodiscard]] const LieAlgebraPtr& real_form() const { return real_form_; }
  [[nodiscard]] Index dim() const { return real_form_->dim(); }
  [[nodiscard]] VectorQi bracket(const VectorQi& v, const VectorQi& w) const { return real_form_->bracket(v, w); }
  [[nodiscard]] MatrixQi ad_matrix(const VectorQi& d) const { return real_form_->ad_matrix(d); }

 private:
  LieAlgebraPtr real_form_;
};

inline ComplexifiedAlgebra complexify(const LieAlgebraPtr& alg) { return ComplexifiedAlgebra(alg); }

/// ab - ba.
MatrixQi commutator(const MatrixQi& a, const MatrixQi& b);

/// "e1 - 2*e2" style rendering of a coordinate vector in basis labels.
std::string format_combination(const std::vector<std::string>& labels, const VectorQ& v);
std::string format_combination(const std::vector<std::string>& labels, const VectorQi& v);

}  // namespace liehom
