#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liehom/lie_algebra.hpp"

namespace liehom {

class RuleIncomplete : public Error {
 public:
  explicit RuleIncomplete(const std::string& what) : Error("RuleIncomplete", what) {}
};

class ImageOutsideAlgebra : public Error {
 public:
  ImageOutsideAlgebra(Index basis_index, const std::string& what)
      : Error("ImageOutsideAlgebra", what), basis_index(basis_index) {}
  Index basis_index;
};

class InvalidPair : public Error {
 public:
  explicit InvalidPair(const std::string& what) : Error("InvalidPair", what) {}
};

class MissingComplement : public Error {
 public:
  MissingComplement() : Error("MissingComplement", "the homogeneous pair has no complement m") {}
};

/// Matrix of I in the basis of g; column j holds I(b_j).
class LinearOperator {
 public:
  LinearOperator(LieAlgebraPtr alg, MatrixQ matrix);

  [[nodiscard]] const LieAlgebraPtr& alg() const { return alg_; }
  [[nodiscard]] const MatrixQ& matrix() const { return matrix_; }
  [[nodiscard]] Index dim() const { return matrix_.rows(); }

  template <class S>
  Vector<S> operator()(const Vector<S>& v) const {
    return apply(matrix_, v);
  }

  /// a*I + b*other, for the linearity properties of the admissible set.
  [[nodiscard]] LinearOperator combine(const Rational& a, const LinearOperator& other, const Rational& b) const;
  [[nodiscard]] LinearOperator compose(const LinearOperator& other) const;

  friend bool operator==(const LinearOperator& a, const LinearOperator& b) { return a.matrix_ == b.matrix_; }

 private:
  LieAlgebraPtr alg_;
  MatrixQ matrix_;
};

LinearOperator identity_operator(const LieAlgebraPtr& alg);
LinearOperator zero_operator(const LieAlgebraPtr& alg);

/// Every basis label must appear exactly once as a rule `label -> image`.
LinearOperator operator_from_rules(const LieAlgebraPtr& alg, const std::vector<std::pair<std::string, VectorQ>>& rules);
LinearOperator operator_ad(const LieAlgebraPtr& alg, const VectorQ& d);
/// X -> A X, X -> X B and X -> A X B on an algebra built from matrix generators.
LinearOperator operator_left_mult(const LieAlgebraPtr& alg, const MatrixQi& a);
LinearOperator operator_right_mult(const LieAlgebraPtr& alg, const MatrixQi& b);
LinearOperator operator_sandwich(const LieAlgebraPtr& alg, const MatrixQi& a, const MatrixQi& b);

/// (g, k) with optional complement m and, for non-connected K, the matrices
/// of Ad_k for representatives k of the non-identity components.
class HomogeneousPair {
 public:
  HomogeneousPair(Subalgebra k, std::optional<SubspaceQ> m = std::nullopt, bool connected = true,
                  std::vector<MatrixQ> component_reps = {});

  [[nodiscard]] const LieAlgebraPtr& alg() const { return k_.parent(); }
  [[nodiscard]] Index dim() const { return k_.parent()->dim(); }
  [[nodiscard]] const Subalgebra& k() const { return k_; }
  [[nodiscard]] const SubspaceQ& k_space() const { return k_.space(); }
  [[nodiscard]] const std::optional<SubspaceQ>& m() const { return m_; }
  [[nodiscard]] bool connected() const { return connected_; }
  [[nodiscard]] const std::vector<MatrixQ>& component_reps() const { return component_reps_; }

 private:
  Subalgebra k_;
  std::optional<SubspaceQ> m_;
  bool connected_ = true;
  std::vector<MatrixQ> component_reps_;
};

/// Which part of K a verdict speaks for.
enum class AdmissibilityScope { Full, IdentityComponent };

struct AdmissibilityWitness {
  std::string clause;
  /// Element z of k involved (derivation clause) or the k basis row (preservation clause).
  std::optional<VectorQ> z;
  std::optional<std::size_t> component;
  Index basis_index = 0;
  /// The vector that fails to lie in k (or m).
  VectorQ value;
};

struct VerdictReport {
  bool holds = true;
  AdmissibilityScope scope = AdmissibilityScope::Full;
  std::vector<std::string> clauses;
  std::optional<AdmissibilityWitness> witness;
};

/// Clause names used in reports.
namespace clause {
inline constexpr const char* kPreservesK = "I(k) in k";
inline constexpr const char* kDerivation = "I[z,b] - [z,Ib] in k";
inline constexpr const char* kComponents = "(A I - I A) b in k";
inline constexpr const char* kKernel = "k in ker I";
inline constexpr const char* kComplementInvariant = "I(m) in m";
inline constexpr const char* kAdCommutator = "[z,d] in k";
inline constexpr const char* kAdIdeal = "[v,[z,d]] in k";
}  // namespace clause

class NotAdmissible : public Error {
 public:
  NotAdmissible(VerdictReport report, const std::string& what)
      : Error("NotAdmissible", what), report(std::move(report)) {}
  VerdictReport report;
};

VerdictReport check_admissible(const HomogeneousPair& pair, const LinearOperator& op);
VerdictReport check_split_admissible(const HomogeneousPair& pair, const LinearOperator& op);

/// Admissibility of ad_d through [z,d] in k and [v,[z,d]] in k.
VerdictReport check_ad_admissible(const HomogeneousPair& pair, const VectorQ& d);
/// All d for which ad_d is admissible.
SubspaceQ ad_admissible_space(const HomogeneousPair& pair);

std::string to_string(AdmissibilityScope scope);

}  // namespace liehom
