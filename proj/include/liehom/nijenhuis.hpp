#pragma once

#include <optional>
#include <string>

#include "liehom/operators.hpp"

namespace liehom {

/// beta(v, w) = I[v,Iw] + I[Iv,w] - [Iv,Iw] - I^2[v,w], evaluated for any
/// scalar type the bracket supports (exact for the verdicts, double for the
/// numerical harness).
template <class S, class T>
Vector<T> torsion_form(const LieAlgebra& alg, const Matrix<S>& op, const Vector<T>& v, const Vector<T>& w) {
  const Vector<T> iv = apply(op, v);
  const Vector<T> iw = apply(op, w);
  const Vector<T> inner = alg.bracket(v, iw) + alg.bracket(iv, w) - apply(op, alg.bracket(v, w));
  return apply(op, inner) - alg.bracket(iv, iw);
}

template <class T>
Vector<T> torsion_form(const LinearOperator& op, const Vector<T>& v, const Vector<T>& w) {
  return torsion_form(*op.alg(), op.matrix(), v, w);
}

enum class TorsionMode { AllPairs, ComplementPairs, AdSpecialized };

std::string to_string(TorsionMode mode);

struct TorsionWitness {
  VectorQ v;
  VectorQ w;
  /// beta(v, w), or [[d,v],[d,w]] in the ad-specialized mode; not in k.
  VectorQ value;
};

struct TorsionReport {
  bool holds = true;
  Index checked_pairs = 0;
  TorsionMode mode = TorsionMode::AllPairs;
  std::optional<TorsionWitness> witness;
};

/// Decides whether the bundle map induced by an admissible operator is
/// Nijenhuis: beta(b_i, b_j) in k over basis pairs i < j of g, or of m when the
/// pair carries a complement. Pairs are scanned in lexicographic order and the
/// first failing pair is the witness. Throws NotAdmissible when the operator is
/// not admissible for the pair.
TorsionReport check_nijenhuis(const HomogeneousPair& pair, const LinearOperator& op,
                              std::optional<TorsionMode> mode = std::nullopt);

/// Specialization for I = ad_d: [[d,b_i],[d,b_j]] in k for all basis pairs.
TorsionReport check_nijenhuis_ad(const HomogeneousPair& pair, const VectorQ& d);

/// beta(z, w) in k for z in k; always true for admissible operators.
bool corollary_oneof_property(const HomogeneousPair& pair, const LinearOperator& op, const VectorQ& z,
                              const VectorQ& w);

}  // namespace liehom
