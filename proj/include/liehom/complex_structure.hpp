#pragma once

#include <optional>
#include <utility>

#include "liehom/nijenhuis.hpp"

namespace liehom {

class NotACAdmissible : public Error {
 public:
  NotACAdmissible(Index basis_index, VectorQ value, const std::string& what)
      : Error("NotACAdmissible", what), basis_index(basis_index), value(std::move(value)) {}
  Index basis_index;
  VectorQ value;
};

class NotSplitACAdmissible : public Error {
 public:
  explicit NotSplitACAdmissible(const std::string& what) : Error("NotSplitACAdmissible", what) {}
};

/// Admissible J with (J^2 + 1) b_j in k for every basis vector. Throws
/// NotAdmissible when J is not admissible in the first place.
bool check_ac_admissible(const HomogeneousPair& pair, const LinearOperator& j);

struct ZSpaces {
  SubspaceQi plus;
  SubspaceQi minus;
};

/// Z+- = {v in g^C : (J -+ i) v in k^C}, as exact kernels of the stacked
/// systems [(J -+ i) | -K^T] projected onto the v block.
ZSpaces compute_z_spaces(const HomogeneousPair& pair, const LinearOperator& j);

/// Canonical representatives of Z modulo k^C (coordinates along the pivots of k^C are zero).
SubspaceQi modulo_k(const HomogeneousPair& pair, const SubspaceQi& z);

/// First pair of basis vectors of z whose bracket leaves z.
struct ClosureWitness {
  VectorQi v;
  VectorQi w;
  VectorQi bracket;
};
std::optional<ClosureWitness> closure_failure(const ComplexifiedAlgebra& alg, const SubspaceQi& z);

struct SplitDiagnostics {
  bool sum_is_all = false;
  bool intersection_is_kc = false;
  bool eigenspace_decomposition_holds = false;
  SubspaceQi eig_plus;
  SubspaceQi eig_minus;
};

/// Checks g^C = Z+ + Z-, Z+ cap Z- = k^C and Z+- = k^C (+) Eig+-i(J^C on m^C).
/// Requires k in ker J, J m in m and J^2 = -1 on m.
SplitDiagnostics split_diagnostics(const HomogeneousPair& pair, const LinearOperator& j);

struct IntegrabilityReport {
  bool ac_admissible = false;
  SubspaceQi z_plus;
  SubspaceQi z_minus;
  SubspaceQi z_plus_mod_k;
  bool z_plus_closed = false;
  bool z_minus_closed = false;
  std::optional<ClosureWitness> witness;
  TorsionReport torsion;
  bool nijenhuis_verdict = false;
  /// Closure of Z+ and the torsion criterion must give the same answer.
  bool verdicts_agree = false;
  std::optional<SplitDiagnostics> split;

  [[nodiscard]] bool integrable() const { return z_plus_closed; }
};

/// Throws NotACAdmissible when J is admissible but (J^2 + 1) leaves k.
IntegrabilityReport check_integrable(const HomogeneousPair& pair, const LinearOperator& j);

}  // namespace liehom
