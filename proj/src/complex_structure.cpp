#include "liehom/complex_structure.hpp"

namespace liehom {

namespace {

// First basis vector b_j with (J^2 + 1) b_j outside k.
std::optional<std::pair<Index, VectorQ>> ac_failure(const HomogeneousPair& pair, const LinearOperator& j) {
  const LieAlgebra& g = *pair.alg();
  for (Index c = 0; c < g.dim(); ++c) {
    const VectorQ b = g.basis_vector(c);
    VectorQ value = j(j(b)) + b;
    if (!pair.k().contains(value)) return std::make_pair(c, std::move(value));
  }
  return std::nullopt;
}

MatrixQi shifted(const LinearOperator& j, const GaussianRational& lambda) {
  MatrixQi m = to_gaussian(j.matrix());
  for (Index i = 0; i < m.rows(); ++i) m(i, i) -= lambda;
  return m;
}

SubspaceQi preimage_of_kc(const HomogeneousPair& pair, const LinearOperator& j, const GaussianRational& lambda) {
  const Index n = pair.dim();
  const SubspaceQ& k = pair.k_space();
  MatrixQi system(n, n + k.dim());
  system << shifted(j, lambda), -to_gaussian(k.basis()).transpose();
  const MatrixQi kernel = nullspace_rows(system);
  return SubspaceQi::span(n, MatrixQi(kernel.leftCols(n)));
}

SubspaceQi eigenspace(const LinearOperator& j, const GaussianRational& lambda) {
  return kernel_basis(shifted(j, lambda));
}

}  // namespace

bool check_ac_admissible(const HomogeneousPair& pair, const LinearOperator& j) {
  const VerdictReport admissible = check_admissible(pair, j);
  if (!admissible.holds) throw NotAdmissible(admissible, "operator is not admissible for the pair");
  return !ac_failure(pair, j).has_value();
}

ZSpaces compute_z_spaces(const HomogeneousPair& pair, const LinearOperator& j) {
  require_dim("operator on pair", pair.dim(), j.dim());
  return {preimage_of_kc(pair, j, GaussianRational::i()), preimage_of_kc(pair, j, -GaussianRational::i())};
}

SubspaceQi modulo_k(const HomogeneousPair& pair, const SubspaceQi& z) {
  const SubspaceQi kc = complexify_subspace(pair.k_space());
  std::vector<VectorQi> reps;
  for (Index r = 0; r < z.dim(); ++r) reps.push_back(kc.reduce(z.basis_vector(r)));
  return SubspaceQi::span(z.ambient_dim(), reps);
}

std::optional<ClosureWitness> closure_failure(const ComplexifiedAlgebra& alg, const SubspaceQi& z) {
  for (Index a = 0; a < z.dim(); ++a)
    for (Index b = a + 1; b < z.dim(); ++b) {
      VectorQi v = z.basis_vector(a);
      VectorQi w = z.basis_vector(b);
      VectorQi vw = alg.bracket(v, w);
      if (!z.contains(vw)) return ClosureWitness{std::move(v), std::move(w), std::move(vw)};
    }
  return std::nullopt;
}

SplitDiagnostics split_diagnostics(const HomogeneousPair& pair, const LinearOperator& j) {
  require_dim("operator on pair", pair.dim(), j.dim());
  if (!pair.m()) throw MissingComplement();
  const SubspaceQ& k = pair.k_space();
  const SubspaceQ& m = *pair.m();
  for (Index r = 0; r < k.dim(); ++r)
    if (!is_zero_vector(j(k.basis_vector(r)))) throw NotSplitACAdmissible("k is not contained in ker J");
  for (Index r = 0; r < m.dim(); ++r) {
    const VectorQ x = m.basis_vector(r);
    const VectorQ jx = j(x);
    if (!m.contains(jx)) throw NotSplitACAdmissible("J does not map m into m");
    if (j(jx) != -x) throw NotSplitACAdmissible("J^2 is not -1 on m");
  }
  if (!check_admissible(pair, j).holds) throw NotSplitACAdmissible("J is not admissible for the pair");

  const Index n = pair.dim();
  const ZSpaces z = compute_z_spaces(pair, j);
  const SubspaceQi kc = complexify_subspace(k);
  const SubspaceQi mc = complexify_subspace(m);

  SplitDiagnostics diag;
  diag.sum_is_all = subspace_sum(z.plus, z.minus) == SubspaceQi::full(n);
  diag.intersection_is_kc = subspace_intersection(z.plus, z.minus) == kc;
  diag.eig_plus = subspace_intersection(eigenspace(j, GaussianRational::i()), mc);
  diag.eig_minus = subspace_intersection(eigenspace(j, -GaussianRational::i()), mc);
  auto direct_sum_matches = [&](const SubspaceQi& zs, const SubspaceQi& eig) {
    return subspace_intersection(kc, eig).dim() == 0 && subspace_sum(kc, eig) == zs;
  };
  diag.eigenspace_decomposition_holds =
      direct_sum_matches(z.plus, diag.eig_plus) && direct_sum_matches(z.minus, diag.eig_minus);
  return diag;
}

IntegrabilityReport check_integrable(const HomogeneousPair& pair, const LinearOperator& j) {
  IntegrabilityReport report;
  report.ac_admissible = check_ac_admissible(pair, j);
  if (!report.ac_admissible) {
    auto [index, value] = *ac_failure(pair, j);
    throw NotACAdmissible(index, std::move(value),
                          "(J^2 + 1) maps basis element '" + pair.alg()->labels()[static_cast<std::size_t>(index)] +
                              "' outside k");
  }
  const ComplexifiedAlgebra gc = complexify(pair.alg());
  ZSpaces z = compute_z_spaces(pair, j);
  report.z_plus = std::move(z.plus);
  report.z_minus = std::move(z.minus);
  report.z_plus_mod_k = modulo_k(pair, report.z_plus);
  report.witness = closure_failure(gc, report.z_plus);
  report.z_plus_closed = !report.witness.has_value();
  report.z_minus_closed = !closure_failure(gc, report.z_minus).has_value();
  report.torsion = check_nijenhuis(pair, j);
  report.nijenhuis_verdict = report.torsion.holds;
  report.verdicts_agree = report.nijenhuis_verdict == report.z_plus_closed;
  if (pair.m()) {
    try {
      report.split = split_diagnostics(pair, j);
    } catch (const NotSplitACAdmissible&) {
      report.split.reset();
    }
  }
  return report;
}

}  // namespace liehom
