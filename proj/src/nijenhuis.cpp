#include "liehom/nijenhuis.hpp"

#include <stdexcept>

namespace liehom {

std::string to_string(TorsionMode mode) {
  switch (mode) {
    case TorsionMode::AllPairs:
      return "all-pairs";
    case TorsionMode::ComplementPairs:
      return "complement-pairs";
    case TorsionMode::AdSpecialized:
      return "ad-specialized";
  }
  return "unknown";
}

namespace {

void require_admissible(const VerdictReport& report, const std::string& what) {
  if (!report.holds) throw NotAdmissible(report, what);
}

}  // namespace

TorsionReport check_nijenhuis(const HomogeneousPair& pair, const LinearOperator& op, std::optional<TorsionMode> mode) {
  require_dim("operator on pair", pair.dim(), op.dim());
  require_admissible(check_admissible(pair, op), "operator is not admissible for the pair");

  TorsionReport report;
  report.mode = mode.value_or(pair.m() ? TorsionMode::ComplementPairs : TorsionMode::AllPairs);
  if (report.mode == TorsionMode::AdSpecialized)
    throw std::invalid_argument("ad-specialized mode needs check_nijenhuis_ad");
  if (report.mode == TorsionMode::ComplementPairs && !pair.m()) throw MissingComplement();

  const LieAlgebra& g = *pair.alg();
  const SubspaceQ& k = pair.k_space();
  std::vector<VectorQ> basis;
  if (report.mode == TorsionMode::ComplementPairs) {
    for (Index r = 0; r < pair.m()->dim(); ++r) basis.push_back(pair.m()->basis_vector(r));
  } else {
    for (Index j = 0; j < g.dim(); ++j) basis.push_back(g.basis_vector(j));
  }
  std::vector<VectorQ> images;
  images.reserve(basis.size());
  for (const VectorQ& b : basis) images.push_back(op(b));

  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      ++report.checked_pairs;
      const VectorQ inner = g.bracket(basis[i], images[j]) + g.bracket(images[i], basis[j]) -
                            op(g.bracket(basis[i], basis[j]));
      VectorQ beta = op(inner) - g.bracket(images[i], images[j]);
      if (!k.contains(beta)) {
        report.holds = false;
        report.witness = TorsionWitness{basis[i], basis[j], std::move(beta)};
        return report;
      }
    }
  return report;
}

TorsionReport check_nijenhuis_ad(const HomogeneousPair& pair, const VectorQ& d) {
  require_admissible(check_ad_admissible(pair, d), "ad_d is not admissible for the pair");
  const LieAlgebra& g = *pair.alg();
  const SubspaceQ& k = pair.k_space();
  const MatrixQ ad_d = g.ad_matrix(d);
  TorsionReport report;
  report.mode = TorsionMode::AdSpecialized;
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = i + 1; j < g.dim(); ++j) {
      ++report.checked_pairs;
      VectorQ value = g.bracket(VectorQ(ad_d.col(i)), VectorQ(ad_d.col(j)));
      if (!k.contains(value)) {
        report.holds = false;
        report.witness = TorsionWitness{g.basis_vector(i), g.basis_vector(j), std::move(value)};
        return report;
      }
    }
  return report;
}

bool corollary_oneof_property(const HomogeneousPair& pair, const LinearOperator& op, const VectorQ& z,
                              const VectorQ& w) {
  require_admissible(check_admissible(pair, op), "operator is not admissible for the pair");
  if (!pair.k().contains(z)) throw std::invalid_argument("z must lie in k");
  return pair.k().contains(torsion_form(op, z, w));
}

}  // namespace liehom
