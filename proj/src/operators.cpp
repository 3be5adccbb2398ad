#include "liehom/operators.hpp"

#include <set>

namespace liehom {

LinearOperator::LinearOperator(LieAlgebraPtr alg, MatrixQ matrix) : alg_(std::move(alg)), matrix_(std::move(matrix)) {
  require_dim("operator rows", alg_->dim(), matrix_.rows());
  require_dim("operator cols", alg_->dim(), matrix_.cols());
}

LinearOperator LinearOperator::combine(const Rational& a, const LinearOperator& other, const Rational& b) const {
  require_dim("operator combination", dim(), other.dim());
  MatrixQ m(dim(), dim());
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = a * matrix_.data()[i] + b * other.matrix_.data()[i];
  return {alg_, std::move(m)};
}

LinearOperator LinearOperator::compose(const LinearOperator& other) const {
  return {alg_, multiply(matrix_, other.matrix_)};
}

LinearOperator identity_operator(const LieAlgebraPtr& alg) {
  MatrixQ m = MatrixQ::Constant(alg->dim(), alg->dim(), Rational(0));
  for (Index i = 0; i < alg->dim(); ++i) m(i, i) = Rational(1);
  return {alg, std::move(m)};
}

LinearOperator zero_operator(const LieAlgebraPtr& alg) {
  return {alg, MatrixQ::Constant(alg->dim(), alg->dim(), Rational(0))};
}

LinearOperator operator_from_rules(const LieAlgebraPtr& alg,
                                   const std::vector<std::pair<std::string, VectorQ>>& rules) {
  MatrixQ m = MatrixQ::Constant(alg->dim(), alg->dim(), Rational(0));
  std::set<Index> seen;
  for (const auto& [label, image] : rules) {
    const std::optional<Index> j = alg->label_index(label);
    if (!j) throw RuleIncomplete("rule for unknown basis element '" + label + "' of " + alg->name());
    if (!seen.insert(*j).second) throw RuleIncomplete("basis element '" + label + "' has more than one rule");
    require_dim("rule image", alg->dim(), image.size());
    m.col(*j) = image;
  }
  for (Index j = 0; j < alg->dim(); ++j)
    if (!seen.contains(j))
      throw RuleIncomplete("no rule for basis element '" + alg->labels()[static_cast<std::size_t>(j)] + "'");
  return {alg, std::move(m)};
}

LinearOperator operator_ad(const LieAlgebraPtr& alg, const VectorQ& d) { return {alg, alg->ad_matrix(d)}; }

namespace {

template <class F>
LinearOperator multiplication_operator(const LieAlgebraPtr& alg, F&& map, const char* what) {
  const auto& real = alg->realization();
  if (!real) throw ImageOutsideAlgebra(0, std::string(what) + " needs an algebra built from matrix generators");
  MatrixQ m(alg->dim(), alg->dim());
  for (Index j = 0; j < alg->dim(); ++j) {
    const MatrixQi image = map(real->generators[static_cast<std::size_t>(j)]);
    const std::optional<VectorQ> coords = real->coordinates(image);
    if (!coords)
      throw ImageOutsideAlgebra(j, std::string(what) + " maps basis element '" +
                                       alg->labels()[static_cast<std::size_t>(j)] + "' outside " + alg->name());
    m.col(j) = *coords;
  }
  return {alg, std::move(m)};
}

void require_square(const LieAlgebraPtr& alg, const MatrixQi& a) {
  const auto& real = alg->realization();
  if (!real) return;
  require_dim("multiplier rows", real->size, a.rows());
  require_dim("multiplier cols", real->size, a.cols());
}

}  // namespace

LinearOperator operator_left_mult(const LieAlgebraPtr& alg, const MatrixQi& a) {
  require_square(alg, a);
  return multiplication_operator(alg, [&](const MatrixQi& x) { return multiply(a, x); }, "left multiplication");
}

LinearOperator operator_right_mult(const LieAlgebraPtr& alg, const MatrixQi& b) {
  require_square(alg, b);
  return multiplication_operator(alg, [&](const MatrixQi& x) { return multiply(x, b); }, "right multiplication");
}

LinearOperator operator_sandwich(const LieAlgebraPtr& alg, const MatrixQi& a, const MatrixQi& b) {
  require_square(alg, a);
  require_square(alg, b);
  return multiplication_operator(
      alg, [&](const MatrixQi& x) { return multiply(multiply(a, x), b); }, "sandwich multiplication");
}

HomogeneousPair::HomogeneousPair(Subalgebra k, std::optional<SubspaceQ> m, bool connected,
                                 std::vector<MatrixQ> component_reps)
    : k_(std::move(k)), m_(std::move(m)), connected_(connected), component_reps_(std::move(component_reps)) {
  const LieAlgebra& g = *k_.parent();
  const Index n = g.dim();
  if (m_) {
    require_dim("complement", n, m_->ambient_dim());
    if (k_.dim() + m_->dim() != n || subspace_intersection(k_.space(), *m_).dim() != 0)
      throw InvalidPair("m is not a complement of k in " + g.name());
  }
  for (std::size_t r = 0; r < component_reps_.size(); ++r) {
    const MatrixQ& a = component_reps_[r];
    require_dim("component representative rows", n, a.rows());
    require_dim("component representative cols", n, a.cols());
    const std::string which = "component representative #" + std::to_string(r + 1);
    if (rank(a) != n) throw InvalidPair(which + " is not invertible");
    for (Index i = 0; i < k_.dim(); ++i)
      if (!k_.contains(apply(a, k_.space().basis_vector(i)))) throw InvalidPair(which + " does not preserve k");
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const VectorQ lhs = apply(a, g.bracket(g.basis_vector(i), g.basis_vector(j)));
        const VectorQ rhs = g.bracket(VectorQ(a.col(i)), VectorQ(a.col(j)));
        if (lhs != rhs) throw InvalidPair(which + " is not a Lie algebra automorphism");
      }
  }
}

namespace {

bool fail(VerdictReport& report, AdmissibilityWitness w) {
  report.holds = false;
  report.witness = std::move(w);
  return false;
}

// Conditions (a) and (b) of the infinitesimal admissibility test, plus (c) over the
// supplied component representatives.
bool admissible_clauses(const HomogeneousPair& pair, const LinearOperator& op, VerdictReport& report) {
  const LieAlgebra& g = *pair.alg();
  const SubspaceQ& k = pair.k_space();
  const Index n = g.dim();

  report.clauses.emplace_back(clause::kPreservesK);
  for (Index r = 0; r < k.dim(); ++r) {
    const VectorQ z = k.basis_vector(r);
    VectorQ image = op(z);
    if (!k.contains(image)) return fail(report, {clause::kPreservesK, z, std::nullopt, r, std::move(image)});
  }

  report.clauses.emplace_back(clause::kDerivation);
  std::vector<VectorQ> images;
  images.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) images.push_back(op(g.basis_vector(j)));
  for (Index r = 0; r < k.dim(); ++r) {
    const VectorQ z = k.basis_vector(r);
    const MatrixQ ad_z = g.ad_matrix(z);
    for (Index j = 0; j < n; ++j) {
      VectorQ value = op(VectorQ(ad_z.col(j))) - g.bracket(z, images[static_cast<std::size_t>(j)]);
      if (!k.contains(value)) return fail(report, {clause::kDerivation, z, std::nullopt, j, std::move(value)});
    }
  }

  if (!pair.component_reps().empty()) {
    report.clauses.emplace_back(clause::kComponents);
    for (std::size_t c = 0; c < pair.component_reps().size(); ++c) {
      const MatrixQ& a = pair.component_reps()[c];
      const MatrixQ comm = multiply(a, op.matrix()) - multiply(op.matrix(), a);
      for (Index j = 0; j < n; ++j) {
        VectorQ value = comm.col(j);
        if (!k.contains(value)) return fail(report, {clause::kComponents, std::nullopt, c, j, std::move(value)});
      }
    }
  }
  return true;
}

void require_same_algebra(const HomogeneousPair& pair, const LinearOperator& op) {
  require_dim("operator on pair", pair.dim(), op.dim());
}

AdmissibilityScope scope_of(const HomogeneousPair& pair) {
  if (pair.connected() || !pair.component_reps().empty()) return AdmissibilityScope::Full;
  return AdmissibilityScope::IdentityComponent;
}

}  // namespace

VerdictReport check_admissible(const HomogeneousPair& pair, const LinearOperator& op) {
  require_same_algebra(pair, op);
  VerdictReport report;
  report.scope = scope_of(pair);
  admissible_clauses(pair, op, report);
  return report;
}

VerdictReport check_split_admissible(const HomogeneousPair& pair, const LinearOperator& op) {
  require_same_algebra(pair, op);
  if (!pair.m()) throw MissingComplement();
  VerdictReport report;
  report.scope = scope_of(pair);
  const SubspaceQ& k = pair.k_space();
  const SubspaceQ& m = *pair.m();

  report.clauses.emplace_back(clause::kKernel);
  for (Index r = 0; r < k.dim(); ++r) {
    const VectorQ z = k.basis_vector(r);
    VectorQ image = op(z);
    if (!is_zero_vector(image)) {
      fail(report, {clause::kKernel, z, std::nullopt, r, std::move(image)});
      return report;
    }
  }
  report.clauses.emplace_back(clause::kComplementInvariant);
  for (Index r = 0; r < m.dim(); ++r) {
    VectorQ image = op(m.basis_vector(r));
    if (!m.contains(image)) {
      fail(report, {clause::kComplementInvariant, std::nullopt, std::nullopt, r, std::move(image)});
      return report;
    }
  }
  admissible_clauses(pair, op, report);
  return report;
}

VerdictReport check_ad_admissible(const HomogeneousPair& pair, const VectorQ& d) {
  const LieAlgebra& g = *pair.alg();
  const SubspaceQ& k = pair.k_space();
  require_dim("ad element", g.dim(), d.size());
  VerdictReport report;
  report.scope = scope_of(pair);
  report.clauses = {clause::kAdCommutator, clause::kAdIdeal};
  for (Index r = 0; r < k.dim(); ++r) {
    const VectorQ z = k.basis_vector(r);
    VectorQ zd = g.bracket(z, d);
    if (!k.contains(zd)) {
      fail(report, {clause::kAdCommutator, z, std::nullopt, r, std::move(zd)});
      return report;
    }
    for (Index j = 0; j < g.dim(); ++j) {
      VectorQ value = g.bracket(g.basis_vector(j), zd);
      if (!k.contains(value)) {
        fail(report, {clause::kAdIdeal, z, std::nullopt, j, std::move(value)});
        return report;
      }
    }
  }
  return report;
}

SubspaceQ ad_admissible_space(const HomogeneousPair& pair) {
  const LieAlgebra& g = *pair.alg();
  const SubspaceQ& k = pair.k_space();
  const Index n = g.dim();
  // Both conditions are linear in d: stack the residuals modulo k for every unit d.
  const Index blocks = k.dim() * (1 + n);
  MatrixQ system = MatrixQ::Constant(blocks * n, n, Rational(0));
  for (Index l = 0; l < n; ++l) {
    const VectorQ d = g.basis_vector(l);
    Index row = 0;
    for (Index r = 0; r < k.dim(); ++r) {
      const VectorQ zd = g.bracket(k.basis_vector(r), d);
      system.block(row, l, n, 1) = k.reduce(zd);
      row += n;
      for (Index j = 0; j < n; ++j) {
        system.block(row, l, n, 1) = k.reduce(g.bracket(g.basis_vector(j), zd));
        row += n;
      }
    }
  }
  return kernel_basis(system);
}

std::string to_string(AdmissibilityScope scope) {
  return scope == AdmissibilityScope::Full ? "full" : "identity-component";
}

}  // namespace liehom
