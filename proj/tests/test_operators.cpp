#include <doctest.h>

#include "support.hpp"

using namespace liehom;
using namespace liehom::testing;

namespace {

// Ad of diag(-1, 1, 1), which fixes the pole and lies outside SO(3).
MatrixQ reflection_rep() {
  MatrixQ a = MatrixQ::Constant(3, 3, Rational(0));
  a(0, 0) = -1;
  a(1, 1) = -1;
  a(2, 2) = 1;
  return a;
}

// Trace operator X -> (tr X / 3) 1 on gl(3) with k = sl(3).
HomogeneousPair sl3_pair(const LieAlgebraPtr& g) {
  std::vector<VectorQ> k;
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b)
      if (a != b) k.push_back(label_vector(g, gl_label(a, b)));
  k.push_back(label_vector(g, "E11") - label_vector(g, "E22"));
  k.push_back(label_vector(g, "E22") - label_vector(g, "E33"));
  return HomogeneousPair(make_subalgebra(g, k));
}

LinearOperator trace_operator(const LieAlgebraPtr& g) {
  const MatrixQi third = MatrixQi::Identity(3, 3) * GaussianRational(Rational(1, 3));
  MatrixQ m = MatrixQ::Constant(9, 9, Rational(0));
  const VectorQ image = *g->realization()->coordinates(third);
  for (Index a = 0; a < 3; ++a) m.col(*g->label_index(gl_label(a, a))) = image;
  return LinearOperator(g, m);
}

}  // namespace

TEST_CASE("admissibility on the sphere") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  const VerdictReport ad = check_admissible(pair, operator_ad(g, g->basis_vector(0)));
  CHECK(ad.holds);
  CHECK(ad.scope == AdmissibilityScope::Full);
  CHECK(check_admissible(pair, identity_operator(g)).holds);
  CHECK(check_admissible(pair, zero_operator(g)).holds);
}

TEST_CASE("sphere family is admissible iff gamma = -beta") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Rational alpha = random_rational(rng), beta = random_rational(rng);
    const Rational gamma = trial % 2 == 0 ? -beta : random_rational(rng);
    CAPTURE(alpha.str());
    CAPTURE(beta.str());
    CAPTURE(gamma.str());
    const VerdictReport r = check_admissible(pair, sphere_family(g, alpha, beta, gamma));
    CHECK(r.holds == (gamma == -beta));
    if (!r.holds) {
      REQUIRE(r.witness);
      CHECK(r.witness->clause == clause::kDerivation);
      CHECK_FALSE(pair.k().contains(r.witness->value));
    }
  }
}

TEST_CASE("preservation clause witness") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  // k0 -> e1 leaves k.
  const LinearOperator op =
      operator_from_rules(g, {{"k0", qvec({0, 1, 0})}, {"e1", qvec({0, 0, 0})}, {"e2", qvec({0, 0, 0})}});
  const VerdictReport r = check_admissible(pair, op);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->clause == clause::kPreservesK);
  CHECK(r.witness->value == qvec({0, 1, 0}));
}

TEST_CASE("admissible operators form a linear space") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Rational b1 = random_rational(rng), b2 = random_rational(rng);
    const LinearOperator i1 = sphere_family(g, random_rational(rng), b1, -b1);
    const LinearOperator i2 = sphere_family(g, random_rational(rng), b2, -b2);
    REQUIRE(check_admissible(pair, i1).holds);
    REQUIRE(check_admissible(pair, i2).holds);
    CHECK(check_admissible(pair, i1.combine(random_rational(rng), i2, random_rational(rng))).holds);
  }
}

TEST_CASE("split admissibility is strictly stronger") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  CHECK(check_split_admissible(pair, operator_ad(g, g->basis_vector(0))).holds);

  const VerdictReport id = check_split_admissible(pair, identity_operator(g));
  CHECK_FALSE(id.holds);
  REQUIRE(id.witness);
  CHECK(id.witness->clause == clause::kKernel);

  const LinearOperator family = sphere_family(g, 2, 1, -1);
  CHECK(check_admissible(pair, family).holds);
  const VerdictReport split = check_split_admissible(pair, family);
  CHECK_FALSE(split.holds);
  CHECK(split.witness->clause == clause::kKernel);

  CHECK_THROWS_AS(check_split_admissible(sphere_pair(g, false), family), MissingComplement);

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Rational b = random_rational(rng);
    const LinearOperator op = sphere_family(g, trial % 3 == 0 ? Rational(0) : random_rational(rng), b,
                                            trial % 2 == 0 ? -b : random_rational(rng));
    if (check_split_admissible(pair, op).holds) CHECK(check_admissible(pair, op).holds);
  }
}

TEST_CASE("operator constructors") {
  const LieAlgebraPtr g = so3();
  CHECK(operator_ad(g, g->basis_vector(0)).matrix() == g->ad_matrix(g->basis_vector(0)));
  CHECK_THROWS_AS(operator_from_rules(g, {{"k0", qvec({1, 0, 0})}, {"e1", qvec({0, 1, 0})}}), RuleIncomplete);
  CHECK_THROWS_AS(operator_from_rules(g, {{"k0", qvec({1, 0, 0})},
                                          {"k0", qvec({1, 0, 0})},
                                          {"e1", qvec({0, 1, 0})},
                                          {"e2", qvec({0, 0, 1})}}),
                  RuleIncomplete);
  CHECK_THROWS_AS(operator_from_rules(g, {{"x", qvec({1, 0, 0})}}), RuleIncomplete);

  const LieAlgebraPtr g3 = gl(3);
  const MatrixQi id = MatrixQi::Identity(3, 3);
  CHECK(operator_sandwich(g3, id, id) == identity_operator(g3));

  const LieAlgebraPtr g2 = gl(2);
  // E11 * E_ij = E_1j when i = 1, else 0.
  const LinearOperator left = operator_left_mult(g2, unit_matrix(2, 0, 0));
  MatrixQ expected = MatrixQ::Constant(4, 4, Rational(0));
  expected(0, 0) = 1;  // E11 -> E11
  expected(1, 1) = 1;  // E12 -> E12
  CHECK(left.matrix() == expected);
  const LinearOperator right = operator_right_mult(g2, unit_matrix(2, 0, 0));
  MatrixQ expected_right = MatrixQ::Constant(4, 4, Rational(0));
  expected_right(0, 0) = 1;  // E11 -> E11
  expected_right(2, 2) = 1;  // E21 -> E21
  CHECK(right.matrix() == expected_right);

  // so(3) is not closed under multiplication by E11.
  try {
    operator_left_mult(g, unit_matrix(3, 0, 0));
    FAIL("expected ImageOutsideAlgebra");
  } catch (const ImageOutsideAlgebra& e) {
    CHECK(e.basis_index == 0);
  }
  const LieAlgebraPtr abstract =
      std::make_shared<const LieAlgebra>("abstract", std::vector<std::string>{"x"}, StructureConstants(1));
  CHECK_THROWS_AS(operator_left_mult(abstract, MatrixQi::Identity(1, 1)), ImageOutsideAlgebra);
}

TEST_CASE("multiplication operators agree with matrix products") {
  const LieAlgebraPtr g = gl(3);
  std::mt19937_64 rng(34);
  const auto& gens = g->realization()->generators;
  std::vector<oracle::Rows<GaussianRational>> basis;
  for (const auto& m : gens) basis.push_back(to_rows(m));
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixQi a = to_gaussian(random_matrix(rng, 3, 3));
    const MatrixQi b = to_gaussian(random_matrix(rng, 3, 3));
    const LinearOperator op = operator_sandwich(g, a, b);
    for (Index j = 0; j < 9; ++j) {
      const auto product = oracle::mul(oracle::mul(to_rows(a), basis[static_cast<std::size_t>(j)]), to_rows(b));
      const auto coords = oracle::coordinates(basis, product);
      for (Index k = 0; k < 9; ++k) CHECK(GaussianRational(op.matrix()(k, j)) == coords[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("homogeneous pair validation") {
  const LieAlgebraPtr g = so3();
  const Subalgebra k = make_subalgebra(g, {g->basis_vector(0)});
  CHECK_THROWS_AS(HomogeneousPair(k, SubspaceQ::span(3, std::vector<VectorQ>{g->basis_vector(1)})), InvalidPair);
  CHECK_THROWS_AS(HomogeneousPair(k, SubspaceQ::span(3, std::vector<VectorQ>{g->basis_vector(0), g->basis_vector(1)})),
                  InvalidPair);
  CHECK_NOTHROW(HomogeneousPair(k, std::nullopt, false, {reflection_rep()}));

  MatrixQ singular = MatrixQ::Constant(3, 3, Rational(0));
  singular(0, 0) = 1;
  CHECK_THROWS_AS(HomogeneousPair(k, std::nullopt, false, {singular}), InvalidPair);
  // Swapping k0 and e1 is invertible but does not preserve k.
  MatrixQ swap = MatrixQ::Constant(3, 3, Rational(0));
  swap(1, 0) = swap(0, 1) = swap(2, 2) = 1;
  CHECK_THROWS_AS(HomogeneousPair(k, std::nullopt, false, {swap}), InvalidPair);
  // Scaling by 2 preserves k but is not an automorphism.
  CHECK_THROWS_AS(HomogeneousPair(k, std::nullopt, false, {MatrixQ(MatrixQ::Identity(3, 3) * Rational(2))}),
                  InvalidPair);
}

TEST_CASE("non-connected K") {
  const LieAlgebraPtr g = so3();
  const Subalgebra k = make_subalgebra(g, {g->basis_vector(0)});
  const LinearOperator ad = operator_ad(g, g->basis_vector(0));

  const HomogeneousPair undeclared(k, std::nullopt, false);
  const VerdictReport partial = check_admissible(undeclared, ad);
  CHECK(partial.holds);
  CHECK(partial.scope == AdmissibilityScope::IdentityComponent);
  CHECK(to_string(partial.scope) == "identity-component");

  const HomogeneousPair o2(k, std::nullopt, false, {reflection_rep()});
  const VerdictReport full = check_admissible(o2, ad);
  CHECK(full.scope == AdmissibilityScope::Full);
  CHECK_FALSE(full.holds);
  REQUIRE(full.witness);
  CHECK(full.witness->clause == clause::kComponents);
  CHECK(full.witness->component == std::size_t{0});

  // Scaling k0 commutes with the reflection.
  CHECK(check_admissible(o2, sphere_family(g, 3, 0, 0)).holds);
}

TEST_CASE("ad admissibility") {
  const LieAlgebraPtr g = u(4);
  const HomogeneousPair pair = grassmannian_pair(g);
  CHECK(pair.k().dim() == 8);
  CHECK(check_ad_admissible(pair, grassmannian_d(g)).holds);
  CHECK(check_admissible(pair, operator_ad(g, grassmannian_d(g))).holds);

  // For u(2) x u(2) the admissible d form the centre of k.
  const SubspaceQ space = ad_admissible_space(pair);
  CHECK(space.dim() == 2);
  CHECK(space.contains(grassmannian_d(g)));

  std::mt19937_64 rng(35);
  int admissible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    VectorQ d = trial % 2 == 0 ? in_subspace(rng, space) : random_vector(rng, g->dim());
    if (trial % 4 == 1) d += in_subspace(rng, pair.k_space());
    const bool specialized = check_ad_admissible(pair, d).holds;
    CHECK(specialized == space.contains(d));
    // The two displays are sufficient for the general test.
    if (specialized) {
      ++admissible;
      CHECK(check_admissible(pair, operator_ad(g, d)).holds);
    }
  }
  CHECK(admissible >= 20);
}

TEST_CASE("trace operator on gl(3) relative to sl(3)") {
  const LieAlgebraPtr g = gl(3);
  const HomogeneousPair pair = sl3_pair(g);
  CHECK(pair.k().dim() == 8);
  CHECK(check_admissible(pair, trace_operator(g)).holds);
}
