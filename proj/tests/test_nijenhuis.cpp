#include <doctest.h>

#include "support.hpp"

using namespace liehom;
using namespace liehom::testing;

namespace {

MatrixQi sandwich_a() { return qi_matrix({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}); }
MatrixQi sandwich_b() { return qi_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

}  // namespace

TEST_CASE("torsion form basics") {
  const LieAlgebraPtr g = so3();
  const LinearOperator ad = operator_ad(g, g->basis_vector(0));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const LinearOperator op(g, random_matrix(rng, 3, 3));
    const VectorQ v = random_vector(rng, 3), v2 = random_vector(rng, 3), w = random_vector(rng, 3);
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(is_zero_vector(torsion_form(op, v, v)));
    CHECK(torsion_form(op, v, w) == VectorQ(-torsion_form(op, w, v)));
    CHECK(torsion_form(op, VectorQ(v * a + v2 * b), w) ==
          VectorQ(torsion_form(op, v, w) * a + torsion_form(op, v2, w) * b));
  }
  // beta(e1, e2) for ad_k0 lies in span{k0}.
  const VectorQ beta = torsion_form(ad, g->basis_vector(1), g->basis_vector(2));
  CHECK(beta == qvec({1, 0, 0}));
}

TEST_CASE("left multiplication has identically vanishing torsion on gl(3)") {
  const LieAlgebraPtr g = gl(3);
  std::mt19937_64 rng(42);
  const auto& gens = g->realization()->generators;
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixQi a = to_gaussian(random_matrix(rng, 3, 3));
    const LinearOperator op = operator_left_mult(g, a);
    const auto id = oracle::identity<GaussianRational>(3);
    for (Index i = 0; i < 9; ++i)
      for (Index j = 0; j < 9; ++j) {
        CHECK(is_zero_vector(torsion_form(op, g->basis_vector(i), g->basis_vector(j))));
        CHECK(oracle::is_zero(oracle::sandwich_beta(to_rows(a), id, to_rows(gens[static_cast<std::size_t>(i)]),
                                                    to_rows(gens[static_cast<std::size_t>(j)]))));
      }
  }
}

TEST_CASE("sandwich operator on gl(3) fails with the first witness") {
  const LieAlgebraPtr g = gl(3);
  const HomogeneousPair pair = trivial_pair(g);
  const LinearOperator op = operator_sandwich(g, sandwich_a(), sandwich_b());
  const TorsionReport report = check_nijenhuis(pair, op);
  CHECK_FALSE(report.holds);
  REQUIRE(report.witness);
  CHECK_FALSE(pair.k().contains(report.witness->value));

  // Brute force with matrices: the first pair (i < j) whose beta is nonzero.
  const auto& gens = g->realization()->generators;
  std::vector<oracle::Rows<GaussianRational>> basis;
  for (const auto& m : gens) basis.push_back(to_rows(m));
  std::optional<std::pair<Index, Index>> first;
  oracle::Rows<GaussianRational> first_value;
  for (Index i = 0; i < 9 && !first; ++i)
    for (Index j = i + 1; j < 9 && !first; ++j) {
      auto beta = oracle::sandwich_beta(to_rows(sandwich_a()), to_rows(sandwich_b()), basis[static_cast<std::size_t>(i)],
                                        basis[static_cast<std::size_t>(j)]);
      if (!oracle::is_zero(beta)) {
        first = std::make_pair(i, j);
        first_value = beta;
      }
    }
  REQUIRE(first);
  CHECK(report.witness->v == g->basis_vector(first->first));
  CHECK(report.witness->w == g->basis_vector(first->second));
  const auto coords = oracle::coordinates(basis, first_value);
  for (Index k = 0; k < 9; ++k) CHECK(GaussianRational(report.witness->value[k]) == coords[static_cast<std::size_t>(k)]);
  CHECK(report.mode == TorsionMode::ComplementPairs);
}

TEST_CASE("sphere family torsion") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair pair = sphere_pair(g);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const Rational beta = random_rational(rng);
    const LinearOperator op = sphere_family(g, random_rational(rng), beta, -beta);
    const TorsionReport r = check_nijenhuis(pair, op);
    CHECK(r.holds);
    CHECK(r.checked_pairs == 1);
    CHECK(check_nijenhuis(pair, op, TorsionMode::AllPairs).holds);
  }
  CHECK_THROWS_AS(check_nijenhuis(pair, sphere_family(g, 0, 1, 1)), NotAdmissible);
  CHECK(check_nijenhuis(pair, zero_operator(g)).holds);
  CHECK(check_nijenhuis(trivial_pair(gl(3)), zero_operator(gl(3))).holds);
}

TEST_CASE("complement and all-pairs modes agree") {
  std::mt19937_64 rng(44);
  const LieAlgebraPtr g4 = u(4);
  const HomogeneousPair grass = grassmannian_pair(g4);
  const SubspaceQ centre = ad_admissible_space(grass);
  for (int trial = 0; trial < 10; ++trial) {
    const LinearOperator op = operator_ad(g4, in_subspace(rng, centre));
    const TorsionReport split = check_nijenhuis(grass, op);
    CHECK(split.mode == TorsionMode::ComplementPairs);
    CHECK(split.holds == check_nijenhuis(grass, op, TorsionMode::AllPairs).holds);
  }
  const LieAlgebraPtr g = so3();
  const HomogeneousPair sphere = sphere_pair(g);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational b = random_rational(rng);
    const LinearOperator op = sphere_family(g, random_rational(rng), b, -b);
    CHECK(check_nijenhuis(sphere, op).holds == check_nijenhuis(sphere, op, TorsionMode::AllPairs).holds);
  }
  CHECK_THROWS_AS(check_nijenhuis(sphere_pair(g, false), identity_operator(g), TorsionMode::ComplementPairs),
                  MissingComplement);
}

TEST_CASE("ad specialization agrees with the general check") {
  const LieAlgebraPtr g4 = u(4);
  const HomogeneousPair grass = grassmannian_pair(g4);
  const TorsionReport r = check_nijenhuis_ad(grass, grassmannian_d(g4));
  CHECK(r.holds);
  CHECK(r.mode == TorsionMode::AdSpecialized);
  CHECK(check_nijenhuis(grass, operator_ad(g4, grassmannian_d(g4))).holds);

  const LieAlgebraPtr g = so3();
  CHECK(check_nijenhuis_ad(sphere_pair(g), g->basis_vector(0)).holds);
  CHECK_THROWS_AS(check_nijenhuis_ad(sphere_pair(g), g->basis_vector(1)), NotAdmissible);

  // Central d in u(3) relative to k = 0: every bracket vanishes.
  const LieAlgebraPtr g3 = u(3);
  const HomogeneousPair trivial3 = trivial_pair(g3);
  CHECK(check_nijenhuis_ad(trivial3, qvec({1, 1, 1, 0, 0, 0, 0, 0, 0})).holds);

  // With k = 0 every d is admissible; compare both routes on random d.
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    VectorQ d = random_vector(rng, 9);
    if (trial % 3 == 0) d.tail(6).setConstant(Rational(0));
    const bool special = check_nijenhuis_ad(trivial3, d).holds;
    CHECK(special == check_nijenhuis(trivial3, operator_ad(g3, d)).holds);
  }
  // And with the Grassmannian k on randomized admissible d.
  const SubspaceQ space = ad_admissible_space(grass);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorQ d = in_subspace(rng, space);
    CHECK(check_nijenhuis_ad(grass, d).holds == check_nijenhuis(grass, operator_ad(g4, d)).holds);
  }
}

TEST_CASE("beta(z, w) lies in k for admissible operators") {
  const LieAlgebraPtr g = so3();
  const HomogeneousPair sphere = sphere_pair(g);
  const LinearOperator ad = operator_ad(g, g->basis_vector(0));
  CHECK(corollary_oneof_property(sphere, ad, g->basis_vector(0), g->basis_vector(1)));
  CHECK(corollary_oneof_property(sphere, ad, qvec({0, 0, 0}), g->basis_vector(2)));
  CHECK_THROWS_AS(corollary_oneof_property(sphere, ad, g->basis_vector(1), g->basis_vector(2)), std::invalid_argument);

  std::mt19937_64 rng(46);
  const LieAlgebraPtr g4 = u(4);
  const HomogeneousPair grass = grassmannian_pair(g4);
  const SubspaceQ centre = ad_admissible_space(grass);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearOperator op = operator_ad(g4, in_subspace(rng, centre));
    CHECK(corollary_oneof_property(grass, op, in_subspace(rng, grass.k_space()), random_vector(rng, 16)));
  }
}

TEST_CASE("trace operator on gl(3) is Nijenhuis relative to sl(3)") {
  const LieAlgebraPtr g = gl(3);
  std::vector<VectorQ> k;
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b)
      if (a != b) k.push_back(label_vector(g, gl_label(a, b)));
  k.push_back(label_vector(g, "E11") - label_vector(g, "E22"));
  k.push_back(label_vector(g, "E22") - label_vector(g, "E33"));
  const HomogeneousPair pair(make_subalgebra(g, k));
  const MatrixQi third = MatrixQi::Identity(3, 3) * GaussianRational(Rational(1, 3));
  MatrixQ m = MatrixQ::Constant(9, 9, Rational(0));
  for (Index a = 0; a < 3; ++a) m.col(*g->label_index(gl_label(a, a))) = *g->realization()->coordinates(third);
  const TorsionReport r = check_nijenhuis(pair, LinearOperator(g, m));
  CHECK(r.holds);
  CHECK(r.mode == TorsionMode::AllPairs);
  CHECK(r.checked_pairs == 36);
}
