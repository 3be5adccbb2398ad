#pragma once

#include <random>
#include <string>
#include <vector>

#include "liehom/complex_structure.hpp"
#include "oracles.hpp"

namespace liehom::testing {

inline MatrixQi qi_matrix(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
  MatrixQi m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

inline VectorQ qvec(std::initializer_list<Rational> xs) {
  VectorQ v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

inline VectorQi qivec(std::initializer_list<GaussianRational> xs) {
  VectorQi v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

inline MatrixQi unit_matrix(Index n, Index a, Index b, const GaussianRational& s = 1) {
  MatrixQi m = MatrixQi::Constant(n, n, GaussianRational(0));
  m(a, b) = s;
  return m;
}

// k0, e1, e2 acting on R^3 with p0 = (0,0,1).
inline std::vector<MatrixQi> so3_generators() {
  return {qi_matrix({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}), qi_matrix({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
          qi_matrix({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}})};
}

inline LieAlgebraPtr so3() { return from_matrix_generators("so3", 3, {"k0", "e1", "e2"}, so3_generators()); }

inline HomogeneousPair sphere_pair(const LieAlgebraPtr& g, bool with_complement = true) {
  Subalgebra k = make_subalgebra(g, {g->basis_vector(0)});
  std::optional<SubspaceQ> m;
  if (with_complement) m = SubspaceQ::span(3, std::vector<VectorQ>{g->basis_vector(1), g->basis_vector(2)});
  return HomogeneousPair(std::move(k), std::move(m));
}

// I k0 = alpha k0, I e1 = beta e2, I e2 = gamma e1.
inline LinearOperator sphere_family(const LieAlgebraPtr& g, Rational alpha, Rational beta, Rational gamma) {
  return operator_from_rules(g, {{"k0", qvec({alpha, 0, 0})}, {"e1", qvec({0, 0, beta})}, {"e2", qvec({0, gamma, 0})}});
}

inline std::string gl_label(Index a, Index b) { return "E" + std::to_string(a + 1) + std::to_string(b + 1); }

inline LieAlgebraPtr gl(Index n) {
  std::vector<MatrixQi> gens;
  std::vector<std::string> labels;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      gens.push_back(unit_matrix(n, a, b));
      labels.push_back(gl_label(a, b));
    }
  return from_matrix_generators("gl" + std::to_string(n), n, labels, gens);
}

inline HomogeneousPair trivial_pair(const LieAlgebraPtr& g) {
  return HomogeneousPair(make_subalgebra(g, {}), SubspaceQ::full(g->dim()));
}

// u(n): h_a = i E_aa, then a_ab = E_ab - E_ba and s_ab = i (E_ab + E_ba) for a < b.
inline LieAlgebraPtr u(Index n) {
  const GaussianRational i = GaussianRational::i();
  std::vector<MatrixQi> gens;
  std::vector<std::string> labels;
  for (Index a = 0; a < n; ++a) {
    gens.push_back(unit_matrix(n, a, a, i));
    labels.push_back("h" + std::to_string(a));
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      gens.push_back(unit_matrix(n, a, b) - unit_matrix(n, b, a));
      labels.push_back("a" + std::to_string(a) + std::to_string(b));
      gens.push_back(unit_matrix(n, a, b, i) + unit_matrix(n, b, a, i));
      labels.push_back("s" + std::to_string(a) + std::to_string(b));
    }
  return from_matrix_generators("u" + std::to_string(n), n, labels, gens);
}

inline VectorQ label_vector(const LieAlgebraPtr& g, const std::string& label) {
  return g->basis_vector(*g->label_index(label));
}

// u(4) with k = u(2) x u(2) block diagonal and m the off-diagonal blocks.
inline HomogeneousPair grassmannian_pair(const LieAlgebraPtr& g) {
  std::vector<VectorQ> k;
  std::vector<VectorQ> m;
  for (const std::string& label : g->labels()) {
    const bool diagonal = label[0] == 'h';
    const bool same_block = !diagonal && (label[1] < '2') == (label[2] < '2');
    (diagonal || same_block ? k : m).push_back(label_vector(g, label));
  }
  return HomogeneousPair(make_subalgebra(g, k), SubspaceQ::span(g->dim(), m));
}

// (i/2)(P+ - P-) with P+ the projection onto the first two coordinates.
inline VectorQ grassmannian_d(const LieAlgebraPtr& g) {
  VectorQ d = VectorQ::Constant(g->dim(), Rational(0));
  d[0] = d[1] = Rational(1, 2);
  d[2] = d[3] = Rational(-1, 2);
  return d;
}

// u(n) with k the diagonal torus and m the root planes.
inline HomogeneousPair flag_pair(const LieAlgebraPtr& g) {
  std::vector<VectorQ> k;
  std::vector<VectorQ> m;
  for (const std::string& label : g->labels()) (label[0] == 'h' ? k : m).push_back(label_vector(g, label));
  return HomogeneousPair(make_subalgebra(g, k), SubspaceQ::span(g->dim(), m));
}

// J a_ab = eps_ab s_ab, J s_ab = -eps_ab a_ab, J h = 0; signs listed for a < b in
// lexicographic order.
inline LinearOperator flag_structure(const LieAlgebraPtr& g, const std::vector<int>& signs) {
  MatrixQ j = MatrixQ::Constant(g->dim(), g->dim(), Rational(0));
  std::size_t next = 0;
  for (Index c = 0; c < g->dim(); ++c) {
    const std::string& label = g->labels()[static_cast<std::size_t>(c)];
    if (label[0] != 'a') continue;
    const Index s = *g->label_index("s" + label.substr(1));
    const Rational eps(signs[next++]);
    j(s, c) = eps;
    j(c, s) = -eps;
  }
  return LinearOperator(g, j);
}

inline Rational random_rational(std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, 5);
  return Rational(num(rng), den(rng));
}

inline GaussianRational random_gaussian(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng)}; }

inline VectorQ random_vector(std::mt19937_64& rng, Index n) {
  VectorQ v(n);
  for (Index i = 0; i < n; ++i) v[i] = random_rational(rng);
  return v;
}

inline VectorQi random_complex_vector(std::mt19937_64& rng, Index n) {
  VectorQi v(n);
  for (Index i = 0; i < n; ++i) v[i] = random_gaussian(rng);
  return v;
}

inline MatrixQ random_matrix(std::mt19937_64& rng, Index rows, Index cols, double zero_fraction = 0.0) {
  std::bernoulli_distribution zero(zero_fraction);
  MatrixQ m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = zero(rng) ? Rational(0) : random_rational(rng);
  return m;
}

inline VectorQ in_subspace(std::mt19937_64& rng, const SubspaceQ& s) {
  VectorQ v = VectorQ::Constant(s.ambient_dim(), Rational(0));
  for (Index r = 0; r < s.dim(); ++r) v += s.basis_vector(r) * random_rational(rng);
  return v;
}

template <class S>
oracle::Rows<S> to_rows(const Matrix<S>& m) {
  oracle::Rows<S> out = oracle::zeros<S>(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

template <class S>
std::vector<S> to_std(const Vector<S>& v) {
  return std::vector<S>(v.data(), v.data() + v.size());
}

}  // namespace liehom::testing
