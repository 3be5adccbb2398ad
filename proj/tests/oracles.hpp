#pragma once

// Brute-force reference computations for the tests. Everything here works on
// plain nested vectors or explicit matrices, sharing no code path with the
// library's elimination, bracket tables or operator matrices.

#include <vector>

#include "liehom/scalar.hpp"

namespace liehom::oracle {

template <class S>
using Rows = std::vector<std::vector<S>>;

template <class S>
Rows<S> zeros(std::size_t r, std::size_t c) {
  return Rows<S>(r, std::vector<S>(c, S(0)));
}

template <class S>
Rows<S> identity(std::size_t n) {
  Rows<S> out = zeros<S>(n, n);
  for (std::size_t i = 0; i < n; ++i) out[i][i] = S(1);
  return out;
}

template <class S>
Rows<S> mul(const Rows<S>& a, const Rows<S>& b) {
  Rows<S> out = zeros<S>(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

template <class S>
Rows<S> add(const Rows<S>& a, const Rows<S>& b, const S& scale = S(1)) {
  Rows<S> out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[i][j] += scale * b[i][j];
  return out;
}

template <class S>
Rows<S> sub(const Rows<S>& a, const Rows<S>& b) {
  return add(a, b, S(-1));
}

template <class S>
Rows<S> commutator(const Rows<S>& a, const Rows<S>& b) {
  return sub(mul(a, b), mul(b, a));
}

template <class S>
bool is_zero(const Rows<S>& a) {
  for (const auto& row : a)
    for (const S& x : row)
      if (!liehom::is_zero(x)) return false;
  return true;
}

/// Rank by Gaussian elimination with first-nonzero pivoting.
template <class S>
std::size_t rank(Rows<S> m) {
  if (m.empty()) return 0;
  std::size_t rank = 0;
  const std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && liehom::is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (liehom::is_zero(m[r][c])) continue;
      const S f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// v in span(rows) iff appending v does not raise the rank.
template <class S>
bool in_span(const Rows<S>& rows, const std::vector<S>& v) {
  Rows<S> extended = rows;
  extended.push_back(v);
  return rank(rows) == rank(extended);
}

template <class S>
std::vector<S> flatten(const Rows<S>& m) {
  std::vector<S> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

/// Coordinates of target in the span of `basis` (flattened matrices) by
/// Gauss-Jordan elimination on the augmented system. Assumes the target lies
/// in the span.
template <class S>
std::vector<S> coordinates(const std::vector<Rows<S>>& basis, const Rows<S>& target) {
  const std::size_t n = basis.size();
  const std::vector<S> t = flatten(target);
  Rows<S> aug = zeros<S>(t.size(), n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<S> b = flatten(basis[k]);
    for (std::size_t r = 0; r < t.size(); ++r) aug[r][k] = b[r];
  }
  for (std::size_t r = 0; r < t.size(); ++r) aug[r][n] = t[r];
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < aug.size(); ++c) {
    std::size_t p = row;
    while (p < aug.size() && liehom::is_zero(aug[p][c])) ++p;
    if (p == aug.size()) continue;
    std::swap(aug[p], aug[row]);
    const S inv = S(1) / aug[row][c];
    for (auto& x : aug[row]) x *= inv;
    for (std::size_t r = 0; r < aug.size(); ++r) {
      if (r == row || liehom::is_zero(aug[r][c])) continue;
      const S f = aug[r][c];
      for (std::size_t j = 0; j <= n; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<S> x(n, S(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
  return x;
}

template <class S>
Rows<S> combination(const std::vector<Rows<S>>& basis, const std::vector<S>& coeffs) {
  Rows<S> out = zeros<S>(basis[0].size(), basis[0][0].size());
  for (std::size_t k = 0; k < basis.size(); ++k) out = add(out, basis[k], coeffs[k]);
  return out;
}

/// beta(V, W) for I(X) = A X B, computed purely with matrix products.
template <class S>
Rows<S> sandwich_beta(const Rows<S>& a, const Rows<S>& b, const Rows<S>& v, const Rows<S>& w) {
  auto op = [&](const Rows<S>& x) { return mul(mul(a, x), b); };
  const Rows<S> iv = op(v);
  const Rows<S> iw = op(w);
  Rows<S> out = add(op(commutator(v, iw)), op(commutator(iv, w)));
  out = sub(out, commutator(iv, iw));
  return sub(out, op(op(commutator(v, w))));
}

}  // namespace liehom::oracle
