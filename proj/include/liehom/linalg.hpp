#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liehom/scalar.hpp"

namespace liehom {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;
using MatrixQi = Matrix<GaussianRational>;
using VectorQi = Vector<GaussianRational>;

/// Largest ambient dimension accepted for exact subspaces and Lie algebras.
inline constexpr Index kMaxAmbientDim = 64;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, Index expected, Index got)
      : std::invalid_argument(what + ": expected dimension " + std::to_string(expected) + ", got " +
                              std::to_string(got)) {}
};

class DimensionCapExceeded : public std::length_error {
 public:
  explicit DimensionCapExceeded(Index dim)
      : std::length_error("ambient dimension " + std::to_string(dim) + " exceeds the supported maximum of " +
                          std::to_string(kMaxAmbientDim)) {}
};

inline void require_dim(const char* what, Index expected, Index got) {
  if (expected != got) throw DimensionMismatch(what, expected, got);
}

template <class S>
bool is_zero_vector(const Vector<S>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& m) {
  for (Index i = 0; i < m.size(); ++i)
    if (!is_zero(m.data()[i])) return false;
  return true;
}

template <class S>
Vector<S> unit_vector(Index n, Index k) {
  Vector<S> e = Vector<S>::Constant(n, S(0));
  e[k] = S(1);
  return e;
}

template <class S>
Vector<S> conjugate(const Vector<S>& v) {
  Vector<S> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = conj(v[i]);
  return out;
}

template <class S>
Matrix<S> conjugate(const Matrix<S>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (Index i = 0; i < m.size(); ++i) out.data()[i] = conj(m.data()[i]);
  return out;
}

/// Lifts a rational vector or matrix into Q(i).
template <class Derived>
auto to_gaussian(const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<GaussianRational>().eval();
}

/// Exact matrix-vector product skipping zero coefficients.
template <class S, class T>
Vector<T> apply(const Matrix<S>& m, const Vector<T>& v) {
  require_dim("matrix-vector product", m.cols(), v.size());
  Vector<T> out = Vector<T>::Constant(m.rows(), T(0));
  for (Index j = 0; j < m.cols(); ++j) {
    if (is_zero(v[j])) continue;
    for (Index i = 0; i < m.rows(); ++i) {
      if (is_zero(m(i, j))) continue;
      out[i] += v[j] * m(i, j);
    }
  }
  return out;
}

template <class S>
Matrix<S> multiply(const Matrix<S>& a, const Matrix<S>& b) {
  require_dim("matrix product", a.cols(), b.rows());
  Matrix<S> out = Matrix<S>::Constant(a.rows(), b.cols(), S(0));
  for (Index k = 0; k < a.cols(); ++k)
    for (Index i = 0; i < a.rows(); ++i) {
      if (is_zero(a(i, k))) continue;
      for (Index j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

/// Reduced row-echelon form with zero rows dropped.
template <class S>
struct Echelon {
  Matrix<S> rows;
  std::vector<Index> pivots;

  [[nodiscard]] Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination. Pivot choice: leftmost nonzero column, first
/// nonzero row at or below the current one; pivots are normalized to 1.
template <class S>
Echelon<S> rref(Matrix<S> m) {
  const Index nrows = m.rows();
  const Index ncols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < ncols && r < nrows; ++c) {
    Index p = r;
    while (p < nrows && is_zero(m(p, c))) ++p;
    if (p == nrows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const S inv = S(1) / m(r, c);
    for (Index j = c; j < ncols; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Index i = 0; i < nrows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const S f = m(i, c);
      for (Index j = c; j < ncols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.topRows(r).eval(), std::move(pivots)};
}

template <class S>
Index rank(const Matrix<S>& m) {
  return rref(m).rank();
}

/// Rows spanning the right null space {x : m x = 0}, one per free column.
template <class S>
Matrix<S> nullspace_rows(const Matrix<S>& m) {
  const Echelon<S> e = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<S> out = Matrix<S>::Constant(n - e.rank(), n, S(0));
  Index row = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    out(row, f) = S(1);
    for (Index r = 0; r < e.rank(); ++r)
      if (!is_zero(e.rows(r, f))) out(row, e.pivots[static_cast<std::size_t>(r)]) = -e.rows(r, f);
    ++row;
  }
  return out;
}

/// One solution of a x = b (free variables set to zero), if consistent.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& a, const Vector<S>& b) {
  require_dim("linear system", a.rows(), b.size());
  Matrix<S> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const Echelon<S> e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector<S> x = Vector<S>::Constant(a.cols(), S(0));
  for (Index r = 0; r < e.rank(); ++r) x[e.pivots[static_cast<std::size_t>(r)]] = e.rows(r, a.cols());
  return x;
}

/// Subspace of S^n stored by its canonical reduced row-echelon basis, so that
/// two subspaces are equal exactly when their representations are equal.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(Index ambient_dim, const Matrix<S>& rows) {
    check_cap(ambient_dim);
    require_dim("spanning vectors", ambient_dim, rows.cols());
    Echelon<S> e = rref(rows);
    return Subspace(ambient_dim, std::move(e.rows), std::move(e.pivots));
  }

  static Subspace span(Index ambient_dim, const std::vector<Vector<S>>& vectors) {
    Matrix<S> rows(static_cast<Index>(vectors.size()), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      require_dim("spanning vector", ambient_dim, vectors[i].size());
      rows.row(static_cast<Index>(i)) = vectors[i].transpose();
    }
    return span(ambient_dim, rows);
  }

  static Subspace zero(Index ambient_dim) { return span(ambient_dim, Matrix<S>(0, ambient_dim)); }

  static Subspace full(Index ambient_dim) {
    Matrix<S> id = Matrix<S>::Constant(ambient_dim, ambient_dim, S(0));
    for (Index i = 0; i < ambient_dim; ++i) id(i, i) = S(1);
    return span(ambient_dim, id);
  }

  [[nodiscard]] Index ambient_dim() const { return ambient_; }
  [[nodiscard]] Index dim() const { return basis_.rows(); }
  [[nodiscard]] const Matrix<S>& basis() const { return basis_; }
  [[nodiscard]] Vector<S> basis_vector(Index r) const { return basis_.row(r).transpose(); }
  [[nodiscard]] const std::vector<Index>& pivots() const { return pivots_; }

  /// v minus its projection along the echelon basis; zero iff v is a member.
  [[nodiscard]] Vector<S> reduce(const Vector<S>& v) const {
    require_dim("membership query", ambient_, v.size());
    Vector<S> out = v;
    for (Index r = 0; r < dim(); ++r) {
      const S c = out[pivots_[static_cast<std::size_t>(r)]];
      if (is_zero(c)) continue;
      for (Index j = 0; j < ambient_; ++j)
        if (!is_zero(basis_(r, j))) out[j] -= c * basis_(r, j);
    }
    return out;
  }

  /// Coordinates of v in the echelon basis when v is a member.
  [[nodiscard]] std::optional<Vector<S>> coordinates(const Vector<S>& v) const {
    require_dim("membership query", ambient_, v.size());
    Vector<S> coords(dim());
    for (Index r = 0; r < dim(); ++r) coords[r] = v[pivots_[static_cast<std::size_t>(r)]];
    if (!is_zero_vector(reduce(v))) return std::nullopt;
    return coords;
  }

  [[nodiscard]] bool contains(const Vector<S>& v) const { return is_zero_vector(reduce(v)); }

  [[nodiscard]] bool contains(const Subspace& other) const {
    require_dim("subspace inclusion", ambient_, other.ambient_);
    for (Index r = 0; r < other.dim(); ++r)
      if (!contains(other.basis_vector(r))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(Index ambient, Matrix<S> basis, std::vector<Index> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  static void check_cap(Index n) {
    if (n > kMaxAmbientDim) throw DimensionCapExceeded(n);
  }

  Index ambient_ = 0;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
};

using SubspaceQ = Subspace<Rational>;
using SubspaceQi = Subspace<GaussianRational>;

template <class S>
Subspace<S> kernel_basis(const Matrix<S>& m) {
  return Subspace<S>::span(m.cols(), nullspace_rows(m));
}

template <class S>
Subspace<S> subspace_sum(const Subspace<S>& a, const Subspace<S>& b) {
  require_dim("subspace sum", a.ambient_dim(), b.ambient_dim());
  Matrix<S> stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), b.basis();
  return Subspace<S>::span(a.ambient_dim(), stacked);
}

/// Intersection via the kernel of the stacked system x·[A; -B] = 0.
template <class S>
Subspace<S> subspace_intersection(const Subspace<S>& a, const Subspace<S>& b) {
  require_dim("subspace intersection", a.ambient_dim(), b.ambient_dim());
  Matrix<S> stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), -b.basis();
  const Matrix<S> combos = nullspace_rows(Matrix<S>(stacked.transpose()));
  Matrix<S> vectors = Matrix<S>::Constant(combos.rows(), a.ambient_dim(), S(0));
  for (Index k = 0; k < combos.rows(); ++k)
    for (Index r = 0; r < a.dim(); ++r) {
      if (is_zero(combos(k, r))) continue;
      for (Index j = 0; j < a.ambient_dim(); ++j)
        if (!is_zero(a.basis()(r, j))) vectors(k, j) += combos(k, r) * a.basis()(r, j);
    }
  return Subspace<S>::span(a.ambient_dim(), vectors);
}

inline SubspaceQi complexify_subspace(const SubspaceQ& s) {
  return SubspaceQi::span(s.ambient_dim(), to_gaussian(s.basis()));
}

inline SubspaceQi conjugate(const SubspaceQi& s) {
  return SubspaceQi::span(s.ambient_dim(), conjugate<GaussianRational>(s.basis()));
}

}  // namespace liehom
