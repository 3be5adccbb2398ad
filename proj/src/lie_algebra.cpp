#include "liehom/lie_algebra.hpp"

#include <stdexcept>

#include <sstream>

namespace liehom {

void StructureConstants::set_bracket(Index i, Index j, const VectorQ& v) {
  require_dim("bracket value", n_, v.size());
  for (Index k = 0; k < n_; ++k) {
    (*this)(i, j, k) = v[k];
    (*this)(j, i, k) = -v[k];
  }
}

bool MatrixRealization::is_real() const {
  for (const MatrixQi& g : generators)
    for (Index i = 0; i < g.size(); ++i)
      if (!g.data()[i].is_real()) return false;
  return true;
}

MatrixQi MatrixRealization::element(const VectorQ& v) const {
  require_dim("matrix element", static_cast<Index>(generators.size()), v.size());
  MatrixQi out = MatrixQi::Constant(size, size, GaussianRational(0));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Rational& c = v[static_cast<Index>(k)];
    if (c.is_zero()) continue;
    for (Index i = 0; i < out.size(); ++i) {
      const GaussianRational& g = generators[k].data()[i];
      if (!g.is_zero()) out.data()[i] += g * c;
    }
  }
  return out;
}

namespace {

// Real coordinates of a Q(i) matrix: real parts followed by imaginary parts.
VectorQ real_flatten(const MatrixQi& m) {
  VectorQ out(2 * m.size());
  for (Index i = 0; i < m.size(); ++i) {
    out[i] = m.data()[i].re();
    out[m.size() + i] = m.data()[i].im();
  }
  return out;
}

VectorQi complex_flatten(const MatrixQi& m) {
  return Eigen::Map<const VectorQi>(m.data(), m.size());
}

MatrixQ real_columns(const std::vector<MatrixQi>& gens, Index size) {
  MatrixQ cols(2 * size * size, static_cast<Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) cols.col(static_cast<Index>(k)) = real_flatten(gens[k]);
  return cols;
}

}  // namespace

std::optional<VectorQ> MatrixRealization::coordinates(const MatrixQi& m) const {
  require_dim("matrix rows", size, m.rows());
  require_dim("matrix cols", size, m.cols());
  return solve(real_columns(generators, size), real_flatten(m));
}

MatrixQi commutator(const MatrixQi& a, const MatrixQi& b) { return multiply(a, b) - multiply(b, a); }

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, StructureConstants c,
                       std::optional<MatrixRealization> realization)
    : name_(std::move(name)), labels_(std::move(labels)), c_(std::move(c)), realization_(std::move(realization)) {
  const Index n = dim();
  if (n > kMaxAmbientDim) throw DimensionCapExceeded(n);
  require_dim("structure constants", n, c_.dim());
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    if (labels_[a].empty()) throw std::invalid_argument("empty basis label");
    for (std::size_t b = a + 1; b < labels_.size(); ++b)
      if (labels_[a] == labels_[b]) throw std::invalid_argument("duplicate basis label '" + labels_[a] + "'");
  }
  terms_.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const Rational& v = c_(i, j, k);
        if (!v.is_zero()) terms_[static_cast<std::size_t>(i)].push_back({j, k, v, v.to_double()});
      }
  validate();
}

std::optional<Index> LieAlgebra::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Index>(i);
  return std::nullopt;
}

void LieAlgebra::validate() const {
  const Index n = dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (c_(i, j, k) != -c_(j, i, k)) {
          std::ostringstream msg;
          msg << "structure constants of " << name_ << " are not antisymmetric at [" << labels_[i] << ","
              << labels_[j] << "] component " << labels_[k];
          throw InvalidStructureConstants(msg.str());
        }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index l = j + 1; l < n; ++l) {
        const VectorQ a = basis_vector(i);
        const VectorQ b = basis_vector(j);
        const VectorQ c = basis_vector(l);
        const VectorQ jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        if (!is_zero_vector(jac)) {
          std::ostringstream msg;
          msg << "Jacobi identity fails in " << name_ << " for (" << labels_[i] << "," << labels_[j] << ","
              << labels_[l] << ")";
          throw InvalidStructureConstants(msg.str());
        }
      }
}

LieAlgebraPtr from_matrix_generators(std::string name, Index matrix_size, std::vector<std::string> labels,
                                     const std::vector<MatrixQi>& generators) {
  const auto n = static_cast<Index>(generators.size());
  require_dim("generator labels", n, static_cast<Index>(labels.size()));
  if (n > kMaxAmbientDim) throw DimensionCapExceeded(n);
  for (const MatrixQi& g : generators) {
    require_dim("generator rows", matrix_size, g.rows());
    require_dim("generator cols", matrix_size, g.cols());
  }
  const MatrixQ cols = real_columns(generators, matrix_size);
  if (rank(cols) != n) throw NotIndependent("generators of " + name + " are linearly dependent over R");

  MatrixQi complex_cols(matrix_size * matrix_size, n);
  for (Index k = 0; k < n; ++k) complex_cols.col(k) = complex_flatten(generators[static_cast<std::size_t>(k)]);

  StructureConstants c(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const MatrixQi comm =
          commutator(generators[static_cast<std::size_t>(a)], generators[static_cast<std::size_t>(b)]);
      const std::optional<VectorQ> coords = solve(cols, real_flatten(comm));
      if (!coords) {
        const std::string where = "[" + labels[static_cast<std::size_t>(a)] + "," +
                                  labels[static_cast<std::size_t>(b)] + "]";
        if (solve(complex_cols, complex_flatten(comm)))
          throw NonRealStructureConstants(a, b, "commutator " + where + " of " + name +
                                                    " needs non-real coefficients");
        throw NotClosed(a, b, comm, "commutator " + where + " leaves the span of the generators of " + name);
      }
      c.set_bracket(a, b, *coords);
    }
  MatrixRealization real{matrix_size, generators};
  return std::make_shared<const LieAlgebra>(std::move(name), std::move(labels), std::move(c), std::move(real));
}

Subalgebra::Subalgebra(LieAlgebraPtr parent, SubspaceQ space) : parent_(std::move(parent)), space_(std::move(space)) {
  require_dim("subalgebra", parent_->dim(), space_.ambient_dim());
}

Subalgebra make_subalgebra(const LieAlgebraPtr& alg, const std::vector<VectorQ>& vectors) {
  SubspaceQ space = SubspaceQ::span(alg->dim(), vectors);
  for (Index a = 0; a < space.dim(); ++a)
    for (Index b = a + 1; b < space.dim(); ++b) {
      VectorQ x = space.basis_vector(a);
      VectorQ y = space.basis_vector(b);
      VectorQ xy = alg->bracket(x, y);
      if (!space.contains(xy)) {
        const std::string msg = "span is not closed under the bracket: [" + format_combination(alg->labels(), x) +
                                ", " + format_combination(alg->labels(), y) +
                                "] = " + format_combination(alg->labels(), xy);
        throw NotClosedUnderBracket(std::move(x), std::move(y), std::move(xy), msg);
      }
    }
  return {alg, std::move(space)};
}

namespace {

template <class S>
std::string format_terms(const std::vector<std::string>& labels, const Vector<S>& v) {
  require_dim("labelled vector", static_cast<Index>(labels.size()), v.size());
  std::string out;
  for (Index k = 0; k < v.size(); ++k) {
    const S& c = v[k];
    if (is_zero(c)) continue;
    const std::string& label = labels[static_cast<std::size_t>(k)];
    if constexpr (std::is_same_v<S, Rational>) {
      const bool negative = c.sign() < 0;
      const Rational mag = negative ? -c : c;
      if (out.empty()) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      if (mag != Rational(1)) out += mag.str() + "*";
    } else {
      // Real and purely imaginary coefficients carry their sign into the joiner.
      const bool simple = c.is_real() || c.re().is_zero();
      const bool negative = simple && (c.is_real() ? c.re().sign() < 0 : c.im().sign() < 0);
      const GaussianRational mag = negative ? GaussianRational(-c.re(), -c.im()) : c;
      if (out.empty()) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      if (!simple) {
        out += "(" + mag.str() + ")*";
      } else if (mag != GaussianRational(1)) {
        out += mag.str() + "*";
      }
    }
    out += label;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_combination(const std::vector<std::string>& labels, const VectorQ& v) {
  return format_terms(labels, v);
}

std::string format_combination(const std::vector<std::string>& labels, const VectorQi& v) {
  return format_terms(labels, v);
}

}  // namespace liehom
