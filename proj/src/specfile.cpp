#include "liehom/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace liehom::spec {

std::string to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::SyntaxError: return "SyntaxError";
    case DiagnosticKind::DuplicateName: return "DuplicateName";
    case DiagnosticKind::UnresolvedReference: return "UnresolvedReference";
    case DiagnosticKind::InconsistentBracket: return "InconsistentBracket";
  }
  return "SyntaxError";
}

ParseError::ParseError(DiagnosticKind kind, SourceSpan span, std::string token, std::vector<std::string> expected,
                       const std::string& message)
    : Error(to_string(kind), message),
      diagnostic(kind),
      span(span),
      token(std::move(token)),
      expected(std::move(expected)),
      message(message) {}

std::string format_diagnostic(const ParseError& e, std::string_view path) {
  std::ostringstream os;
  os << path << ':' << e.span.line << ':' << e.span.column << ": " << to_string(e.diagnostic) << ": " << e.message;
  if (!e.expected.empty()) {
    os << " (expected ";
    for (std::size_t k = 0; k < e.expected.size(); ++k) os << (k ? ", " : "") << e.expected[k];
    os << ')';
  }
  return os.str();
}

namespace {

template <class S>
bool same(const Matrix<S>& a, const Matrix<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

template <class S>
bool same(const Vector<S>& a, const Vector<S>& b) {
  return a.size() == b.size() && a == b;
}

template <class T>
bool same_all(const std::vector<T>& a, const std::vector<T>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const T& x, const T& y) { return same(x, y); });
}

}  // namespace

bool operator==(const AlgebraDecl& a, const AlgebraDecl& b) {
  return a.name == b.name && a.basis == b.basis &&
         std::equal(a.brackets.begin(), a.brackets.end(), b.brackets.begin(), b.brackets.end(),
                    [](const auto& x, const auto& y) { return x.first == y.first && same(x.second, y.second); });
}

bool operator==(const MatrixAlgebraDecl& a, const MatrixAlgebraDecl& b) {
  return a.name == b.name && a.size == b.size && a.labels == b.labels && same_all(a.generators, b.generators);
}

bool operator==(const SpanDecl& a, const SpanDecl& b) {
  return a.name == b.name && a.algebra == b.algebra && same_all(a.vectors, b.vectors);
}

bool operator==(const OperatorDecl& a, const OperatorDecl& b) {
  return a.name == b.name && a.algebra == b.algebra && a.form == b.form && same(a.d, b.d) && same(a.a, b.a) &&
         same(a.b, b.b) &&
         std::equal(a.rules.begin(), a.rules.end(), b.rules.begin(), b.rules.end(),
                    [](const auto& x, const auto& y) { return x.first == y.first && same(x.second, y.second); });
}

bool operator==(const PairDecl& a, const PairDecl& b) {
  return a.name == b.name && a.algebra == b.algebra && a.subalgebra == b.subalgebra && a.complement == b.complement &&
         a.connected == b.connected && same_all(a.component_reps, b.component_reps);
}

bool operator==(const SpecDocument& a, const SpecDocument& b) {
  return a.algebras == b.algebras && a.matrix_algebras == b.matrix_algebras && a.subalgebras == b.subalgebras &&
         a.complements == b.complements && a.operators == b.operators && a.pairs == b.pairs;
}

bool SpecDocument::empty() const {
  return algebras.empty() && matrix_algebras.empty() && subalgebras.empty() && complements.empty() &&
         operators.empty() && pairs.empty();
}

const std::vector<std::string>* SpecDocument::basis_of(const std::string& name) const {
  for (const AlgebraDecl& a : algebras)
    if (a.name == name) return &a.basis;
  for (const MatrixAlgebraDecl& m : matrix_algebras)
    if (m.name == name) return &m.labels;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Lexing

namespace {

enum class Tok { Name, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

[[noreturn]] void fail(DiagnosticKind kind, const Token& at, std::vector<std::string> expected,
                       const std::string& message) {
  throw ParseError(kind, at.span, at.text, std::move(expected), message);
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1, pos = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[pos] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++pos;
    }
  };
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.span = {line, column, 1};
    std::size_t len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Name;
      while (pos + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos + len])) || text[pos + len] == '_'))
        ++len;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (pos + len < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + len]))) ++len;
    } else if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') {
      t.kind = Tok::Punct;
      len = 2;
    } else if (std::string_view("{}[](),;=*+-/").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
    } else {
      t.text = std::string(1, c);
      fail(DiagnosticKind::SyntaxError, t, {}, "unexpected character '" + t.text + "'");
    }
    t.text = std::string(text.substr(pos, len));
    t.span.length = len;
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.span = {line, column, 0};
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree before name resolution

struct RawTerm {
  Rational coeff;
  Token name;
};

/// Empty means the literal 0.
struct RawComb {
  std::vector<RawTerm> terms;
};

struct RawBracket {
  Token keyword;
  Token a;
  Token b;
  RawComb value;
};

struct RawAlgebra {
  Token name;
  std::vector<Token> basis;
  std::vector<RawBracket> brackets;
};

struct RawMatrixAlgebra {
  Token name;
  Index size = 0;
  std::vector<Token> labels;
  std::vector<MatrixQi> generators;
};

struct RawSpan {
  Token name;
  Token of;
  std::vector<RawComb> vectors;
};

struct RawOperator {
  Token name;
  Token on;
  OperatorForm form = OperatorForm::Rules;
  std::vector<std::pair<Token, RawComb>> rules;
  RawComb d;
  MatrixQi a;
  MatrixQi b;
};

struct RawPair {
  Token name;
  Token algebra;
  Token subalgebra;
  std::optional<Token> complement;
  bool connected = true;
  std::vector<MatrixQ> reps;
};

struct RawDocument {
  std::vector<RawAlgebra> algebras;
  std::vector<RawMatrixAlgebra> matrix_algebras;
  std::vector<RawSpan> subalgebras;
  std::vector<RawSpan> complements;
  std::vector<RawOperator> operators;
  std::vector<RawPair> pairs;
  /// Item names in source order.
  std::vector<Token> names;
};

const std::vector<std::string> kItemKeywords{"'algebra'",    "'matrix_algebra'", "'subalgebra'",
                                             "'complement'", "'operator'",       "'pair'"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  RawDocument document() {
    RawDocument doc;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_word("algebra")) {
        doc.algebras.push_back(algebra());
        doc.names.push_back(doc.algebras.back().name);
      } else if (is_word("matrix_algebra")) {
        doc.matrix_algebras.push_back(matrix_algebra());
        doc.names.push_back(doc.matrix_algebras.back().name);
      } else if (is_word("subalgebra")) {
        doc.subalgebras.push_back(span_item("subalgebra"));
        doc.names.push_back(doc.subalgebras.back().name);
      } else if (is_word("complement")) {
        doc.complements.push_back(span_item("complement"));
        doc.names.push_back(doc.complements.back().name);
      } else if (is_word("operator")) {
        doc.operators.push_back(operator_item());
        doc.names.push_back(doc.operators.back().name);
      } else if (is_word("pair")) {
        doc.pairs.push_back(pair());
        doc.names.push_back(doc.pairs.back().name);
      } else {
        fail(DiagnosticKind::SyntaxError, t, kItemKeywords, "unexpected " + describe(t) + " at top level");
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Name && peek().text == w; }
  bool is_imaginary_unit(std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Name && peek(ahead).text == "i";
  }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    fail(DiagnosticKind::SyntaxError, peek(), std::move(expected), "unexpected " + describe(peek()));
  }

  Token expect_punct(std::string_view p) {
    if (!is_punct(p)) unexpected({"'" + std::string(p) + "'"});
    return next();
  }
  Token expect_word(std::string_view w) {
    if (!is_word(w)) unexpected({"'" + std::string(w) + "'"});
    return next();
  }
  Token expect_name() {
    if (is_imaginary_unit())
      fail(DiagnosticKind::SyntaxError, peek(), {"NAME"}, "'i' is reserved for the imaginary unit");
    if (peek().kind != Tok::Name) unexpected({"NAME"});
    return next();
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }

  Rational unsigned_rational() {
    if (peek().kind != Tok::Int) unexpected({"INT"});
    const Token num = next();
    if (!accept_punct("/")) return parse_rational(num.text);
    if (peek().kind != Tok::Int) unexpected({"INT"});
    const Token den = next();
    if (parse_rational(den.text).is_zero())
      fail(DiagnosticKind::SyntaxError, den, {"nonzero INT"}, "zero denominator in " + num.text + "/" + den.text);
    return parse_rational(num.text + "/" + den.text);
  }

  // rational | rational i | rational (+|-) rational i, plus the shorthands
  // i, -i, a+i and a-i that canonical printing produces.
  GaussianRational scalar(bool complex) {
    const bool negative = accept_punct("-");
    if (complex && is_imaginary_unit()) {
      next();
      return {Rational(0), Rational(negative ? -1 : 1)};
    }
    Rational re = unsigned_rational();
    if (negative) re = -re;
    if (!complex) return re;
    if (is_imaginary_unit()) {
      next();
      return {Rational(0), re};
    }
    if ((is_punct("+") || is_punct("-")) && (peek(1).kind == Tok::Int || is_imaginary_unit(1))) {
      const bool minus = next().text == "-";
      Rational im(1);
      if (!is_imaginary_unit()) im = unsigned_rational();
      if (!is_imaginary_unit()) unexpected({"'i'"});
      next();
      return {re, minus ? Rational(-im) : im};
    }
    return re;
  }

  Rational coefficient() {
    const Rational c = scalar(false).re();
    if (is_imaginary_unit())
      fail(DiagnosticKind::SyntaxError, peek(), {"'*'"}, "coefficients of linear combinations must be rational");
    return c;
  }

  RawComb comb() {
    RawComb out;
    if (peek().kind == Tok::Name && !is_imaginary_unit()) {
      out.terms.push_back({Rational(1), next()});
    } else {
      const Rational c = coefficient();
      if (!is_punct("*")) {
        if (!c.is_zero()) unexpected({"'*'"});
        return out;
      }
      next();
      out.terms.push_back({c, expect_name()});
    }
    while (is_punct("+") || is_punct("-")) {
      const bool minus = next().text == "-";
      Rational c(1);
      if (peek().kind != Tok::Name || is_imaginary_unit()) {
        c = coefficient();
        expect_punct("*");
      }
      out.terms.push_back({minus ? Rational(-c) : c, expect_name()});
    }
    return out;
  }

  std::vector<std::vector<GaussianRational>> matrix(bool complex) {
    std::vector<std::vector<GaussianRational>> rows;
    expect_punct("[");
    do {
      const Token open = expect_punct("[");
      std::vector<GaussianRational> row;
      do {
        row.push_back(scalar(complex));
      } while (accept_punct(","));
      if (!rows.empty() && row.size() != rows.front().size())
        fail(DiagnosticKind::SyntaxError, open, {std::to_string(rows.front().size()) + " entries"},
             "ragged matrix row");
      expect_punct("]");
      rows.push_back(std::move(row));
    } while (accept_punct(","));
    expect_punct("]");
    return rows;
  }

  MatrixQi square_matrix(Index size) {
    const Token start = peek();
    const auto rows = matrix(true);
    const auto n = static_cast<Index>(rows.size());
    if ((size > 0 && n != size) || static_cast<Index>(rows.front().size()) != n)
      fail(DiagnosticKind::SyntaxError, start,
           {size > 0 ? std::to_string(size) + "x" + std::to_string(size) + " matrix" : "square matrix"},
           "matrix has the wrong shape");
    MatrixQi m(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
  }

  MatrixQ rational_matrix() {
    const Token start = peek();
    const auto rows = matrix(false);
    const auto n = static_cast<Index>(rows.size());
    if (static_cast<Index>(rows.front().size()) != n)
      fail(DiagnosticKind::SyntaxError, start, {"square matrix"}, "matrix has the wrong shape");
    MatrixQ m(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].re();
    return m;
  }

  RawAlgebra algebra() {
    RawAlgebra a;
    expect_word("algebra");
    a.name = expect_name();
    expect_punct("{");
    expect_word("basis");
    a.basis.push_back(expect_name());
    while (!is_punct(";")) {
      if (peek().kind != Tok::Name) unexpected({"NAME", "';'"});
      a.basis.push_back(expect_name());
    }
    next();
    while (is_word("bracket")) {
      RawBracket b;
      b.keyword = next();
      expect_punct("[");
      b.a = expect_name();
      expect_punct(",");
      b.b = expect_name();
      expect_punct("]");
      expect_punct("=");
      b.value = comb();
      expect_punct(";");
      a.brackets.push_back(std::move(b));
    }
    if (!is_punct("}")) unexpected({"'bracket'", "'}'"});
    next();
    return a;
  }

  RawMatrixAlgebra matrix_algebra() {
    RawMatrixAlgebra m;
    expect_word("matrix_algebra");
    m.name = expect_name();
    expect_word("dim");
    expect_punct("=");
    if (peek().kind != Tok::Int) unexpected({"INT"});
    const Token size = next();
    if (size.text.size() > 2 || parse_rational(size.text).is_zero() || std::stoi(size.text) > kMaxAmbientDim)
      fail(DiagnosticKind::SyntaxError, size, {"INT in [1, 64]"}, "matrix size out of range");
    m.size = std::stoi(size.text);
    expect_punct("{");
    do {
      expect_word("gen");
      m.labels.push_back(expect_name());
      expect_punct("=");
      m.generators.push_back(square_matrix(m.size));
      expect_punct(";");
    } while (is_word("gen"));
    if (!is_punct("}")) unexpected({"'gen'", "'}'"});
    next();
    return m;
  }

  RawSpan span_item(std::string_view keyword) {
    RawSpan s;
    expect_word(keyword);
    s.name = expect_name();
    expect_word("of");
    s.of = expect_name();
    expect_punct("=");
    expect_word("span");
    expect_punct("(");
    do {
      s.vectors.push_back(comb());
    } while (accept_punct(","));
    expect_punct(")");
    expect_punct(";");
    return s;
  }

  RawOperator operator_item() {
    RawOperator op;
    expect_word("operator");
    op.name = expect_name();
    expect_word("on");
    op.on = expect_name();
    if (accept_punct("{")) {
      op.form = OperatorForm::Rules;
      do {
        Token label = expect_name();
        expect_punct("->");
        RawComb image = comb();
        expect_punct(";");
        op.rules.emplace_back(std::move(label), std::move(image));
      } while (peek().kind == Tok::Name);
      if (!is_punct("}")) unexpected({"NAME", "'}'"});
      next();
    } else if (accept_punct("=")) {
      if (is_word("ad")) {
        next();
        op.form = OperatorForm::Ad;
        expect_punct("(");
        op.d = comb();
        expect_punct(")");
      } else if (is_word("left") || is_word("right")) {
        op.form = next().text == "left" ? OperatorForm::Left : OperatorForm::Right;
        expect_punct("(");
        (op.form == OperatorForm::Left ? op.a : op.b) = square_matrix(0);
        expect_punct(")");
      } else if (is_word("sandwich")) {
        next();
        op.form = OperatorForm::Sandwich;
        expect_punct("(");
        op.a = square_matrix(0);
        expect_punct(",");
        op.b = square_matrix(op.a.rows());
        expect_punct(")");
      } else {
        unexpected({"'ad'", "'left'", "'right'", "'sandwich'"});
      }
    } else {
      unexpected({"'{'", "'='"});
    }
    accept_punct(";");
    return op;
  }

  RawPair pair() {
    RawPair p;
    expect_word("pair");
    p.name = expect_name();
    expect_punct("=");
    expect_punct("(");
    p.algebra = expect_name();
    expect_punct(",");
    p.subalgebra = expect_name();
    // Optional clauses, in this order.
    int stage = 0;
    while (accept_punct(",")) {
      std::vector<std::string> allowed;
      if (stage < 1) allowed.emplace_back("'complement'");
      if (stage < 2) allowed.emplace_back("'connected'");
      if (stage < 3) allowed.emplace_back("'component_reps'");
      if (stage < 1 && is_word("complement")) {
        next();
        p.complement = expect_name();
        stage = 1;
      } else if (stage < 2 && is_word("connected")) {
        next();
        expect_punct("=");
        if (is_word("true") || is_word("false")) {
          p.connected = next().text == "true";
        } else {
          unexpected({"'true'", "'false'"});
        }
        stage = 2;
      } else if (stage < 3 && is_word("component_reps")) {
        next();
        expect_punct("=");
        expect_punct("(");
        do {
          p.reps.push_back(rational_matrix());
        } while (accept_punct(","));
        expect_punct(")");
        stage = 3;
      } else {
        unexpected(std::move(allowed));
      }
    }
    if (!is_punct(")")) unexpected({"','", "')'"});
    next();
    expect_punct(";");
    return p;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Name resolution

class Resolver {
 public:
  explicit Resolver(const RawDocument& raw) : raw_(raw) {}

  SpecDocument run() {
    std::map<std::string, Token> seen;
    for (const Token& t : raw_.names) {
      const auto [it, inserted] = seen.emplace(t.text, t);
      if (!inserted)
        fail(DiagnosticKind::DuplicateName, t, {},
             "'" + t.text + "' is already declared at line " + std::to_string(it->second.span.line));
    }
    for (const RawAlgebra& a : raw_.algebras) bases_[a.name.text] = labels(a.basis);
    for (const RawMatrixAlgebra& m : raw_.matrix_algebras) bases_[m.name.text] = labels(m.labels);

    SpecDocument doc;
    for (const Token& t : raw_.names) doc.spans[t.text] = t.span;
    for (const RawAlgebra& a : raw_.algebras) doc.algebras.push_back(algebra(a));
    for (const RawMatrixAlgebra& m : raw_.matrix_algebras)
      doc.matrix_algebras.push_back({m.name.text, m.size, labels(m.labels), m.generators});
    for (const RawSpan& s : raw_.subalgebras) doc.subalgebras.push_back(span_decl(s));
    for (const RawSpan& s : raw_.complements) doc.complements.push_back(span_decl(s));
    for (const RawOperator& op : raw_.operators) doc.operators.push_back(operator_decl(op));
    for (const RawPair& p : raw_.pairs) doc.pairs.push_back(pair_decl(p));

    auto by_name = [](auto& items) {
      std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
    };
    by_name(doc.algebras);
    by_name(doc.matrix_algebras);
    by_name(doc.subalgebras);
    by_name(doc.complements);
    by_name(doc.operators);
    by_name(doc.pairs);
    return doc;
  }

 private:
  static std::vector<std::string> labels(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    std::set<std::string> unique;
    for (const Token& t : tokens) {
      if (!unique.insert(t.text).second)
        fail(DiagnosticKind::DuplicateName, t, {}, "basis label '" + t.text + "' appears twice");
      out.push_back(t.text);
    }
    return out;
  }

  const std::vector<std::string>& basis(const Token& algebra) const {
    const auto it = bases_.find(algebra.text);
    if (it == bases_.end()) fail(DiagnosticKind::UnresolvedReference, algebra, {}, "no algebra named '" + algebra.text + "'");
    return it->second;
  }

  static Index index_of(const std::vector<std::string>& basis, const Token& label, const std::string& algebra) {
    const auto it = std::find(basis.begin(), basis.end(), label.text);
    if (it == basis.end())
      fail(DiagnosticKind::UnresolvedReference, label, {},
           "'" + label.text + "' is not a basis element of '" + algebra + "'");
    return static_cast<Index>(it - basis.begin());
  }

  static VectorQ vector(const std::vector<std::string>& basis, const RawComb& comb, const std::string& algebra) {
    VectorQ v = VectorQ::Constant(static_cast<Index>(basis.size()), Rational(0));
    for (const RawTerm& t : comb.terms) v[index_of(basis, t.name, algebra)] += t.coeff;
    return v;
  }

  AlgebraDecl algebra(const RawAlgebra& raw) const {
    AlgebraDecl a{raw.name.text, labels(raw.basis), {}};
    for (const RawBracket& b : raw.brackets) {
      Index i = index_of(a.basis, b.a, a.name);
      Index j = index_of(a.basis, b.b, a.name);
      VectorQ value = vector(a.basis, b.value, a.name);
      if (i == j) {
        if (!is_zero_vector(value))
          fail(DiagnosticKind::InconsistentBracket, b.keyword, {},
               "[" + b.a.text + "," + b.a.text + "] must be zero");
        continue;
      }
      if (i > j) {
        std::swap(i, j);
        value = -value;
      }
      const auto [it, inserted] = a.brackets.emplace(std::make_pair(i, j), value);
      if (!inserted && !same(it->second, value))
        fail(DiagnosticKind::InconsistentBracket, b.keyword, {},
             "[" + b.a.text + "," + b.b.text + "] contradicts an earlier bracket of the same pair");
    }
    std::erase_if(a.brackets, [](const auto& kv) { return is_zero_vector(kv.second); });
    return a;
  }

  SpanDecl span_decl(const RawSpan& raw) const {
    const auto& b = basis(raw.of);
    SpanDecl s{raw.name.text, raw.of.text, {}};
    for (const RawComb& c : raw.vectors) s.vectors.push_back(vector(b, c, raw.of.text));
    return s;
  }

  OperatorDecl operator_decl(const RawOperator& raw) const {
    const auto& b = basis(raw.on);
    OperatorDecl op;
    op.name = raw.name.text;
    op.algebra = raw.on.text;
    op.form = raw.form;
    op.a = raw.a;
    op.b = raw.b;
    if (raw.form == OperatorForm::Ad) op.d = vector(b, raw.d, op.algebra);
    for (const auto& [label, image] : raw.rules) {
      const Index k = index_of(b, label, op.algebra);
      if (!op.rules.emplace(k, vector(b, image, op.algebra)).second)
        fail(DiagnosticKind::DuplicateName, label, {}, "a second rule for '" + label.text + "'");
    }
    return op;
  }

  const RawSpan* find_span(const std::vector<RawSpan>& items, const Token& name) const {
    for (const RawSpan& s : items)
      if (s.name.text == name.text) return &s;
    return nullptr;
  }

  PairDecl pair_decl(const RawPair& raw) const {
    (void)basis(raw.algebra);
    const RawSpan* k = find_span(raw_.subalgebras, raw.subalgebra);
    if (!k || k->of.text != raw.algebra.text)
      fail(DiagnosticKind::UnresolvedReference, raw.subalgebra, {},
           "no subalgebra '" + raw.subalgebra.text + "' of '" + raw.algebra.text + "'");
    PairDecl p{raw.name.text, raw.algebra.text, raw.subalgebra.text, std::nullopt, raw.connected, raw.reps};
    if (raw.complement) {
      const RawSpan* m = find_span(raw_.complements, *raw.complement);
      if (!m || m->of.text != raw.algebra.text)
        fail(DiagnosticKind::UnresolvedReference, *raw.complement, {},
             "no complement '" + raw.complement->text + "' of '" + raw.algebra.text + "'");
      p.complement = raw.complement->text;
    }
    return p;
  }

  const RawDocument& raw_;
  std::map<std::string, std::vector<std::string>> bases_;
};

}  // namespace

SpecDocument parse(std::string_view text) { return Resolver(Parser(lex(text)).document()).run(); }

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string comb_text(const std::vector<std::string>& basis, const VectorQ& v) {
  std::string out;
  for (Index k = 0; k < v.size(); ++k) {
    const Rational& c = v[k];
    if (c.is_zero()) continue;
    const std::string& name = basis[static_cast<std::size_t>(k)];
    if (out.empty()) {
      out = c == Rational(1) ? name : c.str() + "*" + name;
    } else {
      const Rational mag = c.sign() < 0 ? Rational(-c) : c;
      out += c.sign() < 0 ? " - " : " + ";
      out += mag == Rational(1) ? name : mag.str() + "*" + name;
    }
  }
  return out.empty() ? "0" : out;
}

template <class S>
std::string matrix_text(const Matrix<S>& m) {
  std::string out = "[";
  for (Index r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (Index c = 0; c < m.cols(); ++c) out += (c ? "," : "") + m(r, c).str();
    out += "]";
  }
  return out + "]";
}

}  // namespace

std::string serialize(const SpecDocument& doc) {
  std::ostringstream os;
  for (const AlgebraDecl& a : doc.algebras) {
    os << "algebra " << a.name << " {\n  basis";
    for (const std::string& b : a.basis) os << ' ' << b;
    os << ";\n";
    for (const auto& [ij, v] : a.brackets)
      os << "  bracket [" << a.basis[static_cast<std::size_t>(ij.first)] << ','
         << a.basis[static_cast<std::size_t>(ij.second)] << "] = " << comb_text(a.basis, v) << ";\n";
    os << "}\n";
  }
  for (const MatrixAlgebraDecl& m : doc.matrix_algebras) {
    os << "matrix_algebra " << m.name << " dim = " << m.size << " {\n";
    for (std::size_t k = 0; k < m.labels.size(); ++k)
      os << "  gen " << m.labels[k] << " = " << matrix_text(m.generators[k]) << ";\n";
    os << "}\n";
  }
  auto spans = [&](const char* keyword, const std::vector<SpanDecl>& items) {
    for (const SpanDecl& s : items) {
      const auto& basis = *doc.basis_of(s.algebra);
      os << keyword << ' ' << s.name << " of " << s.algebra << " = span(";
      for (std::size_t k = 0; k < s.vectors.size(); ++k) os << (k ? ", " : "") << comb_text(basis, s.vectors[k]);
      os << ");\n";
    }
  };
  spans("subalgebra", doc.subalgebras);
  spans("complement", doc.complements);
  for (const OperatorDecl& op : doc.operators) {
    const auto& basis = *doc.basis_of(op.algebra);
    os << "operator " << op.name << " on " << op.algebra;
    switch (op.form) {
      case OperatorForm::Rules:
        os << " {\n";
        for (const auto& [k, v] : op.rules)
          os << "  " << basis[static_cast<std::size_t>(k)] << " -> " << comb_text(basis, v) << ";\n";
        os << "}\n";
        break;
      case OperatorForm::Ad: os << " = ad(" << comb_text(basis, op.d) << ");\n"; break;
      case OperatorForm::Left: os << " = left(" << matrix_text(op.a) << ");\n"; break;
      case OperatorForm::Right: os << " = right(" << matrix_text(op.b) << ");\n"; break;
      case OperatorForm::Sandwich:
        os << " = sandwich(" << matrix_text(op.a) << ", " << matrix_text(op.b) << ");\n";
        break;
    }
  }
  for (const PairDecl& p : doc.pairs) {
    os << "pair " << p.name << " = (" << p.algebra << ", " << p.subalgebra;
    if (p.complement) os << ", complement " << *p.complement;
    os << ", connected = " << (p.connected ? "true" : "false");
    if (!p.component_reps.empty()) {
      os << ", component_reps = (";
      for (std::size_t k = 0; k < p.component_reps.size(); ++k)
        os << (k ? ", " : "") << matrix_text(p.component_reps[k]);
      os << ')';
    }
    os << ");\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Compilation

CompileError::CompileError(std::string kind, const std::string& what, std::string item, SourceSpan span)
    : Error(std::move(kind), item + ": " + what), item(std::move(item)), span(span) {}

namespace {

template <class F>
auto build(const SpecDocument& doc, const std::string& item, F&& f) {
  const auto it = doc.spans.find(item);
  const SourceSpan span = it == doc.spans.end() ? SourceSpan{} : it->second;
  try {
    return f();
  } catch (const Error& e) {
    throw CompileError(e.kind(), e.what(), item, span);
  } catch (const DimensionCapExceeded& e) {
    throw CompileError("DimensionCapExceeded", e.what(), item, span);
  } catch (const std::invalid_argument& e) {
    throw CompileError("InvalidArgument", e.what(), item, span);
  }
}

}  // namespace

Workspace compile(const SpecDocument& doc) {
  Workspace ws;
  for (const AlgebraDecl& a : doc.algebras) {
    ws.algebras[a.name] = build(doc, a.name, [&] {
      StructureConstants c(static_cast<Index>(a.basis.size()));
      for (const auto& [ij, v] : a.brackets) c.set_bracket(ij.first, ij.second, v);
      return std::make_shared<const LieAlgebra>(a.name, a.basis, std::move(c));
    });
  }
  for (const MatrixAlgebraDecl& m : doc.matrix_algebras)
    ws.algebras[m.name] =
        build(doc, m.name, [&] { return from_matrix_generators(m.name, m.size, m.labels, m.generators); });
  for (const SpanDecl& s : doc.subalgebras)
    ws.subalgebras.emplace(s.name, build(doc, s.name, [&] { return make_subalgebra(ws.algebras.at(s.algebra), s.vectors); }));
  for (const SpanDecl& s : doc.complements)
    ws.complements.emplace(s.name, build(doc, s.name, [&] {
                             return SubspaceQ::span(ws.algebras.at(s.algebra)->dim(), s.vectors);
                           }));
  for (const OperatorDecl& op : doc.operators) {
    const LieAlgebraPtr& g = ws.algebras.at(op.algebra);
    CompiledOperator compiled = build(doc, op.name, [&] {
      switch (op.form) {
        case OperatorForm::Rules: {
          std::vector<std::pair<std::string, VectorQ>> rules;
          for (const auto& [k, v] : op.rules) rules.emplace_back(g->labels()[static_cast<std::size_t>(k)], v);
          return CompiledOperator{operator_from_rules(g, rules), std::nullopt};
        }
        case OperatorForm::Ad: return CompiledOperator{operator_ad(g, op.d), op.d};
        case OperatorForm::Left: return CompiledOperator{operator_left_mult(g, op.a), std::nullopt};
        case OperatorForm::Right: return CompiledOperator{operator_right_mult(g, op.b), std::nullopt};
        case OperatorForm::Sandwich: return CompiledOperator{operator_sandwich(g, op.a, op.b), std::nullopt};
      }
      return CompiledOperator{zero_operator(g), std::nullopt};
    });
    ws.operators.emplace(op.name, std::move(compiled));
  }
  for (const PairDecl& p : doc.pairs) {
    ws.pairs.emplace(p.name, build(doc, p.name, [&] {
                       std::optional<SubspaceQ> m;
                       if (p.complement) m = ws.complements.at(*p.complement);
                       return HomogeneousPair(ws.subalgebras.at(p.subalgebra), m, p.connected, p.component_reps);
                     }));
  }
  return ws;
}

}  // namespace liehom::spec
