#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liehom/operators.hpp"

namespace liehom::spec {

/// 1-based position of a token in the source text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class DiagnosticKind { SyntaxError, DuplicateName, UnresolvedReference, InconsistentBracket };

std::string to_string(DiagnosticKind kind);

class ParseError : public Error {
 public:
  ParseError(DiagnosticKind kind, SourceSpan span, std::string token, std::vector<std::string> expected,
             const std::string& message);

  DiagnosticKind diagnostic;
  SourceSpan span;
  /// Offending token as written; empty at end of input.
  std::string token;
  std::vector<std::string> expected;
  std::string message;
};

/// "path:line:col: Kind: message"
std::string format_diagnostic(const ParseError& e, std::string_view path = "<input>");

// Linear combinations are stored as coordinate vectors in the basis of the
// algebra they refer to, so equal combinations compare equal however written.

struct AlgebraDecl {
  std::string name;
  std::vector<std::string> basis;
  /// [b_i, b_j] for i < j; zero brackets are omitted.
  std::map<std::pair<Index, Index>, VectorQ> brackets;
  friend bool operator==(const AlgebraDecl&, const AlgebraDecl&);
};

struct MatrixAlgebraDecl {
  std::string name;
  Index size = 0;
  std::vector<std::string> labels;
  std::vector<MatrixQi> generators;
  friend bool operator==(const MatrixAlgebraDecl&, const MatrixAlgebraDecl&);
};

/// `subalgebra` and `complement` share this shape.
struct SpanDecl {
  std::string name;
  std::string algebra;
  std::vector<VectorQ> vectors;
  friend bool operator==(const SpanDecl&, const SpanDecl&);
};

enum class OperatorForm { Rules, Ad, Left, Right, Sandwich };

struct OperatorDecl {
  std::string name;
  std::string algebra;
  OperatorForm form = OperatorForm::Rules;
  /// Rules form: images indexed by basis position.
  std::map<Index, VectorQ> rules;
  /// Ad form.
  VectorQ d;
  /// Left and sandwich use `a`; right and sandwich use `b`.
  MatrixQi a;
  MatrixQi b;
  friend bool operator==(const OperatorDecl&, const OperatorDecl&);
};

struct PairDecl {
  std::string name;
  std::string algebra;
  std::string subalgebra;
  std::optional<std::string> complement;
  bool connected = true;
  /// Ad_k on g for representatives of the non-identity components of K.
  std::vector<MatrixQ> component_reps;
  friend bool operator==(const PairDecl&, const PairDecl&);
};

/// A parsed `.lie` document. Items are kept sorted by name within each kind;
/// names share one namespace. Equality ignores source positions.
struct SpecDocument {
  std::vector<AlgebraDecl> algebras;
  std::vector<MatrixAlgebraDecl> matrix_algebras;
  std::vector<SpanDecl> subalgebras;
  std::vector<SpanDecl> complements;
  std::vector<OperatorDecl> operators;
  std::vector<PairDecl> pairs;
  /// Position of each item's name token.
  std::map<std::string, SourceSpan> spans;

  [[nodiscard]] bool empty() const;
  /// Basis labels of an algebra or matrix algebra, if `name` is one.
  [[nodiscard]] const std::vector<std::string>* basis_of(const std::string& name) const;

  friend bool operator==(const SpecDocument& a, const SpecDocument& b);
};

/// Parses the `.lie` format; throws ParseError on the first problem found.
SpecDocument parse(std::string_view text);

/// Canonical text: kinds in declaration order of the grammar, names sorted,
/// one declaration per line, brackets only for i < j.
std::string serialize(const SpecDocument& doc);

/// A domain error raised while building an item, tagged with the item.
class CompileError : public Error {
 public:
  CompileError(std::string kind, const std::string& what, std::string item, SourceSpan span);
  std::string item;
  SourceSpan span;
};

struct CompiledOperator {
  LinearOperator op;
  /// Set for operators declared as ad(d).
  std::optional<VectorQ> ad;
};

/// Library objects built from a document.
struct Workspace {
  std::map<std::string, LieAlgebraPtr> algebras;
  std::map<std::string, Subalgebra> subalgebras;
  std::map<std::string, SubspaceQ> complements;
  std::map<std::string, CompiledOperator> operators;
  std::map<std::string, HomogeneousPair> pairs;
};

/// Builds every item; throws CompileError when the library rejects one.
Workspace compile(const SpecDocument& doc);

}  // namespace liehom::spec
