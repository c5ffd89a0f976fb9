#pragma once

/// @file presentation_format.hpp
/// @brief Declarative text format for algebra presentations.
///
/// A document is a sequence of lines; '#' starts a comment.  Statements:
///
///     name IDENT                      (must come first)
///     prime INT
///     extension INT
///     kind modes | affine | clifford
///     central IDENT                   (kind modes only)
///     generator IDENT even|odd weight RAT offset RAT lattice RAT twist RAT
///     generator IDENT even|odd        (kinds affine and clifford)
///     bracket IDENT IDENT = RHS
///     form IDENT IDENT = RAT          (kinds affine and clifford)
///     order INT                       (order of the automorphism)
///     tau IDENT IDENT = RAT           (coefficient of the second basis vector in tau(first))
///
/// For kind modes, RHS is a sum of terms  coef * X[mode]  or  coef * central,
/// or the literal 0.  Coefficients and modes use the grammar of Expr.
/// For the finite kinds, RHS is a sum of  RAT * IDENT  terms.

#include "modzhu/lie.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modzhu {

/// @brief Error with a 1-based source position.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& kind, int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// @brief Malformed text (reports the expected tokens).
class SyntaxError : public FormatError {
 public:
  SyntaxError(int line, int column, const std::string& msg) : FormatError("syntax error", line, column, msg) {}
};

/// @brief Well-formed text describing an invalid presentation.
class SemanticError : public FormatError {
 public:
  SemanticError(int line, int column, const std::string& msg) : FormatError("semantic error", line, column, msg) {}
};

/// @brief Source position of a document element.
struct SourcePos {
  int line = 0;
  int column = 0;
};

/// @brief A generator or central reference, with a mode when it names a generator mode.
struct DocRef {
  std::string name;
  ExprPtr mode;
  SourcePos pos;
};

struct DocTerm {
  ExprPtr coef;
  DocRef ref;
};

struct DocBracket {
  std::string left, right;
  std::vector<DocTerm> terms;
  SourcePos pos;
};

struct DocGenerator {
  std::string name;
  int parity = 0;
  bool has_grading = false;
  Exponent weight, offset, lattice, twist;
  SourcePos pos;
};

/// @brief An entry of the form or of the automorphism matrix.
struct DocEntry {
  std::string first, second;
  DScalar value;
  SourcePos pos;
};

/// @brief Parsed document; equality ignores source positions.
struct PresentationDocument {
  std::string name;
  std::optional<unsigned> prime;
  unsigned extension = 1;
  std::string kind = "modes";
  std::vector<std::string> centrals;
  std::vector<DocGenerator> generators;
  std::vector<DocBracket> brackets;
  std::vector<DocEntry> form;
  unsigned order = 1;
  std::vector<DocEntry> tau;
  /// Positions of literal nodes, used for error messages only.
  std::map<const Expr*, SourcePos> literal_positions;
  SourcePos prime_pos;

  bool operator==(const PresentationDocument& o) const;
};

/// @brief Parses a document; throws SyntaxError.
PresentationDocument parse_presentation(const std::string& text);

/// @brief Canonical text; parse_presentation(print_presentation(d)) == d.
std::string print_presentation(const PresentationDocument& doc);

/// @brief Builds and validates the presentation; throws SemanticError.
/// @param prime_override replaces the document prime when given.
Presentation build_presentation(const PresentationDocument& doc, std::optional<unsigned> prime_override = {});

/// @brief Document describing a presentation whose terms all have unit scale.
PresentationDocument document_from(const Presentation& P);

/// @brief Reads a file into a string; throws std::runtime_error.
std::string read_text_file(const std::string& path);

}  // namespace modzhu
