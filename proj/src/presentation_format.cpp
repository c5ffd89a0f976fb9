#include "modzhu/presentation_format.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace modzhu {

FormatError::FormatError(const std::string& kind, int line, int column, const std::string& msg)
    : std::runtime_error(kind + " at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         msg),
      line_(line),
      column_(column) {}

namespace {

const std::set<std::string> kReserved = {"m", "n", "binom", "delta"};
const char* kStatements = "'prime', 'extension', 'kind', 'central', 'generator', 'bracket', 'form', 'order' or 'tau'";

struct Token {
  enum Type { Ident, Int, Punct, End } type = End;
  std::string text;
  int line = 0;
  int column = 0;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    Token t;
    t.line = lineno;
    t.column = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      t.type = Token::Ident;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      t.type = Token::Int;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::string("+-*/()[],=").find(c) != std::string::npos) {
      t.type = Token::Punct;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw SyntaxError(lineno, t.column, std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.type = Token::End;
  end.line = lineno;
  end.column = static_cast<int>(line.size()) + 1;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  if (t.type == Token::End) return "end of line";
  return "'" + t.text + "'";
}

/// Recursive descent over the tokens of one statement.
class LineParser {
 public:
  LineParser(std::vector<Token> toks, PresentationDocument& doc) : toks_(std::move(toks)), doc_(doc) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_punct(const char* s) const { return peek().type == Token::Punct && peek().text == s; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().column, "found " + describe(peek()) + ", expected " + expected);
  }

  void expect_punct(const char* s) {
    if (!at_punct(s)) fail(std::string("'") + s + "'");
    next();
  }

  std::string identifier(const std::string& what, bool allow_reserved = false) {
    if (peek().type != Token::Ident) fail(what);
    if (!allow_reserved && kReserved.count(peek().text))
      throw SyntaxError(peek().line, peek().column, "'" + peek().text + "' is reserved");
    return next().text;
  }

  void keyword(const char* k) {
    if (peek().type != Token::Ident || peek().text != k) fail(std::string("'") + k + "'");
    next();
  }

  unsigned natural(const std::string& what) {
    if (peek().type != Token::Int) fail(what);
    const Token t = next();
    if (t.text.size() > 9) throw SyntaxError(t.line, t.column, "integer too large");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  DScalar rational() {
    bool negative = false;
    if (at_punct("-")) {
      next();
      negative = true;
    }
    if (peek().type != Token::Int) fail("a rational number");
    const Token t = next();
    DScalar v = parse_dscalar(t.text);
    if (at_punct("/")) {
      next();
      if (peek().type != Token::Int) fail("a denominator");
      const Token d = next();
      DScalar den = parse_dscalar(d.text);
      if (den == 0) throw SyntaxError(d.line, d.column, "zero denominator");
      v /= den;
    }
    return negative ? DScalar(-v) : v;
  }

  Exponent exponent() {
    const Token t = peek();
    DScalar v = rational();
    try {
      return to_exponent(v);
    } catch (const PresentationError&) {
      throw SyntaxError(t.line, t.column, "number out of range");
    }
  }

  void end() {
    if (peek().type != Token::End) fail("end of line");
  }

  ExprPtr note(ExprPtr e, const Token& t) {
    if (e->kind() == Expr::Kind::Literal) doc_.literal_positions[e.get()] = {t.line, t.column};
    return e;
  }

  ExprPtr expr() {
    ExprPtr a = term();
    while (at_punct("+") || at_punct("-")) {
      bool plus = next().text == "+";
      ExprPtr b = term();
      a = plus ? Expr::add(a, b) : Expr::sub(a, b);
    }
    return a;
  }

  ExprPtr term() {
    ExprPtr a = unary();
    while (at_punct("*")) {
      next();
      a = Expr::mul(a, unary());
    }
    return a;
  }

  ExprPtr unary() {
    if (at_punct("-")) {
      const Token t = next();
      return note(Expr::neg(unary()), t);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token t = peek();
    if (t.type == Token::Int) {
      DScalar v = parse_dscalar(next().text);
      if (at_punct("/")) {
        next();
        if (peek().type != Token::Int) fail("a denominator");
        const Token d = next();
        DScalar den = parse_dscalar(d.text);
        if (den == 0) throw SyntaxError(d.line, d.column, "zero denominator");
        v /= den;
      }
      return note(Expr::lit(v), t);
    }
    if (at_punct("(")) {
      next();
      ExprPtr e = expr();
      expect_punct(")");
      return e;
    }
    if (t.type == Token::Ident) {
      if (t.text == "m") {
        next();
        return Expr::m();
      }
      if (t.text == "n") {
        next();
        return Expr::n();
      }
      if (t.text == "binom") {
        next();
        expect_punct("(");
        ExprPtr e = expr();
        expect_punct(",");
        unsigned k = natural("a natural number");
        expect_punct(")");
        return Expr::binom(e, k);
      }
      if (t.text == "delta") {
        next();
        expect_punct("(");
        ExprPtr e = expr();
        expect_punct(")");
        return Expr::delta(e);
      }
    }
    fail("a number, 'm', 'n', 'binom', 'delta' or '('");
  }

  /// One term of a bracket right-hand side; sign is applied by the caller.
  DocTerm rterm() {
    std::vector<ExprPtr> factors;
    std::optional<DocRef> ref;
    for (;;) {
      const Token t = peek();
      if (t.type == Token::Ident && !kReserved.count(t.text)) {
        if (ref) throw SyntaxError(t.line, t.column, "a term has exactly one generator or central reference");
        DocRef r;
        r.name = next().text;
        r.pos = {t.line, t.column};
        if (at_punct("[")) {
          next();
          r.mode = expr();
          expect_punct("]");
        }
        ref = std::move(r);
      } else {
        factors.push_back(unary());
      }
      if (!at_punct("*")) break;
      next();
    }
    if (!ref) fail("a generator or central reference in the term");
    DocTerm term;
    term.ref = std::move(*ref);
    if (factors.empty()) {
      term.coef = Expr::lit(1);
    } else {
      term.coef = factors[0];
      for (std::size_t i = 1; i < factors.size(); ++i) term.coef = Expr::mul(term.coef, factors[i]);
    }
    return term;
  }

  std::vector<DocTerm> rhs() {
    std::vector<DocTerm> out;
    if (peek().type == Token::Int && peek().text == "0" && toks_[pos_ + 1].type == Token::End) {
      next();
      return out;
    }
    bool negative = false;
    if (at_punct("-")) {
      next();
      negative = true;
    }
    for (;;) {
      DocTerm t = rterm();
      if (negative) {
        ExprPtr c = Expr::neg(t.coef);
        if (c->kind() == Expr::Kind::Literal && doc_.literal_positions.count(t.coef.get()))
          doc_.literal_positions[c.get()] = doc_.literal_positions[t.coef.get()];
        t.coef = c;
      }
      out.push_back(std::move(t));
      if (at_punct("+")) {
        negative = false;
      } else if (at_punct("-")) {
        negative = true;
      } else {
        break;
      }
      next();
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  PresentationDocument& doc_;
};

std::string print_term_list(const std::vector<DocTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const DocTerm& t = terms[i];
    std::string ref = t.ref.name;
    if (t.ref.mode) ref += "[" + t.ref.mode->print() + "]";
    const Expr& c = *t.coef;
    bool negative = false;
    std::string coef;
    if (c.kind() == Expr::Kind::Literal) {
      DScalar v = c.value();
      if (v < 0) {
        negative = true;
        v = -v;
      }
      if (v != 1) coef = format_dscalar(v);
    } else if (c.kind() == Expr::Kind::Neg) {
      negative = true;
      coef = c.args()[0]->print_at(2);
    } else {
      coef = c.print_at(2);
    }
    // A leading minus sign is read as the sign of the whole first term.
    if (i == 0 && !negative && !coef.empty() && coef[0] == '-') coef = "(" + coef + ")";
    if (i == 0)
      out += negative ? "- " : "";
    else
      out += negative ? " - " : " + ";
    out += coef.empty() ? ref : coef + " * " + ref;
  }
  return out;
}

bool terms_equal(const std::vector<DocTerm>& a, const std::vector<DocTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].ref.name != b[i].ref.name || !expr_equal(a[i].coef, b[i].coef) ||
        !expr_equal(a[i].ref.mode, b[i].ref.mode))
      return false;
  }
  return true;
}

}  // namespace

bool PresentationDocument::operator==(const PresentationDocument& o) const {
  if (name != o.name || prime != o.prime || extension != o.extension || kind != o.kind || centrals != o.centrals ||
      order != o.order)
    return false;
  if (generators.size() != o.generators.size() || brackets.size() != o.brackets.size() ||
      form.size() != o.form.size() || tau.size() != o.tau.size())
    return false;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto &a = generators[i], &b = o.generators[i];
    if (a.name != b.name || a.parity != b.parity || a.has_grading != b.has_grading) return false;
    if (a.has_grading && (a.weight != b.weight || a.offset != b.offset || a.lattice != b.lattice || a.twist != b.twist))
      return false;
  }
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    const auto &a = brackets[i], &b = o.brackets[i];
    if (a.left != b.left || a.right != b.right || !terms_equal(a.terms, b.terms)) return false;
  }
  auto entries_equal = [](const std::vector<DocEntry>& a, const std::vector<DocEntry>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || a[i].second != b[i].second || a[i].value != b[i].value) return false;
    return true;
  };
  return entries_equal(form, o.form) && entries_equal(tau, o.tau);
}

PresentationDocument parse_presentation(const std::string& text) {
  PresentationDocument doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool named = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize_line(line, lineno);
    if (toks.size() == 1) continue;
    LineParser p(std::move(toks), doc);
    const Token head = p.peek();
    if (!named) {
      p.keyword("name");
      doc.name = p.identifier("a document name", true);
      p.end();
      named = true;
      continue;
    }
    if (head.type != Token::Ident) p.fail(kStatements);
    const std::string key = p.next().text;
    if (key == "prime") {
      doc.prime = p.natural("a prime");
      doc.prime_pos = {head.line, head.column};
    } else if (key == "extension") {
      doc.extension = p.natural("an extension degree");
      if (doc.extension == 0) throw SyntaxError(head.line, head.column, "extension degree must be positive");
    } else if (key == "kind") {
      const Token t = p.peek();
      std::string k = p.identifier("'modes', 'affine' or 'clifford'");
      if (k != "modes" && k != "affine" && k != "clifford")
        throw SyntaxError(t.line, t.column, "found '" + k + "', expected 'modes', 'affine' or 'clifford'");
      doc.kind = k;
    } else if (key == "central") {
      doc.centrals.push_back(p.identifier("a central symbol"));
    } else if (key == "generator") {
      DocGenerator g;
      g.pos = {head.line, head.column};
      g.name = p.identifier("a generator name");
      const Token t = p.peek();
      std::string par = p.identifier("'even' or 'odd'");
      if (par != "even" && par != "odd") throw SyntaxError(t.line, t.column, "found '" + par + "', expected 'even' or 'odd'");
      g.parity = par == "odd";
      if (p.peek().type != Token::End) {
        g.has_grading = true;
        p.keyword("weight");
        g.weight = p.exponent();
        p.keyword("offset");
        g.offset = p.exponent();
        p.keyword("lattice");
        g.lattice = p.exponent();
        p.keyword("twist");
        g.twist = p.exponent();
      }
      doc.generators.push_back(g);
    } else if (key == "bracket") {
      DocBracket b;
      b.pos = {head.line, head.column};
      b.left = p.identifier("a generator name");
      b.right = p.identifier("a generator name");
      p.expect_punct("=");
      b.terms = p.rhs();
      doc.brackets.push_back(std::move(b));
    } else if (key == "form" || key == "tau") {
      DocEntry e;
      e.pos = {head.line, head.column};
      e.first = p.identifier("a generator name");
      e.second = p.identifier("a generator name");
      p.expect_punct("=");
      e.value = p.rational();
      (key == "form" ? doc.form : doc.tau).push_back(e);
    } else if (key == "order") {
      doc.order = p.natural("a positive order");
      if (doc.order == 0) throw SyntaxError(head.line, head.column, "order must be positive");
    } else {
      throw SyntaxError(head.line, head.column, "unknown statement '" + key + "', expected " + kStatements);
    }
    p.end();
  }
  if (!named) throw SyntaxError(lineno + 1, 1, "unexpected end of input, expected 'name'");
  return doc;
}

std::string print_presentation(const PresentationDocument& doc) {
  std::ostringstream os;
  os << "name " << doc.name << "\n";
  if (doc.prime) os << "prime " << *doc.prime << "\n";
  os << "extension " << doc.extension << "\n";
  os << "kind " << doc.kind << "\n";
  for (const auto& c : doc.centrals) os << "central " << c << "\n";
  for (const auto& g : doc.generators) {
    os << "generator " << g.name << (g.parity ? " odd" : " even");
    if (g.has_grading)
      os << " weight " << format_exponent(g.weight) << " offset " << format_exponent(g.offset) << " lattice "
         << format_exponent(g.lattice) << " twist " << format_exponent(g.twist);
    os << "\n";
  }
  for (const auto& b : doc.brackets) os << "bracket " << b.left << " " << b.right << " = " << print_term_list(b.terms) << "\n";
  for (const auto& e : doc.form) os << "form " << e.first << " " << e.second << " = " << format_dscalar(e.value) << "\n";
  if (doc.kind != "modes" || doc.order != 1) os << "order " << doc.order << "\n";
  for (const auto& e : doc.tau) os << "tau " << e.first << " " << e.second << " = " << format_dscalar(e.value) << "\n";
  return os.str();
}

namespace {

void check_literals(const PresentationDocument& doc, const ExprPtr& e, unsigned p, const SourcePos& fallback) {
  e->for_each_literal([&](const Expr& lit) {
    if (boost::multiprecision::denominator(lit.value()) % p == 0) {
      SourcePos pos = fallback;
      auto it = doc.literal_positions.find(&lit);
      if (it != doc.literal_positions.end()) pos = it->second;
      throw SemanticError(pos.line, pos.column,
                          "coefficient " + format_dscalar(lit.value()) + " has denominator divisible by p = " +
                              std::to_string(p));
    }
  });
}

unsigned resolve_prime(const PresentationDocument& doc, std::optional<unsigned> prime_override) {
  std::optional<unsigned> p = prime_override ? prime_override : doc.prime;
  if (!p) throw SemanticError(1, 1, "no prime given");
  try {
    require_odd_prime(*p);
  } catch (const ParameterError& e) {
    throw SemanticError(doc.prime_pos.line, doc.prime_pos.column, e.what());
  }
  return *p;
}

Presentation build_modes(const PresentationDocument& doc, unsigned p) {
  const FiniteField& f = FiniteField::get(p, doc.extension);
  Presentation P(doc.name, f);
  for (const auto& c : doc.centrals) {
    if (P.find_central(c)) throw SemanticError(1, 1, "duplicate central '" + c + "'");
    P.add_central(c);
  }
  for (const auto& g : doc.generators) {
    if (!g.has_grading)
      throw SemanticError(g.pos.line, g.pos.column, "generator '" + g.name + "' needs weight, offset, lattice, twist");
    if (P.find_generator(g.name) || P.find_central(g.name))
      throw SemanticError(g.pos.line, g.pos.column, "duplicate symbol '" + g.name + "'");
    for (const Exponent& e : {g.weight, g.offset, g.lattice, g.twist})
      if (e.denominator() % static_cast<std::int64_t>(p) == 0)
        throw SemanticError(g.pos.line, g.pos.column, "denominator divisible by p in generator '" + g.name + "'");
    P.add_generator(Generator{g.name, g.parity, g.weight, g.offset, g.lattice, g.twist});
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& b : doc.brackets) {
    auto i = P.find_generator(b.left), j = P.find_generator(b.right);
    if (!i) throw SemanticError(b.pos.line, b.pos.column, "unknown generator '" + b.left + "'");
    if (!j) throw SemanticError(b.pos.line, b.pos.column, "unknown generator '" + b.right + "'");
    if (*i > *j)
      throw SemanticError(b.pos.line, b.pos.column,
                          "write the bracket as '" + b.right + " " + b.left + "' (declaration order)");
    if (!seen.insert({*i, *j}).second) throw SemanticError(b.pos.line, b.pos.column, "duplicate bracket");
    BracketRule r;
    r.first = *i;
    r.second = *j;
    for (const auto& t : b.terms) {
      check_literals(doc, t.coef, p, t.ref.pos);
      if (t.ref.mode) {
        check_literals(doc, t.ref.mode, p, t.ref.pos);
        auto g = P.find_generator(t.ref.name);
        if (!g) {
          std::string what = P.find_central(t.ref.name) ? "central symbol '" + t.ref.name + "' takes no mode"
                                                          : "unknown generator '" + t.ref.name + "'";
          throw SemanticError(t.ref.pos.line, t.ref.pos.column, what);
        }
        const Generator& gi = P.generators()[*i];
        const Generator& gj = P.generators()[*j];
        for (int a = -3; a <= 3; ++a)
          for (int c = -3; c <= 3; ++c) {
            Exponent mode =
                to_exponent(t.ref.mode->eval(to_dscalar(gi.lattice + a), to_dscalar(gj.lattice + c)));
            if (!P.on_lattice({*g, mode}))
              throw SemanticError(t.ref.pos.line, t.ref.pos.column,
                                  "mode " + format_exponent(mode) + " of '" + t.ref.name + "' is off its lattice");
          }
        r.gen_terms.push_back({1, t.coef, *g, t.ref.mode});
      } else {
        auto c = P.find_central(t.ref.name);
        if (!c) {
          std::string what = P.find_generator(t.ref.name) ? "generator '" + t.ref.name + "' needs a mode"
                                                          : "unknown central symbol '" + t.ref.name + "'";
          throw SemanticError(t.ref.pos.line, t.ref.pos.column, what);
        }
        r.central_terms.push_back({1, t.coef, *c});
      }
    }
    P.set_bracket(std::move(r));
    try {
      P.validate();
    } catch (const std::exception& e) {
      throw SemanticError(b.pos.line, b.pos.column, e.what());
    }
  }
  try {
    P.validate();
  } catch (const std::exception& e) {
    throw SemanticError(1, 1, e.what());
  }
  return P;
}

Presentation build_finite(const PresentationDocument& doc, unsigned p) {
  const FiniteField& f = FiniteField::get(p, doc.extension);
  if (!doc.centrals.empty()) throw SemanticError(1, 1, "the central element k is implicit for this kind");
  std::vector<std::string> names;
  std::vector<int> parity;
  for (const auto& g : doc.generators) {
    if (g.has_grading)
      throw SemanticError(g.pos.line, g.pos.column, "grading data is derived for kind " + doc.kind);
    if (doc.kind == "clifford" && !g.parity)
      throw SemanticError(g.pos.line, g.pos.column, "clifford generators are odd");
    for (const auto& n : names)
      if (n == g.name) throw SemanticError(g.pos.line, g.pos.column, "duplicate generator '" + g.name + "'");
    names.push_back(g.name);
    parity.push_back(g.parity);
  }
  auto index = [&](const std::string& n, const SourcePos& pos) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw SemanticError(pos.line, pos.column, "unknown generator '" + n + "'");
  };
  auto reduce_at = [&](const DScalar& v, const SourcePos& pos) {
    try {
      return f.reduce(v);
    } catch (const InvalidScalar&) {
      throw SemanticError(pos.line, pos.column,
                          "coefficient " + format_dscalar(v) + " has denominator divisible by p = " + std::to_string(p));
    }
  };
  FiniteLieSuperalgebra g(f, names, parity);
  std::set<std::pair<int, int>> seen;
  for (const auto& b : doc.brackets) {
    int i = index(b.left, b.pos), j = index(b.right, b.pos);
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw SemanticError(b.pos.line, b.pos.column, "duplicate bracket");
    std::vector<std::pair<int, Elem>> value;
    for (const auto& t : b.terms) {
      if (t.ref.mode) throw SemanticError(t.ref.pos.line, t.ref.pos.column, "finite brackets take no modes");
      if (t.coef->depends_on_modes())
        throw SemanticError(t.ref.pos.line, t.ref.pos.column, "finite structure constants are numbers");
      check_literals(doc, t.coef, p, t.ref.pos);
      value.push_back({index(t.ref.name, t.ref.pos), reduce_at(t.coef->eval(0, 0), t.ref.pos)});
    }
    g.set_bracket(i, j, value);
  }
  for (const auto& e : doc.form) g.set_form(index(e.first, e.pos), index(e.second, e.pos), reduce_at(e.value, e.pos));
  Matrix tau = Matrix::identity(f, names.size());
  if (!doc.tau.empty()) {
    tau = Matrix(f, names.size(), names.size());
    for (const auto& e : doc.tau) tau.at(index(e.second, e.pos), index(e.first, e.pos)) = reduce_at(e.value, e.pos);
  }
  try {
    if (doc.order == 1 && doc.tau.empty()) return affine(g, doc.name);
    return twisted_affine(g, tau, doc.order, doc.name);
  } catch (const std::invalid_argument& e) {
    throw SemanticError(1, 1, e.what());
  }
}

}  // namespace

Presentation build_presentation(const PresentationDocument& doc, std::optional<unsigned> prime_override) {
  unsigned p = resolve_prime(doc, prime_override);
  if (doc.kind == "modes") return build_modes(doc, p);
  return build_finite(doc, p);
}

PresentationDocument document_from(const Presentation& P) {
  PresentationDocument doc;
  doc.name = P.name();
  doc.prime = P.prime();
  doc.extension = P.field().k();
  doc.centrals = P.centrals();
  for (const auto& g : P.generators()) {
    DocGenerator d;
    d.name = g.name;
    d.parity = g.parity;
    d.has_grading = true;
    d.weight = g.weight;
    d.offset = g.offset;
    d.lattice = g.lattice;
    d.twist = g.twist;
    doc.generators.push_back(d);
  }
  for (const auto& [key, r] : P.rules()) {
    DocBracket b;
    b.left = P.generators()[r.first].name;
    b.right = P.generators()[r.second].name;
    for (const auto& t : r.gen_terms) {
      if (t.scale != 1) throw ParameterError("document_from needs unit scales");
      b.terms.push_back({t.coef, DocRef{P.generators()[t.target].name, t.mode, {}}});
    }
    for (const auto& t : r.central_terms) {
      if (t.scale != 1) throw ParameterError("document_from needs unit scales");
      b.terms.push_back({t.coef, DocRef{P.centrals()[t.central], nullptr, {}}});
    }
    doc.brackets.push_back(std::move(b));
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace modzhu
