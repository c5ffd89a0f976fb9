#include "modzhu/presentation_format.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace modzhu;

namespace {

std::string data_file(const std::string& name) { return read_text_file(std::string(MODZHU_DATA_DIR) + "/" + name); }

FiniteLieSuperalgebra three_dim(const FiniteField& f) {
  FiniteLieSuperalgebra g(f, {"a", "u", "v"}, {0, 1, 1});
  g.set_bracket(0, 1, {{1, 1}});
  g.set_bracket(0, 2, {{2, f.neg(1)}});
  g.set_form(0, 0, 1);
  g.set_form(1, 2, 1);
  return g;
}

/// Random expression over m, n with small literals.
ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 2);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  switch (pick(rng)) {
    case 0: return Expr::lit(DScalar(num(rng), den(rng)));
    case 1: return Expr::m();
    case 2: return Expr::n();
    case 3: return Expr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return Expr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return Expr::neg(random_expr(rng, depth - 1));
    case 7: return Expr::binom(random_expr(rng, depth - 1), static_cast<unsigned>(den(rng)));
    default: return Expr::delta(random_expr(rng, depth - 1));
  }
}

PresentationDocument random_document(std::mt19937_64& rng) {
  PresentationDocument d;
  std::uniform_int_distribution<int> small(0, 3), num(-7, 7), den(1, 4);
  d.name = "doc" + std::to_string(small(rng));
  if (small(rng)) d.prime = 7;
  d.extension = 1 + small(rng) % 2;
  const bool finite = small(rng) == 0;
  d.kind = finite ? "affine" : "modes";
  std::vector<std::string> names = {"A", "B", "C"};
  if (!finite) d.centrals = {"c", "k"};
  for (const auto& nm : names) {
    DocGenerator g;
    g.name = nm;
    g.parity = small(rng) % 2;
    g.has_grading = !finite;
    if (!finite) {
      g.weight = Exponent(num(rng), den(rng));
      g.offset = Exponent(num(rng), den(rng));
      g.lattice = Exponent(num(rng), den(rng));
      g.twist = Exponent(num(rng), den(rng));
    }
    d.generators.push_back(g);
  }
  for (int b = 0; b < 1 + small(rng); ++b) {
    DocBracket br;
    br.left = names[small(rng) % 3];
    br.right = names[small(rng) % 3];
    for (int t = 0; t < small(rng); ++t) {
      DocTerm term;
      term.coef = finite ? Expr::lit(DScalar(num(rng), den(rng))) : random_expr(rng, 3);
      if (finite || small(rng) != 0) {
        term.ref.name = names[small(rng) % 3];
        if (!finite) term.ref.mode = random_expr(rng, 2);
      } else {
        term.ref.name = d.centrals[small(rng) % 2];
      }
      br.terms.push_back(term);
    }
    d.brackets.push_back(br);
  }
  if (finite) {
    d.form.push_back({names[0], names[1], DScalar(num(rng), den(rng)), {}});
    d.order = 1 + small(rng);
    d.tau.push_back({names[2], names[2], DScalar(num(rng), den(rng)), {}});
  }
  return d;
}

}  // namespace

TEST(PresentationFormat, BundledNeveuSchwarzEqualsBuiltin) {
  PresentationDocument doc = parse_presentation(data_file("neveu_schwarz.pres"));
  EXPECT_TRUE(build_presentation(doc) == neveu_schwarz(5));
  EXPECT_TRUE(build_presentation(doc, 7u) == neveu_schwarz(7));
  EXPECT_FALSE(build_presentation(doc, 7u) == ramond(7));
  EXPECT_TRUE(document_from(neveu_schwarz(5)) == doc);
}

TEST(PresentationFormat, BundledRamondEqualsBuiltin) {
  PresentationDocument doc = parse_presentation(data_file("ramond.pres"));
  EXPECT_TRUE(build_presentation(doc) == ramond(5));
  EXPECT_TRUE(build_presentation(doc, 11u) == ramond(11));
}

TEST(PresentationFormat, BundledFiniteKinds) {
  PresentationDocument doc = parse_presentation(data_file("three_dim_twisted.pres"));
  const FiniteField& f = FiniteField::get(5);
  Matrix tau = Matrix::identity(f, 3);
  tau.at(1, 1) = tau.at(2, 2) = f.neg(1);
  EXPECT_TRUE(build_presentation(doc) == twisted_affine(three_dim(f), tau, 2, "three_dim_twisted"));
  PresentationDocument cl = parse_presentation(data_file("clifford_pair.pres"));
  const FiniteField& f7 = FiniteField::get(7);
  Matrix form(f7, 2, 2);
  form.at(0, 1) = form.at(1, 0) = 1;
  EXPECT_TRUE(build_presentation(cl) == clifford_affine(f7, form, "clifford_pair"));
}

TEST(PresentationFormat, BundledDocumentsRoundTrip) {
  for (const char* name : {"neveu_schwarz.pres", "ramond.pres", "three_dim_twisted.pres", "clifford_pair.pres"}) {
    PresentationDocument doc = parse_presentation(data_file(name));
    std::string printed = print_presentation(doc);
    EXPECT_TRUE(parse_presentation(printed) == doc) << name;
    EXPECT_EQ(print_presentation(parse_presentation(printed)), printed);
  }
}

TEST(PresentationFormat, CanonicalPrintOfBuiltin) {
  std::string text = data_file("neveu_schwarz.pres");
  std::string printed = print_presentation(document_from(neveu_schwarz(5)));
  EXPECT_EQ("# Neveu-Schwarz algebra with central element c.\n" + printed, text);
}

TEST(PresentationFormat, RandomDocumentsRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    PresentationDocument doc = random_document(rng);
    std::string printed = print_presentation(doc);
    PresentationDocument back = parse_presentation(printed);
    EXPECT_TRUE(back == doc) << printed;
  }
}

TEST(PresentationFormat, EmptyDocumentIsSyntaxError) {
  try {
    parse_presentation("");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);
  }
  EXPECT_THROW(parse_presentation("# only a comment\n\n"), SyntaxError);
}

TEST(PresentationFormat, SyntaxErrorsReportPositionAndExpectation) {
  try {
    parse_presentation("name x\nprime 5\nbracket L L = (m - n * L[m + n]\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 24);
    EXPECT_NE(std::string(e.what()).find("found 'L', expected a number"), std::string::npos);
  }
  try {
    parse_presentation("name x\ncolour red\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 1);
    EXPECT_NE(std::string(e.what()).find("'generator'"), std::string::npos);
  }
  EXPECT_THROW(parse_presentation("name x\ngenerator m even\n"), SyntaxError);
  EXPECT_THROW(parse_presentation("name x\nbracket L L = 2 * 3\n"), SyntaxError);
  EXPECT_THROW(parse_presentation("name x\nbracket L L = c * k\n"), SyntaxError);
  EXPECT_THROW(parse_presentation("name x\nprime 5 7\n"), SyntaxError);
}

TEST(PresentationFormat, SemanticErrors) {
  const std::string head =
      "name x\nprime 5\ncentral c\n"
      "generator L even weight 2 offset 0 lattice 0 twist 0\n"
      "generator G odd weight 3/2 offset 0 lattice 1/2 twist 0\n";
  auto semantic = [&](const std::string& body, int line, int column) {
    PresentationDocument doc = parse_presentation(head + body);
    try {
      build_presentation(doc);
      ADD_FAILURE() << "expected a semantic error for " << body;
    } catch (const SemanticError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
      EXPECT_EQ(e.column(), column) << e.what();
    }
  };
  semantic("bracket L L = (m - n) * L[m + n] + 1/5 * delta(m + n) * c\n", 6, 36);
  semantic("bracket L L = (m - n) * H[m + n]\n", 6, 25);
  semantic("bracket L L = (m - n) * G[m + n]\n", 6, 25);
  semantic("bracket L L = (m - n) * L\n", 6, 25);
  semantic("bracket L L = (m - n) * c[m]\n", 6, 25);
  semantic("bracket G L = G[m + n]\n", 6, 1);
  semantic("bracket L L = L[m + n]\n", 6, 1);
  PresentationDocument ok = parse_presentation(head + "bracket L L = 1/5 * (m - n) * L[m + n]\n");
  EXPECT_NO_THROW(build_presentation(ok, 7u));
  PresentationDocument no_prime = parse_presentation("name x\ngenerator L even weight 2 offset 0 lattice 0 twist 0\n");
  EXPECT_THROW(build_presentation(no_prime), SemanticError);
  EXPECT_NO_THROW(build_presentation(no_prime, 5u));
}
