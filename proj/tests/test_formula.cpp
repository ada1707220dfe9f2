#include "bftk/formula.hpp"

#include <bit>
#include <stdexcept>
#include <cmath>

#include "bftk/polynomial.hpp"
#include "bftk/rng.hpp"
#include "doctest.h"

using bftk::FormulaAst;
using bftk::TruthTable;

TEST_CASE("parsing the grammar") {
  auto ast = bftk::parse_formula("(x1 & (x2 | ~x3))");
  CHECK(ast.leaf_count() == 3);
  CHECK(ast.nodes[ast.root].kind == FormulaAst::Kind::kAnd);
  CHECK(bftk::print_formula(ast) == "(x1&(x2|~x3))");

  auto chain = bftk::parse_formula("((x1|x2)&(x3|x4))");
  CHECK(chain.leaf_count() == 4);

  auto nary = bftk::parse_formula("(x1 & x2 & x3)");
  CHECK(nary.nodes[nary.root].children.size() == 3);
}

TEST_CASE("parse errors carry positions and variable names") {
  CHECK_THROWS_WITH_AS(bftk::parse_formula("(x1 & x1)"),
                       doctest::Contains("x1"), std::invalid_argument);
  CHECK_THROWS_AS(bftk::parse_formula("(x1 & x2 | x3)"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula(""), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("   "), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("(x1 &"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("(x1)"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("x1 x2"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("y1"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("x0"), bftk::FormulaError);
  CHECK_THROWS_AS(bftk::parse_formula("x"), bftk::FormulaError);

  try {
    bftk::parse_formula("(x1 | x2 & x3)");
    FAIL("expected mixed-operator rejection");
  } catch (const bftk::FormulaError& e) {
    CHECK(std::string(e.what()).find("mixed") != std::string::npos);
  }
}

TEST_CASE("tables of formulas") {
  TruthTable notx = bftk::formula_to_table(bftk::parse_formula("~x1"));
  CHECK(notx.value(0));
  CHECK(!notx.value(1));

  TruthTable andor = bftk::formula_to_table(
      bftk::parse_formula("((x1|x2)&(x3|x4))"));
  TruthTable composed = bftk::compose(bftk::from_family("and", std::vector<int>{2}),
                                      bftk::from_family("or", std::vector<int>{2}));
  CHECK(andor == composed);

  CHECK(bftk::formula_to_table(bftk::parse_formula("(x1&x2&x3)")) ==
        bftk::from_family("and", std::vector<int>{3}));

  // Sparse variable names renumber to the leaf order.
  TruthTable sparse = bftk::formula_to_table(bftk::parse_formula("(x7|x2)"));
  CHECK(sparse == bftk::from_family("or", std::vector<int>{2}));
}

TEST_CASE("print and parse round-trip on normalized trees") {
  bftk::SplitMix64 gen(123);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + int(gen.below(10));
    auto ast = bftk::random_readonce(n, gen.next());
    auto norm = bftk::normalize(ast);
    std::string text = bftk::print_formula(norm);
    auto reparsed = bftk::parse_formula(text);
    CHECK(bftk::print_formula(reparsed) == text);
    CHECK(bftk::formula_to_table(reparsed) == bftk::formula_to_table(ast));
  }
}

TEST_CASE("read-once formulas have full degree") {
  CHECK(bftk::readonce_degree_check(bftk::parse_formula("((x1|x2)&(x3|x4))")));
  CHECK(bftk::readonce_degree_check(bftk::parse_formula("x1")));
  // Balanced depth-3 alternating tree on 8 variables.
  auto tree = bftk::parse_formula(
      "(((x1|x2)&(x3|x4))|((x5|x6)&(x7|x8)))");
  CHECK(tree.leaf_count() == 8);
  CHECK(bftk::readonce_degree_check(tree));

  bftk::SplitMix64 gen(321);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + int(gen.below(10));
    auto ast = bftk::random_readonce(n, gen.next());
    CHECK(bftk::readonce_degree_check(ast));
  }
}

TEST_CASE("approximate degree window for read-once formulas") {
  auto andor = bftk::readonce_adeg_window(
      bftk::parse_formula("((x1|x2)&(x3|x4))"), 1.0 / 3.0);
  CHECK(andor.n == 4);
  CHECK(andor.lower_ok);
  CHECK(andor.adeg >= 1);
  CHECK(andor.sqrt_n == doctest::Approx(2.0));

  auto single = bftk::readonce_adeg_window(bftk::parse_formula("x1"), 1.0 / 3.0);
  CHECK(single.adeg == 1);
  CHECK(single.lower_ok);

  auto or4 = bftk::readonce_adeg_window(
      bftk::parse_formula("(x1|x2|x3|x4)"), 1.0 / 3.0);
  CHECK(or4.adeg >= 1);
  CHECK(or4.lower_ok);
}
