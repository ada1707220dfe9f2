#include "bftk/truth_table.hpp"

#include "doctest.h"
#include "oracles.hpp"

using bftk::TruthTable;

TEST_CASE("families match their defining tables") {
  // OR_2 over indices 00,01,10,11 reads 0111.
  TruthTable f = bftk::from_family("or", std::vector<int>{2});
  CHECK(!f.value(0));
  CHECK(f.value(1));
  CHECK(f.value(2));
  CHECK(f.value(3));

  TruthTable p = bftk::from_family("parity", std::vector<int>{2});
  CHECK(!p.value(0));
  CHECK(p.value(1));
  CHECK(p.value(2));
  CHECK(!p.value(3));

  TruthTable h = bftk::from_family("hw1", std::vector<int>{3});
  for (uint64_t x = 0; x < 8; ++x)
    CHECK(h.value(x) == (std::popcount(x) == 1));

  TruthTable a = bftk::from_family("and", std::vector<int>{3});
  CHECK(a.ones_count() == 1);
  CHECK(a.value(7));

  CHECK_THROWS(bftk::from_family("nosuch", std::vector<int>{2}));
  CHECK_THROWS(bftk::from_family("or", std::vector<int>{}));
  CHECK_THROWS(bftk::from_family("or", std::vector<int>{0}));
}

TEST_CASE("xoror is fully sensitive on both sides") {
  TruthTable f = bftk::from_family("xoror", std::vector<int>{4});
  for (uint64_t x = 0; x < f.size(); ++x) {
    bool rest = (x >> 1) != 0;
    CHECK(f.value(x) == (bool(x & 1) != rest));
  }
}

TEST_CASE("spec text round-trips and matches the packed definition") {
  TruthTable f = bftk::from_family("or", std::vector<int>{2});
  CHECK(f.to_spec() == "tt:2:e");  // bit x of the hex value = f(x)
  CHECK(TruthTable::parse("tt:2:e") == f);
  CHECK(TruthTable::parse("tt:2:0E") == f);

  for (int n : {1, 3, 6, 7}) {
    TruthTable g(n);
    for (uint64_t x = 0; x < g.size(); x += 3) g.set(x, true);
    CHECK(TruthTable::parse(g.to_spec()) == g);
  }

  CHECK_THROWS(TruthTable::parse("tt:2"));
  CHECK_THROWS(TruthTable::parse("tt:2:xyz"));
  CHECK_THROWS(TruthTable::parse("tt:1:ff"));
  CHECK_THROWS(TruthTable::parse("tt:0:1"));
  CHECK_THROWS(TruthTable::parse("tt:25:0"));
}

TEST_CASE("restrictions") {
  TruthTable or3 = bftk::from_family("or", std::vector<int>{3});
  CHECK(bftk::restrict_table(or3, {{3, 0}}) ==
        bftk::from_family("or", std::vector<int>{2}));
  CHECK(bftk::restrict_table(or3, {{3, 1}}) ==
        bftk::from_family("const", std::vector<int>{2, 1}));

  TruthTable p3 = bftk::from_family("parity", std::vector<int>{3});
  TruthTable p2 = bftk::from_family("parity", std::vector<int>{2});
  CHECK(bftk::restrict_table(p3, {{1, 1}}) == p2.complement());

  CHECK_THROWS(bftk::restrict_table(or3, {{4, 0}}));
  CHECK_THROWS(bftk::restrict_table(or3, {{1, 0}, {1, 1}}));
}

TEST_CASE("composition") {
  TruthTable or2 = bftk::from_family("or", std::vector<int>{2});
  TruthTable or4 = bftk::from_family("or", std::vector<int>{4});
  CHECK(bftk::compose(or2, or2) == or4);

  // f composed with the 1-bit identity is f itself.
  TruthTable id1(1);
  id1.set(1, true);
  TruthTable p3 = bftk::from_family("parity", std::vector<int>{3});
  CHECK(bftk::compose(p3, id1) == p3);

  // (x1 | x2) & (x3 | x4), checked point by point.
  TruthTable and2 = bftk::from_family("and", std::vector<int>{2});
  TruthTable andor = bftk::compose(and2, or2);
  for (uint64_t x = 0; x < 16; ++x) {
    bool left = (x & 1) || (x & 2);
    bool right = (x & 4) || (x & 8);
    CHECK(andor.value(x) == (left && right));
  }
  CHECK(andor == bftk::from_family("andor", std::vector<int>{2, 2}));

  TruthTable big(13);
  CHECK_THROWS(bftk::compose(big, or2));
}

TEST_CASE("nand tree depth 2 is the 4-bit NAND of NANDs") {
  TruthTable t = bftk::from_family("nandtree", std::vector<int>{2});
  CHECK(t.arity() == 4);
  for (uint64_t x = 0; x < 16; ++x) {
    bool left = !((x & 1) && (x & 2));
    bool right = !((x & 4) && (x & 8));
    CHECK(t.value(x) == !(left && right));
  }
}
