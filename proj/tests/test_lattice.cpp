#include <doctest.h>

#include <vector>

#include "qkit/error.hpp"
#include "qkit/lattice.hpp"

using namespace qkit;

namespace {

// Reference lub/glb by scanning the full order, independent of the tables
// the constructor builds.
void check_against_scan(const FiniteLattice& l) {
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b) {
      int lub = -1, glb = -1;
      for (int c = 0; c < l.size(); ++c) {
        if (l.leq(a, c) && l.leq(b, c) && (lub < 0 || l.leq(c, lub))) lub = c;
        if (l.leq(c, a) && l.leq(c, b) && (glb < 0 || l.leq(glb, c))) glb = c;
      }
      CHECK(l.join(a, b) == lub);
      CHECK(l.meet(a, b) == glb);
    }
  for (int a = 0; a < l.size(); ++a) {
    CHECK(l.leq(l.bottom(), a));
    CHECK(l.leq(a, l.top()));
  }
}

}  // namespace

TEST_CASE("chain lattice is a total order") {
  FiniteLattice l = chain_lattice(4);
  CHECK(l.size() == 4);
  CHECK(l.bottom() == 0);
  CHECK(l.top() == 3);
  CHECK(l.leq(1, 3));
  CHECK_FALSE(l.leq(3, 1));
  CHECK(l.join(1, 2) == 2);
  CHECK(l.meet(1, 2) == 1);
  check_against_scan(l);
}

TEST_CASE("diamond lattice joins and meets") {
  FiniteLattice l = diamond_lattice();
  CHECK(l.size() == 4);
  CHECK_FALSE(l.leq(1, 2));
  CHECK_FALSE(l.leq(2, 1));
  CHECK(l.join(1, 2) == 3);
  CHECK(l.meet(1, 2) == 0);
  check_against_scan(l);
  CHECK(is_distributive(l));
}

TEST_CASE("powerset lattice is the subset order on bitmasks") {
  FiniteLattice l = powerset_lattice(3);
  CHECK(l.size() == 8);
  CHECK(l.bottom() == 0);
  CHECK(l.top() == 7);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      CHECK(l.leq(a, b) == ((a & b) == a));
      CHECK(l.join(a, b) == (a | b));
      CHECK(l.meet(a, b) == (a & b));
    }
  check_against_scan(l);
  CHECK(is_distributive(l));
}

TEST_CASE("from_order closes the given relation transitively") {
  // 0 < 1 < 3 and 0 < 2 < 3, given only as covers.
  FiniteLattice l = FiniteLattice::from_order(
      4, std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  CHECK(l.leq(0, 3));
  check_against_scan(l);
}

TEST_CASE("cover pairs rebuild the same lattice") {
  for (const FiniteLattice& l :
       {chain_lattice(5), diamond_lattice(), powerset_lattice(3),
        FiniteLattice::from_order(
            5, std::vector<std::pair<int, int>>{
                   {0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}})}) {
    auto covers = l.cover_pairs();
    CHECK(FiniteLattice::from_order(l.size(), covers) == l);
  }
}

TEST_CASE("cycles are rejected as partial orders") {
  try {
    FiniteLattice::from_order(
        3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}});
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_partial_order);
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
  try {
    FiniteLattice::from_order(
        2, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_partial_order);
  }
}

TEST_CASE("posets without bounds are rejected as lattices") {
  // Two incomparable elements: no join exists.
  try {
    FiniteLattice::from_order(2, std::vector<std::pair<int, int>>{});
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_lattice);
  }
  // The "bowtie": two bottoms, two tops; pairwise bounds are never least.
  try {
    FiniteLattice::from_order(4, std::vector<std::pair<int, int>>{
                                     {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_lattice);
  }
}

TEST_CASE("pentagon-shaped lattice is not distributive") {
  FiniteLattice l = FiniteLattice::from_order(
      5, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  auto bad = distributivity_counterexample(l);
  REQUIRE(bad.has_value());
  auto [a, b, c] = *bad;
  CHECK(l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)));
  CHECK_FALSE(is_distributive(l));
}

TEST_CASE("n-ary join and meet fold over spans") {
  FiniteLattice l = powerset_lattice(3);
  std::vector<int> items{1, 4, 2};
  CHECK(l.join(items) == 7);
  CHECK(l.meet(items) == 0);
  CHECK(l.join(std::vector<int>{}) == l.bottom());
  CHECK(l.meet(std::vector<int>{}) == l.top());
}
