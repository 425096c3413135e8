#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "rjm/moments.hpp"
#include "rjm/trees.hpp"

using namespace rjm;

namespace {

using B = std::vector<std::vector<EdgeColor>>;
constexpr auto b = EdgeColor::Blue;
constexpr auto r = EdgeColor::Red;

std::multiset<Rational> weights_over(int cls, int n) {
  auto c = census(cls, n);
  return {c.weights.begin(), c.weights.end()};
}

std::multiset<Rational> listed(std::initializer_list<std::pair<Rational, int>> items) {
  std::multiset<Rational> out;
  for (const auto& [w, k] : items) {
    for (int i = 0; i < k; ++i) out.insert(w);
  }
  return out;
}

Rational q(long n, long d) { return make_rational(n, d); }

LeveledTree reference_tree() {
  return LeveledTree::from_parents({{12}, {6, 4, 2}, {4, 2, 1, 3, 2}, {1, 3, 2, 1, 2, 1, 2}},
                                   {{0, 0, 0}, {0, 0, 1, 1, 2}, {0, 0, 1, 2, 3, 3, 4}});
}

}  // namespace

TEST_CASE("reference admissible tree") {
  auto t = reference_tree();
  CHECK(t.violation(1).empty());
  CHECK(t.height() == 3);
  auto all = enumerate_trees(1, {1, 3, 2, 1, 2, 1, 2});
  CHECK(std::count(all.begin(), all.end(), t) == 1);
  CHECK(t.to_text().rfind("12\n  6\n    4\n      1\n", 0) == 0);
}

TEST_CASE("extension") {
  auto t = reference_tree();
  CHECK(extend(t, 0) == t);
  auto extended = LeveledTree::from_parents(
      {{12}, {6, 4, 2}, {4, 2, 1, 3, 2}, {1, 3, 2, 1, 2, 1, 2}, {1, 3, 2, 1, 2, 1, 2}, {1, 3, 2, 1, 2, 1, 2}},
      {{0, 0, 0}, {0, 0, 1, 1, 2}, {0, 0, 1, 2, 3, 3, 4}, {0, 1, 2, 3, 4, 5, 6}, {0, 1, 2, 3, 4, 5, 6}});
  auto e = extend(t, 2);
  CHECK(e == extended);
  CHECK_FALSE(e.violation(1).empty());
  for (std::size_t i = 0; i < 7; ++i) CHECK(e.values[5][i] == e.values[3][i]);
  auto single = LeveledTree::from_parents({{3}}, {});
  auto chain = extend(single, 2, EdgeColor::Red);
  CHECK(chain.height() == 2);
  CHECK(chain.color[2][0] == r);
  auto colored = enumerate_trees(3, {1, 1})[1];
  auto ext = extend(colored, 1);
  CHECK(ext.color[2] == ext.color[1]);
}

TEST_CASE("C(2) trees of class 3 and 4") {
  CHECK(enumerate_trees(3, {2}).size() == 1);
  auto t11 = enumerate_trees(3, {1, 1});
  REQUIRE(t11.size() == 3);
  CHECK(t11[0].color[1] == std::vector<EdgeColor>{r, r});
  CHECK(t11[1].color[1] == std::vector<EdgeColor>{b, r});
  CHECK(t11[2].color[1] == std::vector<EdgeColor>{b, b});
  CHECK(tree_weight(3, enumerate_trees(3, {2})[0]) == q(1, 2));
  CHECK(tree_weight(3, t11[1]) == q(-1, 4));
  CHECK(tree_weight(3, t11[0]) == q(-1, 8));
  CHECK(tree_weight(3, t11[2]) == q(-1, 8));
  auto t4 = enumerate_trees(4, {1, 1});
  REQUIRE(t4.size() == 1);
  CHECK(t4[0] == t11[1]);
  CHECK(tree_weight(4, t4[0]) == q(-1, 4));
  CHECK(phi(3, {1, 1}) == q(-1, 2));
  CHECK(tree_weight(2, enumerate_trees(2, {5})[0]) == 2);
  CHECK_THROWS_AS(tree_weight(4, t11[0]), TreeError);
}

TEST_CASE("C(3) census for class 3") {
  auto c = census(3, 3);
  CHECK(c.count == 29);
  CHECK(weights_over(3, 3) == listed({{q(1, 2), 1}, {q(-1, 4), 2}, {q(-3, 8), 2}, {q(-1, 8), 4}, {q(-1, 16), 2},
                                      {q(1, 16), 6}, {q(1, 8), 2}, {q(3, 32), 4}, {q(3, 16), 2}, {q(1, 32), 4}}));
  CHECK(phi(3, {3}) == q(1, 2));
  CHECK(phi(3, {2, 1}) + phi(3, {1, 2}) == q(-3, 2));
  CHECK(phi(3, {1, 1, 1}) == q(9, 8));
}

TEST_CASE("C(3) census for class 4") {
  // Enumeration gives 11 trees; a ten-entry index listing for this class omits one.
  auto c = census(4, 3);
  CHECK(c.count == 11);
  CHECK(weights_over(4, 3) ==
        listed({{q(1, 2), 1}, {q(-3, 8), 2}, {q(-1, 8), 2}, {q(3, 32), 4}, {q(3, 16), 2}}));
  CHECK(phi(4, {3}) == q(1, 2));
  CHECK(phi(4, {2, 1}) + phi(4, {1, 2}) == q(-3, 4));
  CHECK(phi(4, {1, 1, 1}) == q(1, 2));
}

TEST_CASE("enumeration invariants") {
  CHECK(enumerate_trees(1, {4}).size() == 1);
  CHECK(enumerate_trees(1, {4})[0].single_vertex());
  CHECK_THROWS_AS(enumerate_trees(1, {2, 0}), TreeError);
  CHECK_THROWS_AS(enumerate_trees(5, {2}), TreeError);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& c : compositions(n)) {
      for (int cls = 1; cls <= 4; ++cls) {
        for (const auto& t : enumerate_trees(cls, c)) {
          CHECK(t.height() <= static_cast<int>(c.size()) - 1);
          for (int l = 0; l < t.height(); ++l) CHECK(t.values[l].size() < t.values[l + 1].size());
          for (const auto& row : t.values) {
            int s = 0;
            for (int v : row) s += v;
            CHECK(s == n);
          }
          if (cls == 2) {
            // Color inheritance along every root-to-leaf path.
            for (int l = 2; l <= t.height(); ++l) {
              for (std::size_t i = 0; i < t.values[l].size(); ++i) {
                CHECK(t.color[l][i] == t.color[l - 1][t.parent[l][i]]);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("reference inversion tables") {
  auto P = [](const char* s) { return Poly::parse(s); };
  using T = InversionTarget;
  CHECK(reconstruct(T::MFromAlpha, 1) == P("alpha1"));
  CHECK(reconstruct(T::MFromAlpha, 2) == P("alpha2 - alpha1^2"));
  CHECK(reconstruct(T::MFromAlpha, 3) == P("alpha3 - 3*alpha2*alpha1 + 2*alpha1^3"));
  CHECK(reconstruct(T::MFromAlpha, 4) == P("alpha4 - 4*alpha3*alpha1 + 13*alpha2*alpha1^2 - 3*alpha2^2 - 7*alpha1^4"));
  CHECK(reconstruct(T::MFromAlpha, 5) == P("alpha5 - 5*alpha4*alpha1 - 10*alpha3*alpha2 + 23*alpha3*alpha1^2 + "
                                           "34*alpha2^2*alpha1 - 79*alpha2*alpha1^3 + 36*alpha1^5"));
  CHECK(reconstruct(T::OmegaFromAlpha, 1) == P("2*alpha1"));
  CHECK(reconstruct(T::OmegaFromAlpha, 2) == P("2*alpha2 + 2*alpha1^2"));
  CHECK(reconstruct(T::OmegaFromAlpha, 3) == P("2*alpha3 + 6*alpha2*alpha1 - 2*alpha1^3"));
  CHECK(reconstruct(T::OmegaFromAlpha, 4) ==
        P("2*alpha4 + 8*alpha3*alpha1 - 14*alpha2*alpha1^2 + 6*alpha2^2 + 6*alpha1^4"));
  CHECK(reconstruct(T::OmegaFromAlpha, 5) == P("2*alpha5 + 10*alpha4*alpha1 + 20*alpha3*alpha2 - 24*alpha3*alpha1^2 - "
                                              "42*alpha2^2*alpha1 + 72*alpha2*alpha1^3 - 28*alpha1^5"));
  CHECK(reconstruct(T::MFromOmega, 1) == P("1/2*omega1"));
  CHECK(reconstruct(T::MFromOmega, 2) == P("1/2*omega2 - 1/2*omega1^2"));
  CHECK(reconstruct(T::MFromOmega, 3) == P("1/2*omega3 - 3/2*omega2*omega1 + 9/8*omega1^3"));
  CHECK(reconstruct(T::MFromOmega, 4) ==
        P("1/2*omega4 - 2*omega3*omega1 + 7*omega2*omega1^2 - 3/2*omega2^2 - 17/4*omega1^4"));
  CHECK(reconstruct(T::MFromOmega, 5) == P("1/2*omega5 - 5/2*omega4*omega1 - 5*omega3*omega2 + 95/8*omega3*omega1^2 + "
                                           "145/8*omega2^2*omega1 - 45*omega2*omega1^3 + 365/16*omega1^5"));
  CHECK(reconstruct(T::AlphaFromOmega, 1) == P("1/2*omega1"));
  CHECK(reconstruct(T::AlphaFromOmega, 2) == P("1/2*omega2 - 1/4*omega1^2"));
  CHECK(reconstruct(T::AlphaFromOmega, 3) == P("1/2*omega3 - 3/4*omega2*omega1 + 1/2*omega1^3"));
  CHECK(reconstruct(T::AlphaFromOmega, 4) ==
        P("1/2*omega4 - omega3*omega1 - 3/4*omega2^2 + 25/8*omega2*omega1^2 - 29/16*omega1^4"));
  CHECK(reconstruct(T::AlphaFromOmega, 5) ==
        P("1/2*omega5 - 5/4*omega4*omega1 - 5/2*omega3*omega2 + 21/4*omega3*omega1^2 + 33/4*omega2^2*omega1 - "
          "309/16*omega2*omega1^3 + 19/2*omega1^5"));
}

TEST_CASE("oracle agreement and sum identities") {
  using T = InversionTarget;
  CHECK(invert_oracle(T::MFromAlpha, 1) == Poly::alpha(1));
  CHECK(invert_oracle(T::MFromAlpha, 2) == Poly::parse("alpha2 - alpha1^2"));
  CHECK(invert_oracle(T::MFromOmega, 3) == Poly::parse("1/2*omega3 - 3/2*omega2*omega1 + 9/8*omega1^3"));
  for (int n = 1; n <= 6; ++n) {
    for (auto t : {T::MFromAlpha, T::OmegaFromAlpha, T::MFromOmega, T::AlphaFromOmega}) {
      CAPTURE(n);
      CHECK(reconstruct(t, n, 3) == invert_oracle(t, n));
      CHECK(parse_target(target_name(t)) == t);
    }
  }
  for (int n = 1; n <= 8; ++n) {
    Rational s1 = 0, s2 = 0;
    for (const auto& c : compositions(n)) {
      s1 += phi(1, c);
      s2 += phi(2, c);
    }
    if (n >= 2) CHECK(s1 == 0);
    CHECK(s2 == 2 * n);
  }
  auto rep = check_trees(4, 2);
  CAPTURE(rep.to_json().dump());
  CHECK(rep.pass);
}

TEST_CASE("json") {
  auto t = enumerate_trees(3, {1, 1})[1];
  auto j = t.to_json();
  CHECK(j["levels"].dump() == "[[2],[1,1]]");
  CHECK(j["parents"].dump() == "[[],[0,0]]");
  CHECK(j["colors"].dump() == R"([[],["b","r"]])");
  CHECK(t.to_text() == "2\n  1[b]\n  1[r]\n");
}
