#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rjm/lattice.hpp"

using namespace rjm;

namespace {

Integer central_binomial(int n) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), 2 * n, n);
  return r;
}

Integer catalan(int n) { return central_binomial(n) / (n + 1); }

Poly swap_ab(const Poly& p) {
  return rename(p, [](SymbolId s) {
    if (s.family == Family::A) return sym_b(s.index);
    if (s.family == Family::B) return sym_a(s.index);
    return s;
  });
}

// Brute force over all 2^(2n) step words; independent of the pruned DFS.
std::vector<std::string> brute_words(int n, bool dyck) {
  std::vector<std::string> out;
  for (std::uint32_t mask = 0; mask < (1U << (2 * n)); ++mask) {
    std::string w;
    int h = 0;
    bool ok = true;
    for (int t = 2 * n - 1; t >= 0; --t) {
      bool up = !(mask & (1U << t));
      w += up ? 'U' : 'D';
      h += up ? 1 : -1;
      if (dyck && h < 0) ok = false;
    }
    if (ok && h == 0) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("path counts") {
  CHECK(enumerate_paths(PathKind::Dyck, 3).size() == 5);
  CHECK(enumerate_paths(PathKind::Generalized, 3).size() == 20);
  auto empty = enumerate_paths(PathKind::Dyck, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].steps.empty());
  for (int n = 0; n <= 9; ++n) {
    CHECK(Integer(count_paths(PathKind::Dyck, n)) == catalan(n));
    CHECK(Integer(count_paths(PathKind::Generalized, n)) == central_binomial(n));
    std::uint64_t by_returns = 0;
    for (int k = 0; k <= n; ++k) by_returns += count_paths(PathKind::DyckReturns, n, k);
    CHECK(Integer(by_returns) == catalan(n));
  }
}

TEST_CASE("enumeration order and exhaustiveness") {
  for (int n = 0; n <= 6; ++n) {
    for (bool dyck : {true, false}) {
      std::vector<std::string> got;
      for (const auto& p : enumerate_paths(dyck ? PathKind::Dyck : PathKind::Generalized, n)) {
        got.push_back(p.to_string());
      }
      auto want = brute_words(n, dyck);
      std::sort(want.begin(), want.end(), [](std::string x, std::string y) {
        std::replace(x.begin(), x.end(), 'U', 'A');
        std::replace(y.begin(), y.end(), 'U', 'A');
        return x < y;
      });
      CHECK(got == want);
    }
  }
  auto d3 = enumerate_paths(PathKind::Dyck, 3);
  CHECK(d3.front().to_string() == "UUUDDD");
  CHECK(d3.back().to_string() == "UDUDUD");
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const auto& p : enumerate_paths(PathKind::DyckReturns, n, k)) {
        CHECK(p.returns() == k);
        CHECK(p.min_height() == 0);
      }
    }
  }
  CHECK_THROWS_AS(enumerate_paths(PathKind::Dyck, 15), CapExceeded);
  CHECK_NOTHROW(count_paths(PathKind::Dyck, 2, 0, 2));
}

TEST_CASE("reference path weights") {
  auto ref1 = LatticePath::parse("UDUUDUUDDDUUDD");
  CHECK(ref1.min_height() == 0);
  CHECK(path_weight(ref1) == Poly::parse("a0^3*a1^3*a2"));
  auto ref2 = LatticePath::parse("DUUUDDDDUUDUUD");
  CHECK(ref2.end_height() == 0);
  CHECK(path_weight(ref2) == Poly::parse("a0^2*a1*b0^3*b1"));
  for (int n = 0; n <= 6; ++n) {
    std::string w(n, 'U');
    w += std::string(n, 'D');
    Poly expect(1);
    for (int i = 0; i < n; ++i) expect *= Poly::a(i);
    CHECK(path_weight(LatticePath::parse(w)) == expect);
  }
}

TEST_CASE("explicit tables of A_n and W_n") {
  CHECK(weight_polynomial(WeightKind::A, 0) == Poly(1));
  CHECK(weight_polynomial(WeightKind::A, 1) == Poly::parse("a0"));
  CHECK(weight_polynomial(WeightKind::A, 2) == Poly::parse("a0^2 + a0*a1"));
  CHECK(weight_polynomial(WeightKind::A, 3) ==
        Poly::a(0) * Poly::parse("a0^2 + 2*a0*a1 + a1^2 + a1*a2"));
  CHECK(weight_polynomial(WeightKind::W, 0) == Poly(1));
  CHECK(weight_polynomial(WeightKind::W, 1) == Poly::parse("a0 + b0"));
  CHECK(weight_polynomial(WeightKind::W, 2) ==
        Poly::a(0) * Poly::parse("a0 + a1") + Poly::parse("2*a0*b0") +
            Poly::b(0) * Poly::parse("b0 + b1"));
  CHECK(weight_polynomial(WeightKind::W, 3) ==
        Poly::a(0) * Poly::parse("a0^2 + 2*a0*a1 + a1^2 + a1*a2") +
            Poly::a(0) * Poly::b(0) * Poly::parse("3*a0 + 3*b0 + 2*a1 + 2*b1") +
            Poly::b(0) * Poly::parse("b0^2 + 2*b0*b1 + b1^2 + b1*b2"));
  CHECK(weight_polynomial(WeightKind::B, 3) == swap_ab(weight_polynomial(WeightKind::A, 3)));
}

TEST_CASE("weight polynomial properties") {
  for (int n = 0; n <= 8; ++n) {
    Poly w = weight_polynomial(WeightKind::W, n);
    Poly a = weight_polynomial(WeightKind::A, n);
    Poly b = weight_polynomial(WeightKind::B, n);
    for (const Poly* p : {&w, &a, &b}) {
      for (const auto& [m, c] : p->terms()) CHECK(m.degree() == static_cast<std::uint32_t>(n));
    }
    CHECK(swap_ab(w) == w);
    CHECK(b == swap_ab(a));
    std::multiset<std::string> orig, mirror;
    for (const auto& p : enumerate_paths(PathKind::Dyck, n)) {
      orig.insert(path_weight(p).to_string());
      auto q = p.mirrored();
      CHECK(q.min_height() == 0);
      mirror.insert(path_weight(q).to_string());
      CHECK(p.reflected().reflected() == p);
      CHECK(q.mirrored() == p);
    }
    CHECK(orig == mirror);
  }
}

TEST_CASE("compositions") {
  auto c4 = compositions(4);
  REQUIRE(c4.size() == 8);
  std::set<Composition> listed{{4}, {3, 1}, {1, 3}, {2, 2}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1, 1}};
  CHECK(std::set<Composition>(c4.begin(), c4.end()) == listed);
  CHECK(c4 == std::vector<Composition>{{4}, {3, 1}, {2, 2}, {1, 3}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1, 1}});
  CHECK(compositions(0) == std::vector<Composition>{Composition{}});
  for (int n = 1; n <= 12; ++n) CHECK(compositions(n).size() == (std::size_t{1} << (n - 1)));
  // Brute force count of C(0)xC(2) + C(1)xC(1) + C(2)xC(0) = 2 + 1 + 2.
  CHECK(comp_pairs(2).size() == 5);
  CHECK(comp_pairs(0).size() == 1);
  for (int n = 2; n <= 10; ++n) {
    std::size_t expect = (std::size_t{1} << n) + (n - 1) * (std::size_t{1} << (n - 2));
    CHECK(comp_pairs(n).size() == expect);
  }
  CHECK(composition_to_string({2, 1}) == "(2,1)");
  CHECK(composition_to_string({}) == "e");
}

TEST_CASE("binomial convention and rho") {
  CHECK(binom(-1, -1) == 1);
  CHECK(binom(0, -1) == 0);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(3, -2) == 0);
  CHECK(binom(4, 2) == 6);
  CHECK(binom(2, 3) == 0);
  CHECK(binom(-2, 2) == 3);
  CHECK(rho1({2, 1}) == 2);
  CHECK(rho1({1, 2}) == 1);
  CHECK(rho1({3}) == 1);
  CHECK(rho1({}) == 1);
  CHECK(rho2({1}, {1}) == 2);
  CHECK(rho2({}, {}) == 1);
  CHECK(rho2({}, {2, 1}) == 2);
  CHECK(rho2({2, 1}, {}) == 2);
}

TEST_CASE("closed forms agree with enumeration") {
  CHECK(closed_form(ClosedFormKind::FlajoletA, 3) ==
        Poly::a(0) * Poly::parse("a0^2 + 2*a0*a1 + a1^2 + a1*a2"));
  CHECK(closed_form(ClosedFormKind::TheoremW, 1) == Poly::parse("a0 + b0"));
  for (int n = 0; n <= 8; ++n) {
    CAPTURE(n);
    Poly a = weight_polynomial(WeightKind::A, n);
    Poly w = weight_polynomial(WeightKind::W, n);
    CHECK(closed_form(ClosedFormKind::FlajoletA, n) == a);
    CHECK(closed_form(ClosedFormKind::TouchardA, n) == a);
    CHECK(closed_form(ClosedFormKind::FlajoletB, n) == weight_polynomial(WeightKind::B, n));
    CHECK(closed_form(ClosedFormKind::TheoremW, n) == w);
    CHECK(closed_form(ClosedFormKind::NestedW, n) == w);
    Poly by_returns;
    for (int k = 0; k <= n; ++k) {
      Poly rk = closed_form(ClosedFormKind::ReturnsA, n, k);
      Poly enumerated;
      for (const auto& p : enumerate_paths(PathKind::DyckReturns, n, k)) enumerated += path_weight(p);
      CHECK(rk == enumerated);
      by_returns += rk;
    }
    CHECK(by_returns == a);
    Poly shifted = rename(a, [](SymbolId s) { return sym_a(s.index + 2); });
    CHECK(closed_form(ClosedFormKind::ShiftedA, n, 2) == shifted);
    CHECK(closed_form(ClosedFormKind::ShiftedB, n, 1) ==
          rename(swap_ab(a), [](SymbolId s) { return sym_b(s.index + 1); }));
  }
  CHECK(closed_form(ClosedFormKind::ReturnsA, 4, 4) == pow(Poly::a(0), 4));
  CHECK(closed_form(ClosedFormKind::ReturnsA, 3, 0).is_zero());
  CHECK_THROWS_AS(closed_form(ClosedFormKind::FlajoletA, 25), CapExceeded);
}

TEST_CASE("confined paths") {
  int count = 0;
  for_each_confined_path(5, 4, 3, [&](const LatticePath& p) {
    CHECK(p.min_height() >= 1);
    CHECK(p.max_height() <= 5);
    CHECK(p.end_height() == 3);
    ++count;
  });
  CHECK(count == 6);
  int odd = 0;
  for_each_confined_path(5, 3, 3, [&](const LatticePath&) { ++odd; });
  CHECK(odd == 0);
}
