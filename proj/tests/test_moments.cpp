#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"
#include "rjm/series.hpp"

using namespace rjm;

namespace {

Rational all_ones(const Poly& p) {
  return evaluate_exact(p, [](SymbolId) { return std::optional<Rational>(1); });
}

}  // namespace

TEST_CASE("reference alpha and omega tables") {
  CHECK(alpha(0).value == Poly(1));
  CHECK(alpha(1).value == Poly::parse("m1"));
  CHECK(alpha(2).value == Poly::parse("m2 + m1^2"));
  CHECK(alpha(3).value == Poly::parse("m3 + 3*m2*m1 + m1^3"));
  CHECK(alpha(4).value == Poly::parse("m4 + 4*m3*m1 + 3*m2^2 + 5*m2*m1^2 + m1^4"));
  CHECK(alpha(5).value ==
        Poly::parse("m5 + 5*m4*m1 + 10*m3*m2 + 7*m3*m1^2 + 11*m2^2*m1 + 7*m2*m1^3 + m1^5"));
  CHECK(omega(0).value == Poly(1));
  CHECK(omega(1).value == Poly::parse("2*m1"));
  CHECK(omega(2).value == Poly::parse("2*m2 + 4*m1^2"));
  CHECK(omega(3).value == Poly::parse("2*m3 + 12*m2*m1 + 6*m1^3"));
  CHECK(omega(4).value == Poly::parse("2*m4 + 16*m3*m1 + 12*m2^2 + 32*m2*m1^2 + 8*m1^4"));
  CHECK(omega(5).value == Poly::parse("2*m5 + 20*m4*m1 + 40*m3*m2 + 50*m3*m1^2 + 70*m2^2*m1 + "
                                      "60*m2*m1^3 + 10*m1^5"));
  CHECK(alpha(3).label() == "alpha_3");
  CHECK(alpha_k(3, 2).label() == "alpha_3^(2)");
}

TEST_CASE("alpha_k conventions") {
  for (int n = 0; n <= 8; ++n) {
    CHECK(alpha_k(n, 1).value == alpha(n).value);
    CHECK(alpha_k(n, 0).value == Poly(n == 0 ? 1 : 0));
  }
  for (int k = 0; k <= 6; ++k) CHECK(alpha_k(0, k).value == Poly(1));
  CHECK(alpha_k(1, 3).value == Poly::parse("3*m1"));
}

TEST_CASE("all-ones specialization and homogeneity") {
  Integer cat = 1;
  for (int n = 0; n <= 10; ++n) {
    Integer central;
    mpz_bin_uiui(central.get_mpz_t(), 2 * n, n);
    CHECK(all_ones(alpha(n).value) == Rational(central / (n + 1)));
    CHECK(all_ones(omega(n).value) == Rational(central));
    if (n >= 1 && n <= 8) {
      CHECK(index_weights(alpha(n).value) == std::set<std::uint32_t>{static_cast<std::uint32_t>(n)});
      CHECK(index_weights(omega(n).value) == std::set<std::uint32_t>{static_cast<std::uint32_t>(n)});
      for (int k = 1; k <= 4; ++k) {
        CHECK(index_weights(alpha_k(n, k).value) == std::set<std::uint32_t>{static_cast<std::uint32_t>(n)});
      }
    }
  }
}

TEST_CASE("alpha_k as expectation of powers of A") {
  // Independent route: E([A^k]_{k+2n}) from the enumerated series A.
  auto a = series_from(SeriesKind::a(0), 13);
  for (int k = 0; k <= 4; ++k) {
    for (int n = 0; 2 * n + k <= 13; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(expectation_substitute(power_coefficient(a, k, 2L * n + k)) == alpha_k(n, k).value);
    }
  }
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 5; ++n) {
      Poly e = expectation_substitute(closed_form(ClosedFormKind::ReturnsA, n + k, k));
      CHECK(e == alpha_k(n, k).value * Poly::m(static_cast<std::uint32_t>(k)));
    }
  }
}

TEST_CASE("recurrences and series identities") {
  auto rep = check_recurrences(6);
  CAPTURE(rep.to_json().dump());
  CHECK(rep.pass);
  CHECK(rep.compared > 100);
}

TEST_CASE("expectation bridge") {
  for (int n = 0; n <= 7; ++n) {
    auto rep = expectation_bridge(n);
    CAPTURE(rep.to_json().dump());
    CHECK(rep.pass);
  }
  CHECK(expectation_substitute(weight_polynomial(WeightKind::A, 2)) == Poly::parse("m2 + m1^2"));
}

TEST_CASE("table") {
  auto t = moment_table(MomentSequence::Omega, 5);
  REQUIRE(t.size() == 6);
  CHECK(t[5].label() == "omega_5");
  CHECK(parse_sequence("alpha") == MomentSequence::Alpha);
  CHECK_THROWS(parse_sequence("beta"));
}
