#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"
#include "rjm/spectra.hpp"

using namespace rjm;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Matrix hessenberg(const std::vector<Rational>& a) {
  const std::size_t n = a.size() + 1;
  Matrix h(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i][i + 1] = 1;
    h[i + 1][i] = a[i];
  }
  return h;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
  const std::size_t n = x.size();
  Matrix r(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (x[i][l] != 0)
        for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][l] * y[l][j];
  return r;
}

Matrix power(const Matrix& h, int k) {
  Matrix r(h.size(), std::vector<Rational>(h.size(), Rational(0)));
  for (std::size_t i = 0; i < h.size(); ++i) r[i][i] = 1;
  for (int s = 0; s < k; ++s) r = multiply(r, h);
  return r;
}

// Exact expectation for a two-point law by summing over all 2^(n-1) assignments.
std::vector<Rational> two_point_rows(int n, int k, const Rational& p, const Rational& x1, const Rational& x2) {
  std::vector<Rational> rows(static_cast<std::size_t>(n), Rational(0));
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<Rational> a;
    Rational prob = 1;
    for (int i = 0; i < n - 1; ++i) {
      bool first = (mask >> i & 1u) == 0;
      a.push_back(first ? x1 : x2);
      prob *= first ? p : 1 - p;
    }
    Matrix hk = power(hessenberg(a), k);
    for (int i = 0; i < n; ++i) rows[i] += prob * hk[i][i];
  }
  return rows;
}

}  // namespace

TEST_CASE("distribution parsing and moments") {
  CHECK(Distribution::parse("uniform:0,1").moment(4) == make_rational(1, 5));
  CHECK(Distribution::parse("uniform:0.5").params[0] == make_rational(1, 2));
  CHECK(Distribution::parse("constant:3/2").moment(2) == make_rational(9, 4));
  CHECK(Distribution::parse("exponential:2").moment(3) == make_rational(6, 8));
  auto tp = Distribution::parse("two_point:0.25,1,3");
  CHECK(tp.moment(2) == make_rational(1, 4) + make_rational(3, 4) * 9);
  CHECK(tp.to_string() == "two_point:1/4,1,3");
  CHECK(Distribution::parse("constant:0.05").params[0] == make_rational(1, 20));
  CHECK_THROWS_AS(Distribution::parse("uniform:1,2"), DistributionError);
  CHECK_THROWS_AS(Distribution::parse("constant:0"), DistributionError);
  CHECK_THROWS_AS(Distribution::parse("two_point:1,1,2"), DistributionError);
  CHECK_THROWS_AS(Distribution::parse("normal:1"), DistributionError);
  CHECK_THROWS_AS(Distribution::parse("constant:1.x"), DistributionError);
  CHECK_THROWS_AS(Distribution::exponential(1).moment(kExponentialMomentCap + 1), CapExceeded);
}

TEST_CASE("generator streams are independent of each other") {
  SplitMix64 a(7, 3), b(7, 3), c(7, 4);
  auto x = a(), y = b(), z = c();
  CHECK(x == y);
  CHECK(x != z);
  auto d = Distribution::exponential(1);
  SplitMix64 r(1, 0);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(d.sample(r) > 0.0);
  }
}

TEST_CASE("exact expectations") {
  auto u = Distribution::uniform(1);
  CHECK(exact_expected(ExpectedKind::Entry11, 7, 4, u) == make_rational(7, 12));
  CHECK(exact_expected(ExpectedKind::Entry11, 7, 5, u) == 0);
  CHECK(exact_expected(ExpectedKind::Entry11, 12, 10, Distribution::constant(1)) == 42);

  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= 6; ++k) {
      Matrix hk = power(hessenberg(std::vector<Rational>(n - 1, Rational(2))), k);
      Rational tr = 0;
      for (int i = 0; i < n; ++i) tr += hk[i][i];
      CHECK(exact_expected(ExpectedKind::Trace, n, k, Distribution::constant(2)) == tr);
    }
  }

  const Rational p = make_rational(1, 3), x1 = 1, x2 = make_rational(5, 2);
  auto d = Distribution::two_point(p, x1, x2);
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= 8; k += 2) CHECK(expected_rows(n, k, d) == two_point_rows(n, k, p, x1, x2));
  }
}

TEST_CASE("interior rows and boundary deficit") {
  auto u = Distribution::uniform(1);
  auto rep = interior_row_check(5, 2, u);
  CHECK(rep.pass);
  CHECK(rep.details["omega_m"] == "5/3");
  CHECK(interior_row_check(5, 2, Distribution::constant(1)).details["omega_m"] == "6");
  CHECK(interior_row_check(9, 3, Distribution::two_point(make_rational(1, 2), 1, 2)).pass);
  CHECK_THROWS_AS(interior_row_check(4, 2, u), std::invalid_argument);

  auto asym = asymptotic_check(1, Distribution::constant(1), {10, 4, 6});
  CHECK(asym.pass);
  CHECK(asym.details["table"][0]["n"] == 4);
  CHECK(asym.details["table"][0]["deficit"] == "1/2");
  CHECK(asym.details["table"][2]["deficit"] == "1/5");
  CHECK(asymptotic_check(2, u, {5, 7, 9, 12}).pass);
}

TEST_CASE("spectral measure matches matrix powers") {
  JacobiSample s{2, {3.0}};
  auto rep = tau_consistency(s, 2);
  CHECK(rep.pass);
  CHECK(rep.details["tau"].get<double>() == doctest::Approx(3.0));

  auto d = Distribution::exponential(1);
  for (std::uint64_t idx = 0; idx < 20; ++idx) {
    auto sample = JacobiSample::draw(12, d, 99, idx);
    for (int k = 0; k <= 10; ++k) CHECK(tau_consistency(sample, k).pass);
  }
  auto sp = spectrum(JacobiSample{1, {}});
  CHECK(sp.weights == std::vector<double>{1.0});
}

TEST_CASE("Monte Carlo estimates") {
  auto c = Distribution::constant(1);
  auto r = mc_estimate(McKind::Trace, 10, 4, c, 50, 1);
  CHECK(r.std_error == 0.0);
  CHECK(r.mean == doctest::Approx(exact_expected(ExpectedKind::Trace, 10, 4, c).get_d() / 10));

  auto k0 = mc_estimate(McKind::SpectralMoments, 9, 0, Distribution::uniform(1), 200, 5);
  CHECK(k0.mean == doctest::Approx(1.0).epsilon(1e-12));

  auto u = Distribution::uniform(1);
  auto e = mc_estimate(McKind::Entry11, 7, 4, u, 20000, 11, 3);
  CHECK(std::abs(e.mean - 7.0 / 12.0) <= 4 * e.std_error);
  auto spec = mc_estimate(McKind::SpectralMoments, 7, 4, u, 20000, 11, 2);
  CHECK(spec.mean == doctest::Approx(e.mean).epsilon(1e-9));
  auto emp = mc_estimate(McKind::EmpiricalMoments, 8, 2, u, 5000, 3);
  auto tr = mc_estimate(McKind::Trace, 8, 2, u, 5000, 3);
  CHECK(emp.mean == doctest::Approx(tr.mean).epsilon(1e-9));

  auto one = mc_estimate(McKind::Trace, 6, 4, u, 3001, 17, 1);
  auto many = mc_estimate(McKind::Trace, 6, 4, u, 3001, 17, 5);
  CHECK(one.mean == many.mean);
  CHECK(one.std_error == many.std_error);
  CHECK(parse_mc_kind(mc_kind_name(McKind::EmpiricalMoments)) == McKind::EmpiricalMoments);
}
