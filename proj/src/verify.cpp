#include "rjm/verify.hpp"

#include <cmath>
#include <cstdio>

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"
#include "rjm/series.hpp"
#include "rjm/spectra.hpp"
#include "rjm/trees.hpp"

namespace rjm {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational all_ones(const Poly& p) {
  return evaluate_exact(p, [](SymbolId) { return std::optional<Rational>(1); });
}

std::vector<Distribution> spectral_laws() {
  return {Distribution::constant(1), Distribution::uniform(1),
          Distribution::two_point(make_rational(1, 2), 1, 2)};
}

}  // namespace

CheckReport check_path_counts(int max_n) {
  CheckReport rep("path_counts");
  for (int n = 0; n <= max_n; ++n) {
    const Integer central = binom(2 * n, n);
    const Integer catalan = central / (n + 1);
    const std::string at = "n=" + std::to_string(n);
    rep.expect_equal(at + " dyck", Rational(Integer(count_paths(PathKind::Dyck, n, 0, max_n))), Rational(catalan));
    rep.expect_equal(at + " generalized", Rational(Integer(count_paths(PathKind::Generalized, n, 0, max_n))),
                     Rational(central));
  }
  rep.details["max_n"] = max_n;
  return rep;
}

CheckReport check_closed_forms(int max_n) {
  CheckReport rep("closed_forms");
  for (int n = 0; n <= max_n; ++n) {
    const std::string at = "n=" + std::to_string(n) + " ";
    const Poly a = weight_polynomial(WeightKind::A, n);
    const Poly w = weight_polynomial(WeightKind::W, n);
    rep.expect_equal(at + "flajolet_A", closed_form(ClosedFormKind::FlajoletA, n), a);
    rep.expect_equal(at + "touchard_A", closed_form(ClosedFormKind::TouchardA, n), a);
    rep.expect_equal(at + "flajolet_B", closed_form(ClosedFormKind::FlajoletB, n), weight_polynomial(WeightKind::B, n));
    rep.expect_equal(at + "theorem_W", closed_form(ClosedFormKind::TheoremW, n), w);
    rep.expect_equal(at + "nested_W", closed_form(ClosedFormKind::NestedW, n), w);
    Poly by_returns;
    for (int k = 0; k <= n; ++k) by_returns += closed_form(ClosedFormKind::ReturnsA, n, k);
    rep.expect_equal(at + "returns_A sum", by_returns, a);
  }
  rep.details["max_n"] = max_n;
  return rep;
}

CheckReport check_series(long order, int depth, std::uint64_t seed) {
  CheckReport rep("series");
  for (auto id : {Relation::Decoupling, Relation::ChainA, Relation::ChainB, Relation::Harmonic, Relation::ContFrac,
                  Relation::LemmaRk, Relation::LemmaRK}) {
    CheckReport sub = verify_relation(id, order, RelationOptions{depth, seed});
    rep.absorb(sub);
    rep.details[relation_name(id)] = sub.pass;
  }
  rep.details["order"] = order;
  rep.details["depth"] = depth;
  return rep;
}

CheckReport check_moments(int max_n, int ones_n) {
  CheckReport rep("moments");
  CheckReport rec = check_recurrences(max_n);
  rep.absorb(rec);
  rep.details["recurrences"] = rec.details;
  for (int n = 0; n <= max_n; ++n) rep.absorb(expectation_bridge(n));
  for (int n = 0; n <= ones_n; ++n) {
    const Integer central = binom(2 * n, n);
    const std::string at = "n=" + std::to_string(n);
    rep.expect_equal(at + " alpha at m=1", all_ones(alpha(n).value), Rational(central / (n + 1)));
    rep.expect_equal(at + " omega at m=1", all_ones(omega(n).value), Rational(central));
  }
  rep.details["max_n"] = max_n;
  rep.details["ones_n"] = ones_n;
  return rep;
}

CheckReport check_finite_spectra(int max_m) {
  CheckReport rep("finite_spectra");
  for (const auto& d : spectral_laws()) {
    const std::string law = d.to_string();
    for (int m = 0; m <= max_m; ++m) {
      const Rational target = evaluate_moments(alpha(m).value, d);
      for (int n : {m + 1, 2 * m + 3}) {
        const std::string at = law + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        rep.expect_equal(at + " entry11", exact_expected(ExpectedKind::Entry11, n, 2 * m, d), target);
        rep.expect_equal(at + " odd entry11", exact_expected(ExpectedKind::Entry11, n, 2 * m + 1, d), Rational(0));
        rep.expect_equal(at + " odd trace", exact_expected(ExpectedKind::Trace, n, 2 * m + 1, d), Rational(0));
      }
    }
    for (auto [n, m] : {std::pair{5, 2}, std::pair{7, 3}}) {
      CheckReport rows = interior_row_check(n, m, d);
      rows.name = law + " interior n=" + std::to_string(n) + " m=" + std::to_string(m);
      rep.absorb(rows);
    }
  }
  rep.details["max_m"] = max_m;
  return rep;
}

CheckReport check_asymptotics(int max_n, int max_m) {
  CheckReport rep("asymptotics");
  const auto one = Distribution::constant(1);
  Json tables = Json::object();
  for (int m = 1; m <= max_m; ++m) {
    rep.expect_equal("omega_" + std::to_string(m) + " at m=1", all_ones(omega(m).value), Rational(binom(2 * m, m)));
    std::vector<int> ns;
    for (int n = 2 * m + 1; n <= max_n; ++n) ns.push_back(n);
    CheckReport sub = asymptotic_check(m, one, ns);
    sub.name = "m=" + std::to_string(m);
    rep.absorb(sub);
    tables[sub.name] = sub.details["table"];
  }
  rep.details["max_n"] = max_n;
  rep.details["max_m"] = max_m;
  rep.details["tables"] = tables;
  return rep;
}

CheckReport check_monte_carlo(std::uint64_t samples, std::uint64_t seed, int threads) {
  CheckReport rep("monte_carlo");
  const auto u = Distribution::uniform(1);
  auto band = [&](const std::string& label, const McResult& r, double exact) {
    rep.expect(std::abs(r.mean - exact) <= 4 * r.std_error, label + " within 4 SE", fmt(r.mean), fmt(exact));
    rep.details[label] = Json{{"mean", r.mean}, {"std_error", r.std_error}, {"exact", exact}, {"samples", r.samples}};
  };
  band("entry11 n=7 k=4", mc_estimate(McKind::Entry11, 7, 4, u, samples, seed, threads),
       exact_expected(ExpectedKind::Entry11, 7, 4, u).get_d());
  band("trace n=20 k=2", mc_estimate(McKind::Trace, 20, 2, u, samples, seed, threads),
       exact_expected(ExpectedKind::Trace, 20, 2, u).get_d() / 20);

  const std::vector<Distribution> laws = {u, Distribution::exponential(1),
                                          Distribution::two_point(make_rational(1, 2), 1, 2)};
  std::size_t consistent = 0;
  for (std::uint64_t idx = 0; idx < 100; ++idx) {
    const int n = 2 + static_cast<int>(idx % 29);
    const int k = static_cast<int>(idx % 9);
    CheckReport sub = tau_consistency(JacobiSample::draw(n, laws[idx % laws.size()], seed, idx), k);
    sub.name = "sample " + std::to_string(idx);
    if (sub.pass) ++consistent;
    rep.absorb(sub);
  }
  rep.details["tau_samples"] = 100;
  rep.details["tau_consistent"] = consistent;
  rep.details["seed"] = seed;
  return rep;
}

CheckReport verify_all(const VerifyOptions& opt) {
  if (opt.order < 1) throw std::invalid_argument("verify-all order must be positive");
  const int n = opt.order;
  CheckReport rep("verify-all");
  Json checks = Json::array();
  auto run = [&](const CheckReport& sub) {
    rep.absorb(sub);
    checks.push_back(sub.to_json());
  };
  run(check_path_counts(std::min(2 * n + 2, 12)));
  run(check_closed_forms(std::min(n + 3, 8)));
  run(check_series(2L * n + 5, std::min(n - 1, 4) < 1 ? 1 : std::min(n - 1, 4), opt.seed));
  run(check_moments(n + 1, 2 * n));
  run(check_trees(n + 1, opt.threads));
  run(check_finite_spectra(n));
  run(check_asymptotics(8 * n, std::min(n, 3)));
  run(check_monte_carlo(opt.samples, opt.seed, opt.threads));
  rep.details["order"] = n;
  rep.details["seed"] = opt.seed;
  rep.details["samples"] = opt.samples;
  rep.details["checks"] = checks;
  return rep;
}

}  // namespace rjm
