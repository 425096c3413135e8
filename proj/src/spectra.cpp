#include "rjm/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <thread>

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"

namespace rjm {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_param(const std::string& raw) {
  auto dot = raw.find('.');
  if (dot == std::string::npos) return parse_rational(raw);
  const std::string frac = raw.substr(dot + 1);
  const std::string whole = raw.substr(0, dot);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
    throw DistributionError("bad parameter '" + raw + "'");
  Integer den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rational q = parse_rational(whole.empty() || whole == "-" ? whole + "0" : whole);
  Rational f(Integer(frac, 10), den);
  f.canonicalize();
  return whole.starts_with('-') ? Rational(q - f) : Rational(q + f);
}

double to_double(const Rational& q) { return q.get_d(); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DistributionError(what);
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

void check_matrix_size(int n, int k) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be at least 1");
  if (k < 0) throw std::invalid_argument("power must be non-negative");
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t index) : state_(mix(seed) ^ mix(~index)) {}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

Distribution Distribution::constant(Rational c) {
  require(c > 0, "constant value must be positive");
  return {Kind::Constant, {c}};
}

Distribution Distribution::uniform(Rational theta) {
  require(theta > 0, "uniform upper bound must be positive");
  return {Kind::Uniform, {theta}};
}

Distribution Distribution::exponential(Rational rate) {
  require(rate > 0, "exponential rate must be positive");
  return {Kind::Exponential, {rate}};
}

Distribution Distribution::two_point(Rational p, Rational x1, Rational x2) {
  require(p > 0 && p < 1, "two_point probability must lie in (0, 1)");
  require(x1 > 0 && x2 > 0, "two_point atoms must be positive");
  return {Kind::TwoPoint, {p, x1, x2}};
}

Distribution Distribution::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::vector<Rational> p;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      try {
        p.push_back(parse_param(item));
      } catch (const PolyError&) {
        throw DistributionError("bad parameter '" + item + "' in '" + text + "'");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  auto arity = [&](std::size_t k) {
    require(p.size() == k, "distribution '" + name + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "constant") {
    arity(1);
    return constant(p[0]);
  }
  if (name == "uniform") {
    if (p.size() == 2) {
      require(p[0] == 0, "uniform lower bound must be 0");
      p.erase(p.begin());
    }
    arity(1);
    return uniform(p[0]);
  }
  if (name == "exponential") {
    arity(1);
    return exponential(p[0]);
  }
  if (name == "two_point") {
    arity(3);
    return two_point(p[0], p[1], p[2]);
  }
  throw DistributionError("unknown distribution '" + name + "'");
}

Rational Distribution::moment(int k) const {
  if (k < 0) throw DistributionError("negative moment order");
  auto power = [](const Rational& x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  };
  switch (kind) {
    case Kind::Constant: return power(params[0], k);
    case Kind::Uniform: return power(params[0], k) / (k + 1);
    case Kind::Exponential: {
      if (k > kExponentialMomentCap) throw CapExceeded("exponential moment", k, kExponentialMomentCap);
      Rational f = 1;
      for (int i = 2; i <= k; ++i) f *= i;
      return f / power(params[0], k);
    }
    case Kind::TwoPoint: return params[0] * power(params[1], k) + (1 - params[0]) * power(params[2], k);
  }
  return 0;
}

double Distribution::sample(SplitMix64& rng) const {
  switch (kind) {
    case Kind::Constant: return to_double(params[0]);
    case Kind::Uniform: return to_double(params[0]) * rng.uniform();
    case Kind::Exponential: return -std::log(rng.uniform()) / to_double(params[0]);
    case Kind::TwoPoint: return rng.uniform() < to_double(params[0]) ? to_double(params[1]) : to_double(params[2]);
  }
  return 0;
}

std::string Distribution::to_string() const {
  std::string name;
  switch (kind) {
    case Kind::Constant: name = "constant"; break;
    case Kind::Uniform: name = "uniform"; break;
    case Kind::Exponential: name = "exponential"; break;
    case Kind::TwoPoint: name = "two_point"; break;
  }
  std::string out = name + ":";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + rjm::to_string(params[i]);
  return out;
}

Rational evaluate_moments(const Poly& p, const Distribution& d) {
  std::map<std::uint32_t, Rational> cache;
  return evaluate_exact(p, [&](SymbolId s) -> std::optional<Rational> {
    if (s.family != Family::M) return std::nullopt;
    auto it = cache.find(s.index);
    if (it == cache.end()) it = cache.emplace(s.index, d.moment(static_cast<int>(s.index))).first;
    return it->second;
  });
}

std::vector<Rational> expected_rows(int n, int k, const Distribution& d) {
  check_matrix_size(n, k);
  if (k > 2 * kDefaultEnumerationCap) throw CapExceeded("path length", k, 2 * kDefaultEnumerationCap);
  std::vector<Rational> rows(static_cast<std::size_t>(n), Rational(0));
  if (k % 2 != 0) return rows;
  for (int i = 1; i <= n; ++i) {
    Poly sum;
    for_each_confined_path(n, k, i, [&](const LatticePath& p) { sum += path_weight(p); });
    rows[i - 1] = evaluate_moments(expectation_substitute(sum), d);
  }
  return rows;
}

Rational exact_expected(ExpectedKind kind, int n, int k, const Distribution& d) {
  check_matrix_size(n, k);
  if (k > 2 * kDefaultEnumerationCap) throw CapExceeded("path length", k, 2 * kDefaultEnumerationCap);
  if (k % 2 != 0) return 0;
  if (kind == ExpectedKind::Entry11) {
    Poly sum;
    for_each_confined_path(n, k, 1, [&](const LatticePath& p) { sum += path_weight(p); });
    return evaluate_moments(expectation_substitute(sum), d);
  }
  Rational total = 0;
  for (const auto& r : expected_rows(n, k, d)) total += r;
  return total;
}

CheckReport interior_row_check(int n, int m, const Distribution& d) {
  if (m < 0 || n < 1 + 2 * m) throw std::invalid_argument("interior rows need n >= 1 + 2m");
  CheckReport rep("interior_rows");
  rep.details["n"] = n;
  rep.details["m"] = m;
  rep.details["dist"] = d.to_string();
  const Rational om = evaluate_moments(omega(m).value, d);
  const Rational al = evaluate_moments(alpha(m).value, d);
  rep.details["omega_m"] = to_string(om);
  rep.details["alpha_m"] = to_string(al);
  auto rows = expected_rows(n, 2 * m, d);
  Json interior = Json::array(), boundary = Json::array();
  for (int i = 1; i <= n; ++i) {
    bool inside = i >= 1 + m && i <= n - m;
    (inside ? interior : boundary).push_back(Json{{"i", i}, {"value", to_string(rows[i - 1])}});
    if (inside) rep.expect_equal("row " + std::to_string(i), rows[i - 1], om);
  }
  rep.expect_equal("row 1", rows.front(), al);
  rep.expect_equal("row " + std::to_string(n), rows.back(), al);
  rep.details["interior"] = interior;
  rep.details["boundary"] = boundary;
  return rep;
}

CheckReport asymptotic_check(int m, const Distribution& d, std::vector<int> n_list) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  CheckReport rep("asymptotic");
  rep.details["m"] = m;
  rep.details["dist"] = d.to_string();
  const Rational om = evaluate_moments(omega(m).value, d);
  rep.details["omega_m"] = to_string(om);
  Json table = Json::array();
  std::optional<Rational> previous;
  for (int n : n_list) {
    if (n < 1 + 2 * m) throw std::invalid_argument("asymptotic check needs every n >= 1 + 2m");
    auto rows = expected_rows(n, 2 * m, d);
    Rational trace = 0, boundary = 0;
    for (int i = 1; i <= n; ++i) {
      trace += rows[i - 1];
      if (i < 1 + m || i > n - m) boundary += rows[i - 1];
    }
    Rational normalized = trace / n;
    Rational deficit = om - normalized;
    Rational bound = Rational(2 * m, n) * om + boundary / n;
    bound.canonicalize();
    const std::string at = "n=" + std::to_string(n);
    rep.expect(deficit >= 0, at + " deficit non-negative", to_string(deficit), "0");
    rep.expect(abs(deficit) <= bound, at + " deficit bound", to_string(deficit), to_string(bound));
    if (previous) rep.expect(deficit <= *previous, at + " deficit monotone", to_string(deficit), to_string(*previous));
    rep.expect_equal(at + " odd power", exact_expected(ExpectedKind::Trace, n, 2 * m + 1, d), Rational(0));
    previous = deficit;
    table.push_back(Json{{"n", n},
                         {"normalized_trace", to_string(normalized)},
                         {"deficit", to_string(deficit)},
                         {"bound", to_string(bound)},
                         {"deficit_float", deficit.get_d()}});
  }
  rep.details["table"] = table;
  return rep;
}

JacobiSample JacobiSample::draw(int n, const Distribution& d, std::uint64_t seed, std::uint64_t index) {
  check_matrix_size(n, 0);
  SplitMix64 rng(seed, index);
  JacobiSample s;
  s.n = n;
  s.offdiag.resize(static_cast<std::size_t>(n - 1));
  for (auto& a : s.offdiag) a = d.sample(rng);
  return s;
}

std::vector<double> JacobiSample::power_apply(int k, int start) const {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0), w(v.size());
  v[static_cast<std::size_t>(start)] = 1.0;
  for (int step = 0; step < k; ++step) {
    for (int r = 0; r < n; ++r) {
      double x = r + 1 < n ? v[r + 1] : 0.0;
      if (r >= 1) x += offdiag[r - 1] * v[r - 1];
      w[r] = x;
    }
    v.swap(w);
  }
  return v;
}

double JacobiSample::trace_power(int k) const {
  double t = 0;
  for (int i = 0; i < n; ++i) t += power_apply(k, i)[i];
  return t;
}

double JacobiSample::entry11(int k) const { return power_apply(k, 0)[0]; }

Spectrum spectrum(const JacobiSample& s) {
  Spectrum out;
  if (s.n == 1) {
    out.eigenvalues = {0.0};
    out.weights = {1.0};
    out.min_gap = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(s.n);
  Eigen::VectorXd sub(s.n - 1);
  for (int i = 0; i + 1 < s.n; ++i) sub(i) = std::sqrt(s.offdiag[i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver did not converge");
  out.min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < s.n; ++j) {
    out.eigenvalues.push_back(es.eigenvalues()(j));
    double q = es.eigenvectors()(0, j);
    out.weights.push_back(q * q);
    if (j > 0) out.min_gap = std::min(out.min_gap, out.eigenvalues[j] - out.eigenvalues[j - 1]);
  }
  return out;
}

McResult mc_estimate(McKind kind, int n, int k, const Distribution& d, std::uint64_t samples, std::uint64_t seed,
                     int threads) {
  check_matrix_size(n, k);
  if (samples < 1) throw std::invalid_argument("at least one sample is required");
  std::vector<double> values(samples);
  auto one = [&](std::uint64_t idx) {
    JacobiSample s = JacobiSample::draw(n, d, seed, idx);
    switch (kind) {
      case McKind::Trace: return s.trace_power(k) / n;
      case McKind::Entry11: return s.entry11(k);
      case McKind::SpectralMoments:
      case McKind::EmpiricalMoments: {
        Spectrum sp = spectrum(s);
        double mass = pairwise_sum(sp.weights.data(), sp.weights.size());
        if (std::abs(mass - 1.0) > 1e-12) throw std::runtime_error("Christoffel weights do not sum to 1");
        std::vector<double> terms(sp.eigenvalues.size());
        for (std::size_t j = 0; j < terms.size(); ++j) {
          double p = std::pow(sp.eigenvalues[j], k);
          terms[j] = kind == McKind::SpectralMoments ? sp.weights[j] * p : p / n;
        }
        return pairwise_sum(terms.data(), terms.size());
      }
    }
    return 0.0;
  };
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  const std::uint64_t chunk = (samples + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w * chunk; i < std::min(samples, (w + 1) * chunk); ++i) values[i] = one(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  McResult r;
  r.samples = samples;
  r.mean = pairwise_sum(values.data(), values.size()) / static_cast<double>(samples);
  if (samples > 1) {
    for (auto& v : values) v = (v - r.mean) * (v - r.mean);
    double var = pairwise_sum(values.data(), values.size()) / static_cast<double>(samples - 1);
    r.std_error = std::sqrt(var / static_cast<double>(samples));
  }
  return r;
}

CheckReport tau_consistency(const JacobiSample& s, int k, double rel_tol) {
  CheckReport rep("tau_consistency");
  Spectrum sp = spectrum(s);
  double rho = 0;
  for (double l : sp.eigenvalues) rho = std::max(rho, std::abs(l));
  std::vector<double> tau_terms, sigma_terms;
  for (std::size_t j = 0; j < sp.eigenvalues.size(); ++j) {
    double p = std::pow(sp.eigenvalues[j], k);
    tau_terms.push_back(sp.weights[j] * p);
    sigma_terms.push_back(p / s.n);
  }
  double tau = pairwise_sum(tau_terms.data(), tau_terms.size());
  double sigma = pairwise_sum(sigma_terms.data(), sigma_terms.size());
  double entry = s.entry11(k);
  double trace = s.trace_power(k) / s.n;
  auto close = [&](double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), std::pow(rho, k)});
    return std::abs(a - b) <= rel_tol * scale;
  };
  rep.expect(close(tau, entry), "tau moment vs H^k(1,1)", fmt(tau), fmt(entry));
  rep.expect(close(sigma, trace), "sigma moment vs Tr/n", fmt(sigma), fmt(trace));
  double mass = pairwise_sum(sp.weights.data(), sp.weights.size());
  rep.expect(std::abs(mass - 1.0) <= 1e-12, "Christoffel weights sum", fmt(mass), "1");
  bool positive = std::all_of(sp.weights.begin(), sp.weights.end(), [](double q) { return q > 0; });
  rep.expect(positive, "Christoffel weights positive");
  rep.expect(sp.min_gap > 0, "eigenvalues simple", fmt(sp.min_gap), "> 0");
  rep.details["n"] = s.n;
  rep.details["k"] = k;
  rep.details["tolerance"] = rel_tol;
  rep.details["tau"] = tau;
  rep.details["entry11"] = entry;
  rep.details["sigma"] = sigma;
  rep.details["trace_over_n"] = trace;
  return rep;
}

McKind parse_mc_kind(const std::string& name) {
  for (auto k : {McKind::Trace, McKind::Entry11, McKind::SpectralMoments, McKind::EmpiricalMoments}) {
    if (mc_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown Monte Carlo kind: " + name);
}

std::string mc_kind_name(McKind k) {
  switch (k) {
    case McKind::Trace: return "trace";
    case McKind::Entry11: return "entry11";
    case McKind::SpectralMoments: return "spectral_moments";
    case McKind::EmpiricalMoments: return "empirical_moments";
  }
  return {};
}

}  // namespace rjm
