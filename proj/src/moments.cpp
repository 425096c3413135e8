#include "rjm/moments.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "rjm/lattice.hpp"
#include "rjm/series.hpp"

namespace rjm {

namespace {

std::mutex cache_mutex;
std::map<std::tuple<int, int, int>, Poly> cache;

Poly m_of(int j) { return j == 0 ? Poly(1) : Poly::m(static_cast<std::uint32_t>(j)); }

Poly scaled(const Integer& c, const Poly& p) { return p * Rational(c); }

template <class F>
Poly cached(MomentSequence seq, int n, int k, F compute) {
  auto key = std::make_tuple(static_cast<int>(seq), n, k);
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Poly value = compute();
  std::lock_guard lock(cache_mutex);
  cache.emplace(key, value);
  return value;
}

void check_sizes(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("moment indices must be non-negative");
}

}  // namespace

std::string MomentExpr::label() const {
  switch (sequence) {
    case MomentSequence::Alpha: return "alpha_" + std::to_string(n);
    case MomentSequence::Omega: return "omega_" + std::to_string(n);
    case MomentSequence::AlphaK: return "alpha_" + std::to_string(n) + "^(" + std::to_string(k) + ")";
  }
  return {};
}

MomentExpr alpha(int n) {
  check_sizes(n, 0);
  Poly v = cached(MomentSequence::Alpha, n, 1, [n] {
    Poly sum;
    for (const auto& c : compositions(n)) sum += scaled(rho1(c), valued_product(Family::M, c));
    return sum;
  });
  return {v, MomentSequence::Alpha, n, 1};
}

MomentExpr omega(int n) {
  check_sizes(n, 0);
  Poly v = cached(MomentSequence::Omega, n, 0, [n] {
    Poly sum;
    for (const auto& [p, q] : comp_pairs(n)) {
      sum += scaled(rho2(p, q), valued_product(Family::M, p) * valued_product(Family::M, q));
    }
    return sum;
  });
  return {v, MomentSequence::Omega, n, 0};
}

MomentExpr alpha_k(int n, int k) {
  check_sizes(n, k);
  Poly v = cached(MomentSequence::AlphaK, n, k, [n, k] {
    if (n == 0) return Poly(1);
    Poly sum;
    for (const auto& c : compositions(n)) {
      Integer w = binom(c.front() + k - 1, k - 1) * rho1(c);
      if (w != 0) sum += scaled(w, valued_product(Family::M, c));
    }
    return sum;
  });
  return {v, MomentSequence::AlphaK, n, k};
}

CheckReport check_recurrences(int max_n) {
  CheckReport rep("recurrences");
  rep.details["max_n"] = max_n;
  auto ak = [](int n, int k) { return alpha_k(n, k).value; };

  CheckReport rel_alphas("relalphas");
  for (int n = 0; n <= max_n; ++n) {
    for (int k = 0; k <= max_n; ++k) {
      Poly rhs;
      for (int j = 0; j <= n; ++j) rhs += scaled(binom(j + k - 1, k - 1), m_of(j) * ak(n - j, j));
      rel_alphas.expect_equal("n=" + std::to_string(n) + " k=" + std::to_string(k), ak(n, k), rhs);
    }
  }
  rep.absorb(rel_alphas);

  CheckReport simple("relomegaalpha_simple");
  CheckReport full("relomegaalpha");
  for (int n = 0; n <= max_n; ++n) {
    Poly s, f;
    for (int j = 0; j <= n; ++j) {
      for (int l = 0; l <= n - j; ++l) s += m_of(j) * ak(l, j) * ak(n - j - l, j + 1);
      for (int i = 0; i <= j; ++i) {
        for (int l = 0; l <= n - j; ++l) {
          f += scaled(binom(j, i), m_of(i) * m_of(j - i) * ak(l, i) * ak(n - j - l, j - i));
        }
      }
    }
    simple.expect_equal("n=" + std::to_string(n), omega(n).value, s);
    full.expect_equal("n=" + std::to_string(n), omega(n).value, f);
  }
  rep.absorb(simple);
  rep.absorb(full);

  // Series forms; each sum stops once the summand's leading exponent passes the order.
  const long order = 2L * max_n + 1;
  auto g = [order](int k) { return series_from(SeriesKind::g(k), order); };
  LaurentSeries fser = series_from(SeriesKind::f(), order);

  CheckReport gk("relgkgk");
  for (int k = 0; k <= max_n; ++k) {
    LaurentSeries lhs = g(k);
    LaurentSeries rhs(LaurentSeries::kExact);
    for (int j = 0; 2L * j + k <= order; ++j) {
      rhs += (g(j) * scaled(binom(j + k - 1, k - 1), m_of(j))).shifted(j + k);
    }
    rhs = rhs.truncated(order);
    for (long e = 0; e <= order; ++e) {
      gk.expect_equal("k=" + std::to_string(k) + " z^-" + std::to_string(e), lhs.coeff(e), rhs.coeff(e));
      if ((e - k) % 2 != 0) gk.expect(lhs.coeff(e).is_zero(), "parity of g_" + std::to_string(k));
    }
  }
  rep.absorb(gk);

  CheckReport f_simple("relfgk_simple");
  CheckReport f_full("relfgk");
  LaurentSeries rs(LaurentSeries::kExact), rf(LaurentSeries::kExact);
  for (int j = 0; 2L * j + 1 <= order; ++j) {
    rs += g(j) * g(j + 1) * m_of(j);
    for (int i = 0; i <= j; ++i) {
      rf += (g(i) * g(j - i) * scaled(binom(j, i), m_of(i) * m_of(j - i))).shifted(j + 1);
    }
  }
  rs = rs.truncated(order);
  rf = rf.truncated(order);
  for (long e = 0; e <= order; ++e) {
    std::string where = "z^-" + std::to_string(e);
    f_simple.expect_equal(where, fser.coeff(e), rs.coeff(e));
    f_full.expect_equal(where, fser.coeff(e), rf.coeff(e));
    if (e % 2 == 0) f_simple.expect(fser.coeff(e).is_zero(), "parity of f");
  }
  rep.absorb(f_simple);
  rep.absorb(f_full);
  return rep;
}

CheckReport expectation_bridge(int n) {
  CheckReport rep("expectation_bridge");
  rep.details["n"] = n;
  rep.expect_equal("alpha_" + std::to_string(n), alpha(n).value,
                   expectation_substitute(weight_polynomial(WeightKind::A, n)));
  rep.expect_equal("omega_" + std::to_string(n), omega(n).value,
                   expectation_substitute(weight_polynomial(WeightKind::W, n)));
  return rep;
}

MomentSequence parse_sequence(const std::string& name) {
  if (name == "alpha") return MomentSequence::Alpha;
  if (name == "omega") return MomentSequence::Omega;
  if (name == "alpha_k" || name == "alphak") return MomentSequence::AlphaK;
  throw std::invalid_argument("unknown sequence: " + name);
}

std::string sequence_name(MomentSequence s) {
  switch (s) {
    case MomentSequence::Alpha: return "alpha";
    case MomentSequence::Omega: return "omega";
    case MomentSequence::AlphaK: return "alpha_k";
  }
  return {};
}

std::vector<MomentExpr> moment_table(MomentSequence seq, int max_n, int k) {
  std::vector<MomentExpr> out;
  for (int n = 0; n <= max_n; ++n) {
    switch (seq) {
      case MomentSequence::Alpha: out.push_back(alpha(n)); break;
      case MomentSequence::Omega: out.push_back(omega(n)); break;
      case MomentSequence::AlphaK: out.push_back(alpha_k(n, k)); break;
    }
  }
  return out;
}

}  // namespace rjm
