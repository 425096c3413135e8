#include "rjm/series.hpp"

#include <algorithm>
#include <random>

#include "rjm/lattice.hpp"
#include "rjm/moments.hpp"

namespace rjm {

namespace {

long saturate(long x) { return x >= LaurentSeries::kExact / 2 ? LaurentSeries::kExact : x; }

// Lower bound on the exponent of the first nonzero coefficient.
long lower_exponent(const LaurentSeries& s) {
  auto d = s.leading_exponent();
  return d ? *d : saturate(s.order() + 1);
}

Poly shift_symbols(const Poly& p, Family family, std::uint32_t k) {
  if (k == 0) return p;
  return rename(p, [family, k](SymbolId s) { return SymbolId{family, s.index + k}; });
}

std::vector<LaurentSeries> powers(const LaurentSeries& s, int kmax) {
  std::vector<LaurentSeries> out{LaurentSeries::constant(Poly(1))};
  for (int k = 1; k <= kmax; ++k) out.push_back(out.back() * s);
  return out;
}

void compare(CheckReport& rep, const std::string& label, const LaurentSeries& lhs,
             const LaurentSeries& rhs, long upto) {
  long lo = std::min(lower_exponent(lhs), lower_exponent(rhs));
  upto = std::min({upto, lhs.order(), rhs.order()});
  for (long n = std::min(lo, 0L); n <= upto; ++n) {
    rep.expect_equal(label + " z^-" + std::to_string(n), lhs.coeff(n), rhs.coeff(n));
  }
  rep.details[label + ".order"] = upto;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  long p = 0;
  while (p == 0) p = num(rng);
  return make_rational(p, den(rng));
}

// s_n = q*a_n + q'*a_j with random rationals and random j <= n.
std::vector<Poly> random_odd_coefficients(std::uint64_t seed, long order) {
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  for (long n = 0; 2 * n + 1 <= order; ++n) {
    std::uniform_int_distribution<long> pick(0, n);
    Poly s = Poly::a(static_cast<std::uint32_t>(n)) * random_rational(rng);
    s += Poly::a(static_cast<std::uint32_t>(pick(rng))) * random_rational(rng);
    out.push_back(std::move(s));
  }
  return out;
}

void check_lemma_rk(CheckReport& rep, const std::string& label, const LaurentSeries& s, long order) {
  LaurentSeries r = reciprocal_z_minus(s, order);
  int nmax = static_cast<int>((r.order() - 1) / 2);
  auto pw = powers(s, nmax);
  for (int n = 0; n <= nmax; ++n) {
    Poly sum;
    for (int k = 0; k <= n; ++k) sum += pw[k].coeff(2L * n - k);
    rep.expect_equal(label + " r_" + std::to_string(n), r.coeff(2L * n + 1), sum);
  }
}

}  // namespace

OrderExceeded::OrderExceeded(long requested, long bound)
    : SeriesError("coefficient z^-" + std::to_string(requested) + " exceeds provable order " +
                  std::to_string(bound)),
      requested(requested),
      bound(bound) {}

LaurentSeries::LaurentSeries(std::map<long, Poly> coeffs, long order) : order_(saturate(order)) {
  for (auto& [n, c] : coeffs) set(n, std::move(c));
}

LaurentSeries LaurentSeries::constant(const Poly& c) { return monomial(0, c); }

LaurentSeries LaurentSeries::monomial(long n, const Poly& c) {
  LaurentSeries s(kExact);
  s.set(n, c);
  return s;
}

void LaurentSeries::set(long n, Poly c) {
  if (n > order_ || c.is_zero()) {
    coeffs_.erase(n);
    return;
  }
  coeffs_[n] = std::move(c);
}

Poly LaurentSeries::coeff(long n) const {
  if (n > order_) throw OrderExceeded(n, order_);
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Poly() : it->second;
}

std::optional<long> LaurentSeries::leading_exponent() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

LaurentSeries LaurentSeries::truncated(long order) const {
  LaurentSeries out(std::min(order_, order));
  for (const auto& [n, c] : coeffs_) out.set(n, c);
  return out;
}

LaurentSeries LaurentSeries::shifted(long s) const {
  LaurentSeries out(saturate(order_ + s));
  for (const auto& [n, c] : coeffs_) out.set(n + s, c);
  return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  order_ = std::min(order_, o.order_);
  std::map<long, Poly> merged;
  for (const auto& [n, c] : coeffs_) {
    if (n <= order_) merged[n] = c;
  }
  for (const auto& [n, c] : o.coeffs_) {
    if (n <= order_) merged[n] += c;
  }
  coeffs_.clear();
  for (auto& [n, c] : merged) set(n, std::move(c));
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += o * Poly(-1); }

LaurentSeries& LaurentSeries::operator*=(const Poly& c) {
  std::map<long, Poly> old;
  old.swap(coeffs_);
  for (auto& [n, v] : old) set(n, v * c);
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  long order = std::min(saturate(a.order() + lower_exponent(b)), saturate(b.order() + lower_exponent(a)));
  std::map<long, Poly> acc;
  for (const auto& [i, ca] : a.coeffs()) {
    for (const auto& [j, cb] : b.coeffs()) {
      if (i + j > order) break;
      acc[i + j] += ca * cb;
    }
  }
  return LaurentSeries(std::move(acc), order);
}

Json LaurentSeries::to_json() const {
  Json j;
  if (exact()) {
    j["order"] = "exact";
  } else {
    j["order"] = order_;
  }
  Json list = Json::array();
  for (const auto& [n, c] : coeffs_) list.push_back(Json::array({n, c.to_string()}));
  j["coeffs"] = list;
  return j;
}

LaurentSeries inverse(const LaurentSeries& t) {
  auto d = t.leading_exponent();
  if (!d) throw SeriesError("inverse of a series with no known nonzero coefficient");
  Poly lead = t.coeff(*d);
  if (!lead.is_constant()) throw SeriesError("inverse needs a rational leading coefficient");
  Rational inv_c = Rational(1) / lead.constant();
  if (t.exact()) {
    if (t.coeffs().size() != 1) throw SeriesError("inverse of an exact series needs a truncation order");
    return LaurentSeries::monomial(-*d, Poly(inv_c));
  }
  long rel = t.order() - *d;
  std::vector<Poly> v(static_cast<std::size_t>(rel + 1));
  v[0] = Poly(inv_c);
  for (long j = 1; j <= rel; ++j) {
    Poly sum;
    for (long i = 1; i <= j; ++i) {
      Poly ti = t.coeff(*d + i);
      if (!ti.is_zero()) sum += ti * v[j - i];
    }
    v[j] = sum * (-inv_c);
  }
  std::map<long, Poly> out;
  for (long j = 0; j <= rel; ++j) out[-*d + j] = std::move(v[j]);
  return LaurentSeries(std::move(out), t.order() - 2 * *d);
}

LaurentSeries reciprocal_z_minus(const LaurentSeries& s, long max_order) {
  for (const auto& [n, c] : s.coeffs()) {
    if (n < 1 || n % 2 == 0) {
      throw ParityError("reciprocal_z_minus: nonzero coefficient at z^-" + std::to_string(n));
    }
  }
  long order;
  if (s.exact()) {
    if (max_order < 0) throw SeriesError("reciprocal_z_minus of an exact series needs a target order");
    order = max_order;
  } else {
    order = max_order >= 0 ? std::min(s.order() + 2, max_order) : s.order() + 2;
  }
  std::vector<Poly> r{Poly(1)};
  for (long n = 1; 2 * n + 1 <= order; ++n) {
    Poly sum;
    for (long k = 0; k < n; ++k) {
      Poly sk = s.coeff(2 * k + 1);
      if (!sk.is_zero()) sum += sk * r[static_cast<std::size_t>(n - k - 1)];
    }
    r.push_back(std::move(sum));
  }
  std::map<long, Poly> out;
  if (order >= 1) {
    for (std::size_t n = 0; n < r.size(); ++n) out[2 * static_cast<long>(n) + 1] = r[n];
  }
  return LaurentSeries(std::move(out), order);
}

Poly power_coefficient(const LaurentSeries& s, int k, long idx) {
  if (k < 0) throw SeriesError("power_coefficient: negative exponent");
  LaurentSeries p = LaurentSeries::constant(Poly(1));
  for (int i = 0; i < k; ++i) p = p * s;
  if (idx > p.order()) throw OrderExceeded(idx, p.order());
  return p.coeff(idx);
}

LaurentSeries series_from(const SeriesKind& kind, long order, CoefficientSource source) {
  if (order < 1) throw SeriesError("series_from: order must be at least 1");
  using Tag = SeriesKind::Tag;
  const bool closed = source == CoefficientSource::ClosedForm;
  const auto k = static_cast<std::uint32_t>(kind.k);
  std::map<long, Poly> c;
  switch (kind.tag) {
    case Tag::W:
      for (int n = 0; 2L * n + 1 <= order; ++n) {
        c[2L * n + 1] = closed ? closed_form(ClosedFormKind::TheoremW, n) : weight_polynomial(WeightKind::W, n);
      }
      break;
    case Tag::A:
    case Tag::B: {
      bool is_a = kind.tag == Tag::A;
      for (int n = 0; 2L * n + 1 <= order; ++n) {
        c[2L * n + 1] =
            closed ? closed_form(is_a ? ClosedFormKind::ShiftedA : ClosedFormKind::ShiftedB, n, kind.k)
                   : shift_symbols(weight_polynomial(is_a ? WeightKind::A : WeightKind::B, n),
                                   is_a ? Family::A : Family::B, k);
      }
      break;
    }
    case Tag::G:
      if (kind.k == 0) return LaurentSeries::constant(Poly(1));
      for (int n = 0; 2L * n + kind.k <= order; ++n) c[2L * n + kind.k] = alpha_k(n, kind.k).value;
      break;
    case Tag::F:
      for (int n = 0; 2L * n + 1 <= order; ++n) c[2L * n + 1] = omega(n).value;
      break;
    case Tag::Custom:
      for (std::size_t n = 0; n < kind.custom.size(); ++n) c[2 * static_cast<long>(n) + 1] = kind.custom[n];
      break;
  }
  return LaurentSeries(std::move(c), order);
}

CheckReport verify_relation(Relation id, long order, const RelationOptions& opt) {
  CheckReport rep(relation_name(id));
  rep.details["order"] = order;
  const auto closed = CoefficientSource::ClosedForm;
  switch (id) {
    case Relation::Decoupling: {
      LaurentSeries w = series_from(SeriesKind::w(), order);
      LaurentSeries s = Poly::a(0) * series_from(SeriesKind::a(1), std::max(1L, order - 2), closed) +
                        Poly::b(0) * series_from(SeriesKind::b(1), std::max(1L, order - 2), closed);
      compare(rep, "W", w, reciprocal_z_minus(s, order), order);
      break;
    }
    case Relation::ChainA:
    case Relation::ChainB: {
      bool is_a = id == Relation::ChainA;
      for (int k = 0; k <= opt.depth; ++k) {
        auto kind = is_a ? SeriesKind::a(k) : SeriesKind::b(k);
        auto next = is_a ? SeriesKind::a(k + 1) : SeriesKind::b(k + 1);
        Poly coef = is_a ? Poly::a(k) : Poly::b(k);
        LaurentSeries lhs = series_from(kind, order);
        LaurentSeries rhs = reciprocal_z_minus(coef * series_from(next, std::max(1L, order - 2), closed), order);
        compare(rep, std::string(is_a ? "A" : "B") + "(" + std::to_string(k) + ")", lhs, rhs, order);
      }
      break;
    }
    case Relation::Harmonic: {
      LaurentSeries w = series_from(SeriesKind::w(), order);
      LaurentSeries a = series_from(SeriesKind::a(0), order, closed);
      LaurentSeries b = series_from(SeriesKind::b(0), order, closed);
      LaurentSeries t = inverse(a) + inverse(b) - LaurentSeries::monomial(-1);
      compare(rep, "W", w, inverse(t), order);
      break;
    }
    case Relation::ContFrac: {
      if (opt.depth < 1) throw SeriesError("contfrac depth must be at least 1");
      for (bool is_a : {true, false}) {
        LaurentSeries lhs = series_from(is_a ? SeriesKind::a(0) : SeriesKind::b(0), order);
        for (int depth = 1; depth <= opt.depth; ++depth) {
          long inner = std::max(1L, order - 2L * (depth + 1));
          LaurentSeries t = series_from(is_a ? SeriesKind::a(depth + 1) : SeriesKind::b(depth + 1), inner, closed);
          for (int j = depth; j >= 0; --j) {
            t = reciprocal_z_minus((is_a ? Poly::a(j) : Poly::b(j)) * t, order);
          }
          compare(rep, std::string(is_a ? "A" : "B") + " depth " + std::to_string(depth), lhs, t, order);
        }
      }
      break;
    }
    case Relation::LemmaRk: {
      LaurentSeries s = Poly::a(0) * series_from(SeriesKind::a(1), std::max(1L, order - 2), closed);
      check_lemma_rk(rep, "a0*A(1)", s, order);
      compare(rep, "R vs A", reciprocal_z_minus(s, order), series_from(SeriesKind::a(0), order), order);
      LaurentSeries rnd = series_from(SeriesKind::odd(random_odd_coefficients(opt.seed, order)), order);
      check_lemma_rk(rep, "random", rnd, order);
      break;
    }
    case Relation::LemmaRK: {
      LaurentSeries s = series_from(SeriesKind::odd(random_odd_coefficients(opt.seed, order)), order);
      LaurentSeries r = reciprocal_z_minus(s, order);
      constexpr int kMaxPower = 4;
      constexpr int kMaxM = 5;
      auto rp = powers(r, kMaxPower);
      auto sp = powers(s, kMaxM);
      for (int k = 1; k <= kMaxPower; ++k) {
        for (int m = 0; m <= kMaxM && 2L * m + k <= order; ++m) {
          Poly sum;
          for (int n = 0; n <= m; ++n) sum += sp[n].coeff(2L * m - n) * Poly(Rational(binom(n + k - 1, k - 1)));
          rep.expect_equal("k=" + std::to_string(k) + " m=" + std::to_string(m), rp[k].coeff(2L * m + k), sum);
        }
      }
      break;
    }
  }
  return rep;
}

Relation parse_relation(const std::string& name) {
  for (Relation r : {Relation::Decoupling, Relation::ChainA, Relation::ChainB, Relation::Harmonic,
                     Relation::ContFrac, Relation::LemmaRk, Relation::LemmaRK}) {
    if (relation_name(r) == name) return r;
  }
  throw SeriesError("unknown relation: " + name);
}

std::string relation_name(Relation id) {
  switch (id) {
    case Relation::Decoupling: return "decoupling";
    case Relation::ChainA: return "chain_A";
    case Relation::ChainB: return "chain_B";
    case Relation::Harmonic: return "harmonic";
    case Relation::ContFrac: return "contfrac";
    case Relation::LemmaRk: return "lemma_rk";
    case Relation::LemmaRK: return "lemma_Rk";
  }
  return "?";
}

}  // namespace rjm
