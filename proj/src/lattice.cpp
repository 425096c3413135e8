#include "rjm/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace rjm {

namespace {

void check_cap(const char* what, int n, int cap) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": negative size");
  if (n > cap) throw CapExceeded(what, n, cap);
}

SymbolId down_symbol(int end_height) {
  return end_height >= 0 ? sym_a(static_cast<std::uint32_t>(end_height))
                         : sym_b(static_cast<std::uint32_t>(-end_height - 1));
}

Poly signed_symbol(int i) { return Poly::symbol(down_symbol(i)); }

}  // namespace

// ---------------------------------------------------------------------------
// LatticePath

std::vector<int> LatticePath::heights() const {
  std::vector<int> h;
  h.reserve(steps.size() + 1);
  h.push_back(start_height);
  for (auto s : steps) h.push_back(h.back() + s);
  return h;
}

int LatticePath::end_height() const {
  int h = start_height;
  for (auto s : steps) h += s;
  return h;
}

int LatticePath::min_height() const {
  auto h = heights();
  return *std::min_element(h.begin(), h.end());
}

int LatticePath::max_height() const {
  auto h = heights();
  return *std::max_element(h.begin(), h.end());
}

int LatticePath::returns() const {
  int h = start_height;
  int count = 0;
  for (auto s : steps) {
    h += s;
    if (h == start_height) ++count;
  }
  return count;
}

LatticePath LatticePath::reflected() const {
  LatticePath out{-start_height, steps};
  for (auto& s : out.steps) s = static_cast<std::int8_t>(-s);
  return out;
}

LatticePath LatticePath::mirrored() const {
  LatticePath out{end_height(), {steps.rbegin(), steps.rend()}};
  for (auto& s : out.steps) s = static_cast<std::int8_t>(-s);
  return out;
}

std::string LatticePath::to_string() const {
  std::string out;
  out.reserve(steps.size());
  for (auto s : steps) out += s > 0 ? 'U' : 'D';
  return out;
}

LatticePath LatticePath::parse(std::string_view text, int start_height) {
  LatticePath p{start_height, {}};
  p.steps.reserve(text.size());
  for (char c : text) {
    if (c == 'U' || c == 'u') {
      p.steps.push_back(1);
    } else if (c == 'D' || c == 'd') {
      p.steps.push_back(-1);
    } else {
      throw std::invalid_argument("path strings use only U and D, got '" + std::string(text) + "'");
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_path(PathKind kind, int n, int returns, int cap,
                   const std::function<void(const LatticePath&)>& visit) {
  check_cap("path enumeration", n, cap);
  if (kind == PathKind::DyckReturns && (returns < 0 || returns > n)) {
    throw std::invalid_argument("number of returns must lie in [0, n]");
  }
  const bool dyck = kind != PathKind::Generalized;
  LatticePath path{0, std::vector<std::int8_t>(static_cast<std::size_t>(2 * n))};
  // Depth-first with U tried before D gives lexicographic order.
  std::function<void(int, int, int, int)> rec = [&](int t, int h, int ups, int rets) {
    if (t == 2 * n) {
      if (kind != PathKind::DyckReturns || rets == returns) visit(path);
      return;
    }
    int downs = t - ups;
    if (ups < n) {
      path.steps[t] = 1;
      rec(t + 1, h + 1, ups + 1, rets);
    }
    if (downs < n && (!dyck || h > 0)) {
      int next_rets = rets + (h - 1 == 0 ? 1 : 0);
      if (kind == PathKind::DyckReturns && next_rets > returns) return;
      path.steps[t] = -1;
      rec(t + 1, h - 1, ups, next_rets);
    }
  };
  if (kind == PathKind::DyckReturns && n == 0 && returns != 0) return;
  rec(0, 0, 0, 0);
}

std::vector<LatticePath> enumerate_paths(PathKind kind, int n, int returns, int cap) {
  std::vector<LatticePath> out;
  for_each_path(kind, n, returns, cap, [&](const LatticePath& p) { out.push_back(p); });
  return out;
}

std::uint64_t count_paths(PathKind kind, int n, int returns, int cap) {
  std::uint64_t count = 0;
  for_each_path(kind, n, returns, cap, [&](const LatticePath&) { ++count; });
  return count;
}

void for_each_confined_path(int n, int k, int i,
                            const std::function<void(const LatticePath&)>& visit) {
  if (n < 1 || k < 0 || i < 1 || i > n) {
    throw std::invalid_argument("confined paths need n >= 1, k >= 0 and 1 <= i <= n");
  }
  LatticePath path{i, std::vector<std::int8_t>(static_cast<std::size_t>(k))};
  std::function<void(int, int)> rec = [&](int t, int h) {
    if (std::abs(h - i) > k - t) return;
    if (t == k) {
      visit(path);
      return;
    }
    if (h + 1 <= n) {
      path.steps[t] = 1;
      rec(t + 1, h + 1);
    }
    if (h - 1 >= 1) {
      path.steps[t] = -1;
      rec(t + 1, h - 1);
    }
  };
  rec(0, i);
}

Poly path_weight(const LatticePath& path) {
  std::vector<Monomial::Factor> factors;
  int h = path.start_height;
  for (auto s : path.steps) {
    h += s;
    if (s < 0) factors.emplace_back(down_symbol(h), 1);
  }
  return Poly(Monomial(std::move(factors)));
}

Poly weight_polynomial(WeightKind kind, int n, int cap) {
  Poly total;
  PathKind pk = kind == WeightKind::W ? PathKind::Generalized : PathKind::Dyck;
  for_each_path(pk, n, 0, cap, [&](const LatticePath& p) {
    Poly w = kind == WeightKind::B ? path_weight(p.reflected()) : path_weight(p);
    total.add_term(w.terms().begin()->first, 1);
  });
  return total;
}

// ---------------------------------------------------------------------------
// Compositions

std::vector<Composition> compositions(int n) {
  if (n < 0) throw std::invalid_argument("compositions of a negative integer");
  if (n == 0) return {Composition{}};
  if (n > 30) throw CapExceeded("compositions", n, 30);
  std::vector<Composition> out;
  out.reserve(std::size_t{1} << (n - 1));
  // Bit j set means a cut after position j + 1.
  for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
    Composition c;
    int run = 1;
    for (int j = 0; j < n - 1; ++j) {
      if (mask & (1U << j)) {
        c.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    c.push_back(run);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Composition& x, const Composition& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x > y;
  });
  return out;
}

std::vector<CompositionPair> comp_pairs(int n) {
  std::vector<CompositionPair> out;
  for (int j = 0; j <= n; ++j) {
    auto left = compositions(j);
    auto right = compositions(n - j);
    for (const auto& p : left) {
      for (const auto& q : right) out.emplace_back(p, q);
    }
  }
  return out;
}

std::string composition_to_string(const Composition& c) {
  if (c.empty()) return "e";
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + ")";
}

Integer binom(long n, long k) {
  if (k == -1) return n == -1 ? 1 : 0;
  if (k < 0) return 0;
  Integer out;
  Integer top = n;
  mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

Integer rho1(const Composition& c) {
  Integer out = 1;
  for (std::size_t j = 0; j + 1 < c.size(); ++j) out *= binom(c[j] + c[j + 1] - 1, c[j] - 1);
  return out;
}

Integer rho2(const Composition& p, const Composition& q) {
  if (q.empty()) return rho1(p);
  if (p.empty()) return rho1(q);
  return binom(p[0] + q[0], p[0]) * rho1(p) * rho1(q);
}

Poly indexed_product(Family family, const Composition& c, std::uint32_t offset) {
  std::vector<Monomial::Factor> f;
  for (std::size_t j = 0; j < c.size(); ++j) {
    f.emplace_back(SymbolId{family, static_cast<std::uint32_t>(j) + offset},
                   static_cast<std::uint32_t>(c[j]));
  }
  return Poly(Monomial(std::move(f)));
}

Poly valued_product(Family family, const Composition& c) {
  std::vector<Monomial::Factor> f;
  for (int part : c) f.emplace_back(SymbolId{family, static_cast<std::uint32_t>(part)}, 1);
  return Poly(Monomial(std::move(f)));
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

Poly flajolet(Family family, int n, std::uint32_t offset) {
  Poly out;
  for (const auto& c : compositions(n)) {
    out += Poly(indexed_product(family, c, offset).terms().begin()->first, Rational(rho1(c)));
  }
  return out;
}

Poly theorem_w(int n) {
  Poly out;
  for (const auto& [p, q] : comp_pairs(n)) {
    Monomial mono = indexed_product(Family::A, p).terms().begin()->first *
                    indexed_product(Family::B, q).terms().begin()->first;
    out.add_term(mono, Rational(rho2(p, q)));
  }
  return out;
}

// Sum over i_2..i_n with i_{j+1} in [0, i_j + 1], first index fixed at 0.
Poly touchard(int n) {
  if (n == 0) return Poly(1);
  std::map<std::pair<int, int>, Poly> memo;
  std::function<const Poly&(int, int)> tail = [&](int remaining, int last) -> const Poly& {
    auto key = std::make_pair(remaining, last);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Poly acc(1);
    if (remaining > 0) {
      acc = Poly();
      for (int i = 0; i <= last + 1; ++i) acc += Poly::a(i) * tail(remaining - 1, i);
    }
    return memo.emplace(key, std::move(acc)).first->second;
  };
  return Poly::a(0) * tail(n - 1, 0);
}

// Sum over i_1 in [-1, n-1], i_{j+1} in [i_j - 1, n - j - 1]; negative indices are b's.
Poly nested_w(int n) {
  if (n == 0) return Poly(1);
  std::map<std::pair<int, int>, Poly> memo;
  std::function<const Poly&(int, int)> tail = [&](int j, int last) -> const Poly& {
    auto key = std::make_pair(j, last);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Poly acc(1);
    if (j < n) {
      acc = Poly();
      for (int i = last - 1; i <= n - j - 1; ++i) acc += signed_symbol(i) * tail(j + 1, i);
    }
    return memo.emplace(key, std::move(acc)).first->second;
  };
  Poly out;
  for (int i = -1; i <= n - 1; ++i) out += signed_symbol(i) * tail(1, i);
  return out;
}

Poly returns_a(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("returns must lie in [0, n]");
  Poly head = pow(Poly::a(0), static_cast<std::uint32_t>(k));
  if (n == k) return head;
  Poly sum;
  for (const auto& c : compositions(n - k)) {
    Integer coeff = binom(k + c[0] - 1, k - 1) * rho1(c);
    if (coeff == 0) continue;
    sum.add_term(indexed_product(Family::A, c, 1).terms().begin()->first, Rational(coeff));
  }
  return head * sum;
}

}  // namespace

Poly closed_form(ClosedFormKind kind, int n, int k, int cap) {
  check_cap("closed form", n, cap);
  if (k < 0) throw std::invalid_argument("closed form parameter k must be non-negative");
  switch (kind) {
    case ClosedFormKind::FlajoletA: return flajolet(Family::A, n, 0);
    case ClosedFormKind::FlajoletB: return flajolet(Family::B, n, 0);
    case ClosedFormKind::TheoremW: return theorem_w(n);
    case ClosedFormKind::TouchardA: return touchard(n);
    case ClosedFormKind::NestedW: return nested_w(n);
    case ClosedFormKind::ShiftedA: return flajolet(Family::A, n, static_cast<std::uint32_t>(k));
    case ClosedFormKind::ShiftedB: return flajolet(Family::B, n, static_cast<std::uint32_t>(k));
    case ClosedFormKind::ReturnsA: return returns_a(n, k);
  }
  return {};
}

}  // namespace rjm
