#include "rjm/trees.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rjm/moments.hpp"

namespace rjm {

namespace {

constexpr int kMaxTreeParts = 16;

void check_class(int tree_class) {
  if (tree_class < 1 || tree_class > 4) throw TreeError("tree class must be 1..4");
}

void check_composition(const Composition& c) {
  if (c.empty()) throw TreeError("empty composition has no trees");
  for (int p : c) {
    if (p <= 0) throw TreeError("composition parts must be positive");
  }
  if (static_cast<int>(c.size()) > kMaxTreeParts) {
    throw CapExceeded("tree enumeration", static_cast<long>(c.size()), kMaxTreeParts);
  }
}

char color_char(EdgeColor c) {
  switch (c) {
    case EdgeColor::Blue: return 'b';
    case EdgeColor::Red: return 'r';
    case EdgeColor::None: break;
  }
  return '-';
}

// Bottom-up grouping of consecutive vertices into blocks.
class ShapeBuilder {
 public:
  ShapeBuilder(const Composition& c, const std::function<void(LeveledTree)>& emit) : emit_(emit) {
    levels_.push_back(c);
    grow(std::vector<bool>(c.size(), false), true);
  }

 private:
  void grow(const std::vector<bool>& single, bool bottom) {
    const std::vector<int> top = levels_.back();
    const int m = static_cast<int>(top.size());
    if (m == 1) {
      emit_(assemble());
      return;
    }
    const std::uint32_t full = (1U << (m - 1)) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<int> block_of(m), sums;
      std::vector<int> sizes;
      for (int i = 0; i < m; ++i) {
        if (i == 0 || (mask & (1U << (i - 1)))) {
          sums.push_back(0);
          sizes.push_back(0);
        }
        block_of[i] = static_cast<int>(sums.size()) - 1;
        sums.back() += top[i];
        ++sizes.back();
      }
      // A vertex with one child must sit on a vertex with one child, except at the last level.
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        if (sizes[block_of[i]] == 1 && !bottom && !single[i]) ok = false;
      }
      if (!ok) continue;
      std::vector<bool> next_single(sums.size());
      for (std::size_t b = 0; b < sums.size(); ++b) next_single[b] = sizes[b] == 1;
      parents_.push_back(block_of);
      levels_.push_back(sums);
      grow(next_single, false);
      levels_.pop_back();
      parents_.pop_back();
    }
  }

  LeveledTree assemble() const {
    LeveledTree t;
    const std::size_t h = levels_.size();
    for (std::size_t l = 0; l < h; ++l) {
      t.values.push_back(levels_[h - 1 - l]);
      t.parent.push_back(l == 0 ? std::vector<int>{} : parents_[h - 1 - l]);
      t.color.emplace_back(t.values.back().size() * (l == 0 ? 0 : 1), EdgeColor::None);
    }
    return t;
  }

  const std::function<void(LeveledTree)>& emit_;
  std::vector<std::vector<int>> levels_;
  std::vector<std::vector<int>> parents_;
};

struct Vertex {
  int l;
  int i;
};

// Colors the shape for every admissible choice of splits; first vertex varies slowest.
void colorings(const LeveledTree& shape, int tree_class, const std::function<void(LeveledTree)>& emit) {
  if (tree_class == 1 || shape.single_vertex()) {
    emit(shape);
    return;
  }
  std::vector<Vertex> chooser;
  std::vector<std::pair<int, int>> range;
  for (int l = 0; l < shape.height(); ++l) {
    for (int i = 0; i < static_cast<int>(shape.values[l].size()); ++i) {
      int s = shape.child_count(l, i);
      if (s < 2) continue;
      bool root = l == 0;
      if (tree_class == 2 && !root) continue;
      chooser.push_back({l, i});
      range.push_back((tree_class == 3 || !root) ? std::pair{0, s} : std::pair{1, s - 1});
    }
  }
  std::vector<int> split(chooser.size());
  for (std::size_t v = 0; v < chooser.size(); ++v) split[v] = range[v].first;
  while (true) {
    LeveledTree t = shape;
    std::size_t next = 0;
    for (int l = 0; l < t.height(); ++l) {
      for (int i = 0; i < static_cast<int>(t.values[l].size()); ++i) {
        auto [lo, hi] = t.children(l, i);
        if (next < chooser.size() && chooser[next].l == l && chooser[next].i == i) {
          for (int k = lo; k < hi; ++k) t.color[l + 1][k] = (k - lo < split[next]) ? EdgeColor::Blue : EdgeColor::Red;
          ++next;
        } else {
          for (int k = lo; k < hi; ++k) t.color[l + 1][k] = t.color[l][i];
        }
      }
    }
    emit(std::move(t));
    int v = static_cast<int>(chooser.size()) - 1;
    while (v >= 0 && split[v] == range[v].second) {
      split[v] = range[v].first;
      --v;
    }
    if (v < 0) break;
    ++split[v];
  }
}

// (values of blue children, values of red children) at a multi-branching vertex.
std::pair<Composition, Composition> split_values(const LeveledTree& t, int l, int i) {
  auto [lo, hi] = t.children(l, i);
  Composition left, right;
  for (int k = lo; k < hi; ++k) {
    (t.color[l + 1][k] == EdgeColor::Blue ? left : right).push_back(t.values[l + 1][k]);
  }
  return {left, right};
}

Composition child_values(const LeveledTree& t, int l, int i) {
  auto [lo, hi] = t.children(l, i);
  return Composition(t.values[l + 1].begin() + lo, t.values[l + 1].begin() + hi);
}

Rational kappa1(const LeveledTree& t, int l, int i) {
  if (!t.multi_branching(l, i)) return 1;
  return -Rational(rho1(child_values(t, l, i)));
}

Rational kappa3(const LeveledTree& t, int l, int i) {
  if (t.single_vertex()) return make_rational(1, 2);
  if (t.multi_branching(l, i)) {
    auto [left, right] = split_values(t, l, i);
    return -Rational(rho2(left, right)) / 2;
  }
  if (l > 0 && t.multi_branching(l - 1, t.parent[l][i])) return make_rational(1, 2);
  return 1;
}

Rational kappa(int tree_class, const LeveledTree& t, int l, int i) {
  switch (tree_class) {
    case 1: return kappa1(t, l, i);
    case 2:
      if (t.single_vertex()) return 2;
      if (l == 0) {
        auto [left, right] = split_values(t, 0, 0);
        return Rational(rho2(left, right));
      }
      return kappa1(t, l, i);
    case 3: return kappa3(t, l, i);
    default:
      if (t.single_vertex()) return make_rational(1, 2);
      if (l == 0) {
        auto [left, right] = split_values(t, 0, 0);
        return -Rational(rho2(left, right)) / 2;
      }
      return kappa3(t, l, i);
  }
}

std::mutex phi_mutex;
std::map<std::pair<int, Composition>, Rational> phi_cache;

Poly symbol_product(InversionTarget target, const Composition& c) {
  bool over_alpha = target == InversionTarget::MFromAlpha || target == InversionTarget::OmegaFromAlpha;
  return valued_product(over_alpha ? Family::Alpha : Family::Omega, c);
}

// m_n in terms of alpha (or omega) by solving the closed forms order by order.
Poly solve_m(Family x, int n, std::map<int, Poly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly forward = x == Family::Alpha ? alpha(n).value : omega(n).value;
  auto mn = Monomial::of(sym_m(static_cast<std::uint32_t>(n)));
  Rational lead = forward.coefficient(mn);
  if (lead == 0) throw std::logic_error("closed form is not triangular");
  Poly rest = forward - Poly(mn, lead);
  Poly lower = substitute(rest, [&](SymbolId s) -> std::optional<Poly> {
    if (s.family != Family::M) return std::nullopt;
    if (static_cast<int>(s.index) >= n) throw std::logic_error("closed form is not triangular");
    return solve_m(x, static_cast<int>(s.index), memo);
  });
  Poly result = (Poly::symbol({x, static_cast<std::uint32_t>(n)}) - lower) * (Rational(1) / lead);
  memo.emplace(n, result);
  return result;
}

}  // namespace

std::pair<int, int> LeveledTree::children(int l, int i) const {
  if (l + 1 >= static_cast<int>(values.size())) return {0, 0};
  const auto& row = parent[l + 1];
  auto lo = std::lower_bound(row.begin(), row.end(), i);
  auto hi = std::upper_bound(lo, row.end(), i);
  return {static_cast<int>(lo - row.begin()), static_cast<int>(hi - row.begin())};
}

int LeveledTree::child_count(int l, int i) const {
  auto [lo, hi] = children(l, i);
  return hi - lo;
}

std::string LeveledTree::violation(int tree_class) const {
  check_class(tree_class);
  if (values.empty() || values[0].size() != 1) return "level 0 must hold exactly the root";
  if (parent.size() != values.size() || color.size() != values.size()) return "row count mismatch";
  const int h = height();
  for (int l = 0; l <= h; ++l) {
    if (values[l].empty()) return "empty level " + std::to_string(l);
    for (int v : values[l]) {
      if (v <= 0) return "non-positive value on level " + std::to_string(l);
    }
    if (l == 0) continue;
    if (parent[l].size() != values[l].size() || color[l].size() != values[l].size()) {
      return "row size mismatch on level " + std::to_string(l);
    }
    if (!std::is_sorted(parent[l].begin(), parent[l].end())) return "crossing edges on level " + std::to_string(l);
    if (parent[l].front() < 0 || parent[l].back() >= static_cast<int>(values[l - 1].size())) {
      return "parent out of range on level " + std::to_string(l);
    }
  }
  for (int l = 0; l < h; ++l) {
    bool has_multi = false;
    if (values[l + 1].size() <= values[l].size()) return "level sizes must strictly increase";
    for (int i = 0; i < static_cast<int>(values[l].size()); ++i) {
      int s = child_count(l, i);
      if (s == 0) return "vertex without descendants above the last level";
      has_multi = has_multi || s >= 2;
      Composition kids = child_values(*this, l, i);
      int sum = 0;
      for (int k : kids) sum += k;
      if (sum != values[l][i]) return "children values do not sum to the parent value";
      if (s == 1 && l + 1 < h && child_count(l + 1, children(l, i).first) != 1) {
        return "single child of a single-child vertex branches before the last level";
      }
    }
    if (!has_multi) return "level " + std::to_string(l) + " has no multi-branching vertex";
  }
  for (int l = 1; l <= h; ++l) {
    for (EdgeColor c : color[l]) {
      if ((tree_class == 1) != (c == EdgeColor::None)) return "edge coloring does not match the class";
    }
  }
  if (tree_class == 1 || h == 0) return {};
  for (int l = 0; l < h; ++l) {
    for (int i = 0; i < static_cast<int>(values[l].size()); ++i) {
      auto [lo, hi] = children(l, i);
      bool inherit = (tree_class == 2 && l > 0) || (hi - lo == 1);
      if (inherit) {
        for (int k = lo; k < hi; ++k) {
          if (color[l + 1][k] != color[l][i]) return "edge color not inherited below level " + std::to_string(l);
        }
        continue;
      }
      int j = 0;
      while (lo + j < hi && color[l + 1][lo + j] == EdgeColor::Blue) ++j;
      for (int k = lo + j; k < hi; ++k) {
        if (color[l + 1][k] != EdgeColor::Red) return "children colors are not blue then red";
      }
      bool strict = l == 0 && tree_class != 3;
      if (strict && (j == 0 || j == hi - lo)) return "root needs both a blue and a red edge";
    }
  }
  return {};
}

std::string LeveledTree::to_text() const {
  std::ostringstream out;
  std::function<void(int, int)> walk = [&](int l, int i) {
    out << std::string(2 * static_cast<std::size_t>(l), ' ') << values[l][i];
    if (l > 0 && color[l][i] != EdgeColor::None) out << '[' << color_char(color[l][i]) << ']';
    out << '\n';
    auto [lo, hi] = children(l, i);
    for (int k = lo; k < hi; ++k) walk(l + 1, k);
  };
  walk(0, 0);
  return out.str();
}

Json LeveledTree::to_json() const {
  Json j;
  j["levels"] = values;
  j["parents"] = parent;
  Json colors = Json::array();
  for (const auto& row : color) {
    Json r = Json::array();
    for (EdgeColor c : row) r.push_back(c == EdgeColor::None ? Json(nullptr) : Json(std::string(1, color_char(c))));
    colors.push_back(r);
  }
  j["colors"] = colors;
  return j;
}

std::string LeveledTree::key() const {
  std::string k;
  for (std::size_t l = 0; l < values.size(); ++l) {
    k += '|';
    for (std::size_t i = 0; i < values[l].size(); ++i) {
      k += std::to_string(values[l][i]);
      if (l > 0) {
        k += '^' + std::to_string(parent[l][i]);
        k += color_char(color[l][i]);
      }
      k += ',';
    }
  }
  return k;
}

LeveledTree LeveledTree::from_parents(std::vector<std::vector<int>> values, std::vector<std::vector<int>> parent,
                                      std::vector<std::vector<EdgeColor>> color) {
  LeveledTree t;
  t.values = std::move(values);
  t.parent = std::move(parent);
  if (t.parent.size() + 1 == t.values.size()) t.parent.insert(t.parent.begin(), std::vector<int>{});
  if (color.empty()) {
    for (std::size_t l = 0; l < t.values.size(); ++l) color.emplace_back(l == 0 ? 0 : t.values[l].size(), EdgeColor::None);
  } else if (color.size() + 1 == t.values.size()) {
    color.insert(color.begin(), std::vector<EdgeColor>{});
  }
  t.color = std::move(color);
  return t;
}

std::vector<LeveledTree> enumerate_trees(int tree_class, const Composition& c) {
  check_class(tree_class);
  check_composition(c);
  std::vector<LeveledTree> out;
  std::function<void(LeveledTree)> add = [&](LeveledTree t) { out.push_back(std::move(t)); };
  std::function<void(LeveledTree)> shape = [&](LeveledTree s) { colorings(s, tree_class, add); };
  ShapeBuilder(c, shape);
  return out;
}

Rational tree_weight(int tree_class, const LeveledTree& t) {
  std::string bad = t.violation(tree_class);
  if (!bad.empty()) throw TreeError("tree is not in class T" + std::to_string(tree_class) + ": " + bad);
  Rational w = 1;
  for (int l = 0; l <= t.height(); ++l) {
    for (int i = 0; i < static_cast<int>(t.values[l].size()); ++i) w *= kappa(tree_class, t, l, i);
  }
  return w;
}

Rational phi(int tree_class, const Composition& c) {
  check_class(tree_class);
  auto key = std::make_pair(tree_class, c);
  {
    std::lock_guard lock(phi_mutex);
    auto it = phi_cache.find(key);
    if (it != phi_cache.end()) return it->second;
  }
  Rational sum = 0;
  for (const auto& t : enumerate_trees(tree_class, c)) sum += tree_weight(tree_class, t);
  std::lock_guard lock(phi_mutex);
  phi_cache.emplace(key, sum);
  return sum;
}

InversionTarget parse_target(const std::string& name) {
  for (auto t : {InversionTarget::MFromAlpha, InversionTarget::OmegaFromAlpha, InversionTarget::MFromOmega,
                 InversionTarget::AlphaFromOmega}) {
    if (target_name(t) == name) return t;
  }
  throw std::invalid_argument("unknown inversion target: " + name);
}

std::string target_name(InversionTarget t) {
  switch (t) {
    case InversionTarget::MFromAlpha: return "m_from_alpha";
    case InversionTarget::OmegaFromAlpha: return "omega_from_alpha";
    case InversionTarget::MFromOmega: return "m_from_omega";
    case InversionTarget::AlphaFromOmega: return "alpha_from_omega";
  }
  return {};
}

int target_class(InversionTarget t) { return static_cast<int>(t) + 1; }

Poly reconstruct(InversionTarget target, int n, int threads) {
  if (n < 1) throw std::invalid_argument("reconstruct needs n >= 1");
  const int cls = target_class(target);
  auto comps = compositions(n);
  std::vector<Rational> values(comps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < comps.size(); k = next++) values[k] = phi(cls, comps[k]);
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(comps.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  Poly sum;
  for (std::size_t k = 0; k < comps.size(); ++k) sum += symbol_product(target, comps[k]) * values[k];
  return sum;
}

Poly invert_oracle(InversionTarget target, int n) {
  if (n < 1) throw std::invalid_argument("invert_oracle needs n >= 1");
  std::map<int, Poly> memo;
  auto through = [&](Family x, const Poly& forward) {
    return substitute(forward, [&](SymbolId s) -> std::optional<Poly> {
      if (s.family != Family::M) return std::nullopt;
      return solve_m(x, static_cast<int>(s.index), memo);
    });
  };
  switch (target) {
    case InversionTarget::MFromAlpha: return solve_m(Family::Alpha, n, memo);
    case InversionTarget::MFromOmega: return solve_m(Family::Omega, n, memo);
    case InversionTarget::OmegaFromAlpha: return through(Family::Alpha, omega(n).value);
    case InversionTarget::AlphaFromOmega: return through(Family::Omega, alpha(n).value);
  }
  return {};
}

LeveledTree extend(const LeveledTree& t, int units, EdgeColor chain_color) {
  if (units < 0) throw std::invalid_argument("extension length must be non-negative");
  LeveledTree s = t;
  for (int u = 0; u < units; ++u) {
    const auto& last = s.values.back();
    std::vector<int> par(last.size());
    std::vector<EdgeColor> col(last.size());
    for (std::size_t i = 0; i < last.size(); ++i) {
      par[i] = static_cast<int>(i);
      col[i] = s.height() == 0 ? chain_color : s.color.back()[i];
    }
    s.values.push_back(last);
    s.parent.push_back(std::move(par));
    s.color.push_back(std::move(col));
  }
  return s;
}

TreeCensus census(int tree_class, int n) {
  TreeCensus out;
  out.tree_class = tree_class;
  out.n = n;
  for (const auto& c : compositions(n)) {
    Rational sum = 0;
    for (const auto& t : enumerate_trees(tree_class, c)) {
      Rational w = tree_weight(tree_class, t);
      out.weights.push_back(w);
      sum += w;
      ++out.count;
    }
    out.phi.emplace_back(c, sum);
  }
  return out;
}

CheckReport check_trees(int max_n, int threads) {
  CheckReport rep("trees");
  rep.details["max_n"] = max_n;
  for (int n = 1; n <= max_n; ++n) {
    const std::string at = " n=" + std::to_string(n);
    for (auto target : {InversionTarget::MFromAlpha, InversionTarget::OmegaFromAlpha, InversionTarget::MFromOmega,
                        InversionTarget::AlphaFromOmega}) {
      rep.expect_equal(target_name(target) + at, reconstruct(target, n, threads), invert_oracle(target, n));
    }
    Rational sum1 = 0, sum2 = 0;
    for (const auto& c : compositions(n)) {
      sum1 += phi(1, c);
      sum2 += phi(2, c);
      std::set<std::string> t1_shapes;
      for (const auto& t : enumerate_trees(1, c)) t1_shapes.insert(t.key());
      for (int cls = 1; cls <= 4; ++cls) {
        std::set<std::string> seen;
        for (const auto& t : enumerate_trees(cls, c)) {
          std::string where = "T" + std::to_string(cls) + " " + composition_to_string(c);
          std::string bad = t.violation(cls);
          rep.expect(bad.empty(), where, bad);
          rep.expect(t.last_level() == c, where + " last level");
          rep.expect(seen.insert(t.key()).second, where + " duplicate", t.key());
          if (cls == 4) {
            LeveledTree plain = t;
            for (std::size_t l = 1; l < plain.color.size(); ++l) {
              std::fill(plain.color[l].begin(), plain.color[l].end(), EdgeColor::None);
            }
            rep.expect(t1_shapes.count(plain.key()) == 1, where + " shape not in T1");
          }
        }
      }
    }
    if (n >= 2) rep.expect_equal("sum phi1" + at, sum1, Rational(0));
    rep.expect_equal("sum phi2" + at, sum2, Rational(2 * n));
    Poly round = substitute(alpha(n).value, [&](SymbolId s) -> std::optional<Poly> {
      if (s.family != Family::M) return std::nullopt;
      return reconstruct(InversionTarget::MFromAlpha, static_cast<int>(s.index), threads);
    });
    rep.expect_equal("round trip alpha" + at, round, Poly::alpha(static_cast<std::uint32_t>(n)));
  }
  return rep;
}

}  // namespace rjm
