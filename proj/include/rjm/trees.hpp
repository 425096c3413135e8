#pragma once

// Rooted leveled planar trees of classes T1..T4, their weights, and the
// inversion formulas between m, alpha and omega.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rjm/lattice.hpp"
#include "rjm/poly.hpp"
#include "rjm/report.hpp"

namespace rjm {

enum class EdgeColor : std::uint8_t { None, Blue, Red };

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vertex (l, i) is the i-th vertex from the left on level l. The parent of
/// (l, i) is (l - 1, parent[l][i]); color[l][i] is the color of that edge.
/// Level 0 has empty parent and color rows.
struct LeveledTree {
  std::vector<std::vector<int>> values;
  std::vector<std::vector<int>> parent;
  std::vector<std::vector<EdgeColor>> color;

  int height() const { return static_cast<int>(values.size()) - 1; }
  bool single_vertex() const { return values.size() == 1; }
  Composition last_level() const { return values.back(); }

  /// Half-open index range of the children of (l, i) on level l + 1.
  std::pair<int, int> children(int l, int i) const;
  int child_count(int l, int i) const;
  bool multi_branching(int l, int i) const { return child_count(l, i) >= 2; }

  /// Checks T1..T4 (admissibility) and, for class >= 2, the coloring rules.
  /// Returns an empty string when valid, otherwise the first violation.
  std::string violation(int tree_class) const;

  /// Indented `value[b|r]` dump, one vertex per line, preorder.
  std::string to_text() const;
  Json to_json() const;
  /// Levels, parents and colors in one line; equal iff the trees are equal.
  std::string key() const;

  /// Builds a tree from per-level values and parent indices; colors default to None.
  static LeveledTree from_parents(std::vector<std::vector<int>> values, std::vector<std::vector<int>> parent,
                                  std::vector<std::vector<EdgeColor>> color = {});

  bool operator==(const LeveledTree&) const = default;
};

/// All trees of the class associated with c, in a fixed order: shapes by
/// block-boundary bitmask from the last level up, then split vectors in
/// lexicographic order from the root down.
std::vector<LeveledTree> enumerate_trees(int tree_class, const Composition& c);

Rational tree_weight(int tree_class, const LeveledTree& t);

/// Sum of tree weights over the class; cached per (class, composition).
Rational phi(int tree_class, const Composition& c);

enum class InversionTarget { MFromAlpha, OmegaFromAlpha, MFromOmega, AlphaFromOmega };

InversionTarget parse_target(const std::string& name);
std::string target_name(InversionTarget t);
int target_class(InversionTarget t);

/// Sum over C(n) of phi(class, c) times alpha(c) or omega(c).
Poly reconstruct(InversionTarget target, int n, int threads = 1);

/// The same polynomial by triangular elimination of the closed forms, without trees.
Poly invert_oracle(InversionTarget target, int n);

/// Appends to every last-level vertex a chain of `units` vertices of equal value.
/// Chain edges copy the color of the edge above; a single-vertex tree uses `chain_color`.
LeveledTree extend(const LeveledTree& t, int units, EdgeColor chain_color = EdgeColor::None);

struct TreeCensus {
  int tree_class = 0;
  int n = 0;
  std::size_t count = 0;
  /// Weight of each tree, in enumeration order over C(n).
  std::vector<Rational> weights;
  std::vector<std::pair<Composition, Rational>> phi;
};

TreeCensus census(int tree_class, int n);

/// Tree-side checks for n <= max_n: reconstruct against the oracle for all
/// targets, class invariants, and the sum identities for phi1 and phi2.
CheckReport check_trees(int max_n, int threads = 1);

}  // namespace rjm
