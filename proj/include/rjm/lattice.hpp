#pragma once

// Lattice paths, weight polynomials, compositions and the closed-form
// expressions for W_n, A_n, B_n.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rjm/poly.hpp"

namespace rjm {

inline constexpr int kDefaultEnumerationCap = 14;
inline constexpr int kClosedFormCap = 24;

/// Thrown when a size exceeds a configured cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what_for, long requested, long cap)
      : std::runtime_error(what_for + ": size " + std::to_string(requested) + " exceeds cap " +
                           std::to_string(cap)),
        requested(requested),
        cap(cap) {}
  long requested;
  long cap;
};

/// A path of +1/-1 steps starting at `start_height`.
struct LatticePath {
  int start_height = 0;
  std::vector<std::int8_t> steps;

  std::size_t length() const { return steps.size(); }
  std::vector<int> heights() const;
  int end_height() const;
  int min_height() const;
  int max_height() const;
  /// Number of times t > 0 at which the height equals the start height.
  int returns() const;

  /// Reflection in the horizontal axis (every step negated).
  LatticePath reflected() const;
  /// Reflection in the vertical midline (order reversed, steps negated).
  LatticePath mirrored() const;

  /// "UUDD" form; the start height is not encoded.
  std::string to_string() const;
  static LatticePath parse(std::string_view text, int start_height = 0);

  bool operator==(const LatticePath&) const = default;
};

enum class PathKind { Dyck, Generalized, DyckReturns };

/// Visits the paths of size n in lexicographic order with U before D.
/// For DyckReturns only Dyck paths with exactly `returns` returns are visited.
void for_each_path(PathKind kind, int n, int returns, int cap,
                   const std::function<void(const LatticePath&)>& visit);

std::vector<LatticePath> enumerate_paths(PathKind kind, int n, int returns = 0,
                                         int cap = kDefaultEnumerationCap);

std::uint64_t count_paths(PathKind kind, int n, int returns = 0, int cap = kDefaultEnumerationCap);

/// Paths of length k from height i back to height i staying inside [1, n].
void for_each_confined_path(int n, int k, int i, const std::function<void(const LatticePath&)>& visit);

/// Product of down-step weights: a_h for a step ending at h >= 0, b_{-h-1} for h < 0.
Poly path_weight(const LatticePath& path);

enum class WeightKind { W, A, B };

/// Sum of path weights over generalized Dyck paths (W), Dyck paths (A) or
/// reflected Dyck paths (B) of length 2n.
Poly weight_polynomial(WeightKind kind, int n, int cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Compositions

/// Ordered tuple of positive parts; the empty tuple is the composition of 0.
using Composition = std::vector<int>;
using CompositionPair = std::pair<Composition, Composition>;

/// C(n), ordered by number of parts, then reverse lexicographically:
/// (4), (3,1), (2,2), (1,3), (2,1,1), ...
std::vector<Composition> compositions(int n);

/// The union over j of C(j) x C(n-j), with j ascending.
std::vector<CompositionPair> comp_pairs(int n);

std::string composition_to_string(const Composition& c);

/// Binomial coefficient with binom(n, -1) = [n == -1], binom(n, k) = 0 for k < -1,
/// and the generalized formula for negative n.
Integer binom(long n, long k);

Integer rho1(const Composition& c);
Integer rho2(const Composition& p, const Composition& q);

/// prod_j sym(family, j + offset)^{c_j}; a(c) and b(c) for offset 0.
Poly indexed_product(Family family, const Composition& c, std::uint32_t offset = 0);
/// prod_j sym(family, c_j); m(c), alpha(c), omega(c).
Poly valued_product(Family family, const Composition& c);

enum class ClosedFormKind {
  FlajoletA,
  FlajoletB,
  TheoremW,
  TouchardA,
  NestedW,
  ShiftedA,
  ShiftedB,
  ReturnsA,
};

/// `k` is the shift for ShiftedA/ShiftedB and the number of returns for ReturnsA.
Poly closed_form(ClosedFormKind kind, int n, int k = 0, int cap = kClosedFormCap);

}  // namespace rjm
