#pragma once

// Truncated formal Laurent series in z^{-1} with polynomial coefficients.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rjm/poly.hpp"
#include "rjm/report.hpp"

namespace rjm {

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient was requested beyond what the inputs determine.
class OrderExceeded : public SeriesError {
 public:
  OrderExceeded(long requested, long bound);
  long requested;
  long bound;
};

/// The input to reciprocal_z_minus has a nonzero coefficient at a non-odd exponent.
class ParityError : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

/// Sum of c_n z^{-n}. Coefficients with n > order() are unknown.
class LaurentSeries {
 public:
  /// Order carried by series that are known exactly (finitely many terms).
  static constexpr long kExact = 1L << 40;

  LaurentSeries() = default;
  explicit LaurentSeries(long order) : order_(order) {}
  LaurentSeries(std::map<long, Poly> coeffs, long order);

  static LaurentSeries constant(const Poly& c);
  /// The exact series z^{-n}; z itself is monomial(-1).
  static LaurentSeries monomial(long n, const Poly& c = Poly(1));

  long order() const { return order_; }
  bool exact() const { return order_ >= kExact; }
  const std::map<long, Poly>& coeffs() const { return coeffs_; }

  /// Coefficient of z^{-n}; throws OrderExceeded for n > order().
  Poly coeff(long n) const;
  /// Smallest exponent with a nonzero coefficient, if any is known.
  std::optional<long> leading_exponent() const;

  LaurentSeries truncated(long order) const;
  /// Multiplies by z^{-s}.
  LaurentSeries shifted(long s) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const Poly& c);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(LaurentSeries a, const Poly& c) { return a *= c; }
  friend LaurentSeries operator*(const Poly& c, LaurentSeries a) { return a *= c; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

  /// {"order": N or "exact", "coeffs": [[n, poly], ...]}
  Json to_json() const;

 private:
  void set(long n, Poly c);

  std::map<long, Poly> coeffs_;
  long order_ = kExact;
};

/// 1/T for T whose leading coefficient is a nonzero rational.
LaurentSeries inverse(const LaurentSeries& t);

/// R = 1/(z - S) for S = sum s_n z^{-(2n+1)}, via r_0 = 1, r_n = sum_k s_k r_{n-k-1}.
/// An exact S needs `max_order`; otherwise the result has order min(N_S + 2, max_order).
LaurentSeries reciprocal_z_minus(const LaurentSeries& s, long max_order = -1);

/// [S^k]_idx by repeated truncated multiplication.
Poly power_coefficient(const LaurentSeries& s, int k, long idx);

enum class CoefficientSource { Enumeration, ClosedForm };

struct SeriesKind {
  enum class Tag { W, A, B, G, F, Custom };
  Tag tag = Tag::W;
  int k = 0;
  /// Custom: c_n is the coefficient of z^{-(2n+1)}.
  std::vector<Poly> custom;

  static SeriesKind w() { return {Tag::W, 0, {}}; }
  static SeriesKind a(int k) { return {Tag::A, k, {}}; }
  static SeriesKind b(int k) { return {Tag::B, k, {}}; }
  static SeriesKind g(int k) { return {Tag::G, k, {}}; }
  static SeriesKind f() { return {Tag::F, 0, {}}; }
  static SeriesKind odd(std::vector<Poly> c) { return {Tag::Custom, 0, std::move(c)}; }
};

LaurentSeries series_from(const SeriesKind& kind, long order,
                          CoefficientSource source = CoefficientSource::Enumeration);

enum class Relation { Decoupling, ChainA, ChainB, Harmonic, ContFrac, LemmaRk, LemmaRK };

struct RelationOptions {
  /// Maximum shift for chains, depth for continued fractions.
  int depth = 3;
  std::uint64_t seed = 1;
};

CheckReport verify_relation(Relation id, long order, const RelationOptions& opt = {});

/// Parses "decoupling", "chain_A", "chain_B", "harmonic", "contfrac", "lemma_rk", "lemma_Rk".
Relation parse_relation(const std::string& name);
std::string relation_name(Relation id);

}  // namespace rjm
