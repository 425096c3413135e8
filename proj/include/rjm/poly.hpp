#pragma once

// Exact sparse multivariate polynomials over arbitrary-precision rationals.
//
// Symbols come from five indexed families: a_i and b_i (recurrence
// coefficients, b_i standing for a_{-i-1}), m_k (moments of the coefficient
// distribution), alpha_n and omega_n (spectral / empirical moments).
//
// Symbol order: family first (a < b < m < alpha < omega), then index.
// Term order (used for printing and serialization): total degree descending,
// ties broken lexicographically on exponent vectors taken in symbol order,
// larger exponent on the earlier symbol first.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace rjm {

using Rational = mpq_class;
using Integer = mpz_class;
using Json = nlohmann::ordered_json;

/// Canonicalized n/d.
inline Rational make_rational(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical string of a rational: "3", "-1/2".
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

enum class Family : std::uint8_t { A, B, M, Alpha, Omega };

struct SymbolId {
  Family family = Family::A;
  std::uint32_t index = 0;

  auto operator<=>(const SymbolId&) const = default;

  std::string name() const;
  static SymbolId parse(std::string_view text);
};

inline SymbolId sym_a(std::uint32_t i) { return {Family::A, i}; }
inline SymbolId sym_b(std::uint32_t i) { return {Family::B, i}; }
inline SymbolId sym_m(std::uint32_t i) { return {Family::M, i}; }
inline SymbolId sym_alpha(std::uint32_t i) { return {Family::Alpha, i}; }
inline SymbolId sym_omega(std::uint32_t i) { return {Family::Omega, i}; }

class PolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation meant for one symbol algebra sees another.
class MixedAlgebraError : public PolyError {
 public:
  using PolyError::PolyError;
};

class MissingSymbolError : public PolyError {
 public:
  explicit MissingSymbolError(SymbolId s)
      : PolyError("no value assigned to symbol " + s.name()), symbol(s) {}
  SymbolId symbol;
};

/// Product of symbol powers. Factors are kept sorted by symbol, exponents > 0.
class Monomial {
 public:
  using Factor = std::pair<SymbolId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial of(SymbolId s, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(SymbolId s) const;

  Monomial operator*(const Monomial& rhs) const;
  bool operator==(const Monomial& rhs) const { return factors_ == rhs.factors_; }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Strict weak order placing terms in canonical print order.
struct CanonicalOrder {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Rational, CanonicalOrder>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c = 1);

  static Poly symbol(SymbolId s, std::uint32_t exponent = 1);
  static Poly a(std::uint32_t i) { return symbol(sym_a(i)); }
  static Poly b(std::uint32_t i) { return symbol(sym_b(i)); }
  static Poly m(std::uint32_t i) { return symbol(sym_m(i)); }
  static Poly alpha(std::uint32_t i) { return symbol(sym_alpha(i)); }
  static Poly omega(std::uint32_t i) { return symbol(sym_omega(i)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  /// Constant term.
  Rational constant() const { return coefficient(Monomial{}); }
  std::set<SymbolId> symbols() const;
  bool uses_only(std::initializer_list<Family> families) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& c);
  void add_term(const Monomial& m, const Rational& c);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
  friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }
  friend Poly operator*(Poly lhs, long c) { return lhs *= Rational(c); }
  friend Poly operator*(long c, Poly rhs) { return rhs *= Rational(c); }
  Poly operator-() const;

  bool operator==(const Poly& rhs) const { return terms_ == rhs.terms_; }

  /// Canonical text form, e.g. "3*a0^2*a1 + -1*m2"; the zero polynomial is "0".
  std::string to_string() const;
  static Poly parse(std::string_view text);

  Json to_json() const;
  static Poly from_json(const Json& j);

 private:
  Terms terms_;
};

enum class PolyOp { Add, Mul, Scale };

/// Exact ring arithmetic dispatcher: add and mul use `rhs`, scale uses `factor`.
Poly poly_arith(PolyOp op, const Poly& lhs, const Poly& rhs);
Poly poly_arith(PolyOp op, const Poly& lhs, const Rational& factor);

Poly pow(const Poly& p, std::uint32_t e);

/// Replaces every monomial prod a_i^{p_i} prod b_j^{q_j} by prod m_{p_i} prod m_{q_j}.
/// Valid for i.i.d. a_i, b_j. Throws MixedAlgebraError on m/alpha/omega input.
Poly expectation_substitute(const Poly& p);

/// Replaces each symbol for which `value` returns a Poly; other symbols stay.
Poly substitute(const Poly& p, const std::function<std::optional<Poly>(SymbolId)>& value);

/// Applies a symbol-to-symbol map to every factor.
Poly rename(const Poly& p, const std::function<SymbolId(SymbolId)>& map);

using ExactAssignment = std::function<std::optional<Rational>(SymbolId)>;
using FloatAssignment = std::function<std::optional<double>(SymbolId)>;

/// Exact evaluation. Throws MissingSymbolError naming the first unassigned symbol.
Rational evaluate_exact(const Poly& p, const ExactAssignment& value);

/// Floating evaluation; terms are summed left to right in canonical term order.
double evaluate_float(const Poly& p, const FloatAssignment& value);

/// Distinct values of sum(index * exponent) over the monomials of `p`, i.e. the
/// weighted degrees when each symbol weighs its own index.
std::set<std::uint32_t> index_weights(const Poly& p);

}  // namespace rjm
