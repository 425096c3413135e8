#pragma once

// Random Jacobi matrices: exact expectations by path enumeration, Monte Carlo
// estimates, and the spectral-measure consistency checks.

#include <cstdint>
#include <string>
#include <vector>

#include "rjm/poly.hpp"
#include "rjm/report.hpp"

namespace rjm {

inline constexpr int kExponentialMomentCap = 20;

class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Counter-based generator: the stream for (seed, index) never depends on other streams.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  SplitMix64(std::uint64_t seed, std::uint64_t index);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  /// Uniform on the open interval (0, 1).
  double uniform();

 private:
  std::uint64_t state_;
};

struct Distribution {
  enum class Kind { Constant, Uniform, Exponential, TwoPoint };
  Kind kind = Kind::Constant;
  /// constant: {c}; uniform: {theta}; exponential: {lambda}; two_point: {p, x1, x2}.
  std::vector<Rational> params{Rational(1)};

  static Distribution constant(Rational c);
  static Distribution uniform(Rational theta);
  static Distribution exponential(Rational rate);
  static Distribution two_point(Rational p, Rational x1, Rational x2);
  /// "constant:c", "uniform:theta" or "uniform:0,theta", "exponential:rate",
  /// "two_point:p,x1,x2". Parameters are integers, fractions or decimals.
  static Distribution parse(const std::string& text);

  /// m_k as an exact rational.
  Rational moment(int k) const;
  double sample(SplitMix64& rng) const;
  std::string to_string() const;
};

/// Evaluates a polynomial in m_k at the distribution's moments.
Rational evaluate_moments(const Poly& p, const Distribution& d);

enum class ExpectedKind { Trace, Entry11 };

/// E Tr(H_n^k) or E H_n^k(1,1), exactly, by enumerating confined paths.
Rational exact_expected(ExpectedKind kind, int n, int k, const Distribution& d);

/// Expected weight sum of P(n, k, i) for each start row i = 1..n.
std::vector<Rational> expected_rows(int n, int k, const Distribution& d);

CheckReport interior_row_check(int n, int m, const Distribution& d);

CheckReport asymptotic_check(int m, const Distribution& d, std::vector<int> n_list);

/// Off-diagonal entries a_1..a_{n-1}.
struct JacobiSample {
  int n = 1;
  std::vector<double> offdiag;

  static JacobiSample draw(int n, const Distribution& d, std::uint64_t seed, std::uint64_t index);
  /// H^k e_start by repeated products; H has 1 above and a_i below the diagonal.
  std::vector<double> power_apply(int k, int start) const;
  double trace_power(int k) const;
  double entry11(int k) const;
};

struct Spectrum {
  std::vector<double> eigenvalues;
  /// Squared first components of the normalized eigenvectors.
  std::vector<double> weights;
  double min_gap = 0;
};

/// Eigen-decomposition of J_n (sqrt(a_i) off the diagonal).
Spectrum spectrum(const JacobiSample& s);

enum class McKind { Trace, Entry11, SpectralMoments, EmpiricalMoments };

struct McResult {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

/// Trace is Tr(H^k)/n; entry11 is H^k(1,1); spectral moments integrate x^k
/// against tau_n; empirical moments against sigma_n.
McResult mc_estimate(McKind kind, int n, int k, const Distribution& d, std::uint64_t samples,
                     std::uint64_t seed, int threads = 1);

inline constexpr double kTauTolerance = 1e-9;

/// Spectral-side and matrix-power-side moments of one sample.
CheckReport tau_consistency(const JacobiSample& s, int k, double rel_tol = kTauTolerance);

McKind parse_mc_kind(const std::string& name);
std::string mc_kind_name(McKind k);

}  // namespace rjm
