#pragma once

// alpha_n, omega_n and alpha_n^(k) as polynomials in m_1, m_2, ...

#include <string>
#include <vector>

#include "rjm/poly.hpp"
#include "rjm/report.hpp"

namespace rjm {

enum class MomentSequence { Alpha, Omega, AlphaK };

struct MomentExpr {
  Poly value;
  MomentSequence sequence = MomentSequence::Alpha;
  int n = 0;
  int k = 1;

  /// "alpha_3", "omega_4", "alpha_3^(2)".
  std::string label() const;
};

/// Sum over C(n) of rho1(c) m(c).
MomentExpr alpha(int n);
/// Sum over the pairs of C-hat(n) of rho2(p, q) m(p) m(q).
MomentExpr omega(int n);
/// Sum over C(n) of binom(c_1 + k - 1, k - 1) rho1(c) m(c); alpha_0^(k) = 1.
MomentExpr alpha_k(int n, int k);

/// The three coefficient recurrences for n, k <= max_n and the three series
/// identities in g_k and f at truncation 2*max_n + 1.
CheckReport check_recurrences(int max_n);

/// alpha(n) and omega(n) against the expectations of A_n and W_n.
CheckReport expectation_bridge(int n);

MomentSequence parse_sequence(const std::string& name);
std::string sequence_name(MomentSequence s);

/// Rows (n, expression) for n = 0..max_n.
std::vector<MomentExpr> moment_table(MomentSequence seq, int max_n, int k = 1);

}  // namespace rjm
