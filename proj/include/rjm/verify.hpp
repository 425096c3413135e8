#pragma once

// The composed verification suite behind `verify-all`. Every check compares two
// independent computations; none of them depends on timing or thread count.

#include <cstdint>

#include "rjm/report.hpp"

namespace rjm {

/// Dyck and generalized path counts against Catalan and central binomial numbers.
CheckReport check_path_counts(int max_n);

/// Enumeration against every closed form, including the returns decomposition.
CheckReport check_closed_forms(int max_n);

/// All series relations at one truncation order.
CheckReport check_series(long order, int depth, std::uint64_t seed);

/// Recurrences, the expectation bridge and the all-ones specialization.
CheckReport check_moments(int max_n, int ones_n);

/// Entry (1,1) against alpha at the moments of three laws, odd powers, interior rows.
CheckReport check_finite_spectra(int max_m);

/// Normalized trace deficits for constant(1) with n up to max_n.
CheckReport check_asymptotics(int max_n, int max_m);

/// Monte Carlo bands and spectral consistency on seeded samples.
CheckReport check_monte_carlo(std::uint64_t samples, std::uint64_t seed, int threads);

struct VerifyOptions {
  int order = 5;
  int threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
};

/// Runs every check with bounds derived from `order`. Sub-reports are listed in
/// details["checks"] in a fixed order.
CheckReport verify_all(const VerifyOptions& opt);

}  // namespace rjm
