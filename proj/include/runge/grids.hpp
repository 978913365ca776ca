#pragma once

// Evaluation grids shared by the verifiers, the calibration run, the CLI and
// the acceptance suite. All grids are deterministic and ordered.

#include "runge/qnum.hpp"
#include "runge/siegel.hpp"

#include <vector>

namespace runge {

/// Near-cusp ladder for the U_c envelopes: Y_k = Y_0 * 1.3^k starting at the
/// boundary |q| = 1/p (Y_0 = log p / (2 pi)) and running past max(3 sqrt(p), p),
/// at x in {0, 1/3, 1/2}.
std::vector<HalfPlanePoint> pu_default_grid(long p);

/// Points of D + Z: x in {-1/2, -1/4, 0, 1/3, 1/2, 5/4}, y from the lower
/// boundary arc up to 60 on a 1.25 ladder.
std::vector<HalfPlanePoint> pana_default_grid();

/// `count` log-spaced |q| values in [q_min, q_max], as points on the
/// imaginary axis and at x in {1/4, 1/2}.
std::vector<HalfPlanePoint> pga_grid(double q_min = 1e-6, double q_max = 0.1, int count = 50);

/// Every nonzero a in (N^-1 Z / Z)^2 for 2 <= N <= max_level, each once.
std::vector<IndexPair> all_indices_up_to_level(long max_level);

/// `count` log-spaced moduli in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

/// z = r e^{2 pi i k / phases}, r over `moduli` log-spaced values in [lo, hi].
std::vector<cplx> llogz_grid(double lo = 0.01, double hi = 0.99, int moduli = 50,
                             int phases = 16);

}  // namespace runge
