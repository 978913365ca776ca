// Measures the smallest slack constants under which every acceptance grid
// passes. The printed values are what data/constants.conf and
// default_calibration() were frozen from (rounded up with margin).

#include "runge/bounds.hpp"
#include "runge/grids.hpp"
#include "runge/modular_unit.hpp"
#include "runge/primes.hpp"
#include "runge/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

using namespace runge;

int main() {
    const double neg_inf = -std::numeric_limits<double>::infinity();

    double s_pga = 0.0;
    const auto indices = all_indices_up_to_level(13);
    for (const auto& tau : pga_grid()) {
        for (const auto& a : indices) {
            s_pga = std::max(s_pga, std::abs(pga_residual(a, tau)) / tau.q_abs());
        }
    }
    std::printf("s_pga      needed %.6f  (%zu indices)\n", s_pga, indices.size());

    double c0 = neg_inf;
    for (const auto& z : llogz_grid()) {
        for (std::int64_t n : {10, 100, 10000}) {
            const double excess =
                std::abs(sum_log_one_minus_powers(z, n)) - llogz_envelope(std::abs(z));
            c0 = std::max(c0, excess);
        }
    }
    std::printf("c0         needed %.6f\n", c0);

    double s1 = neg_inf, s2 = neg_inf;
    for (auto p32 : primes_up_to(47)) {
        const long p = p32;
        if (p < 5) continue;
        const auto grid = pu_default_grid(p);
        for (long c : {0L, 1L, 2L}) {
            for (const auto& rep : verify_prop_pu(p, c, grid, 0.0, 0.0)) {
                const double need = (std::abs(rep.residual) - rep.envelope) / rep.slack_normalizer;
                (c == 0 ? s1 : s2) = std::max(c == 0 ? s1 : s2, need);
            }
        }
    }
    std::printf("s1         needed %.6f\n", s1);
    std::printf("s2         needed %.6f\n", s2);

    double pana = neg_inf;
    for (long p : {11L, 17L, 23L}) {
        for (const auto& v : verify_prop_pana(p, pana_default_grid(), kDefaultCRunge, 0.0)) {
            const double need =
                std::min(v.log_abs_j - v.cusp_bound, v.log_abs_j - v.unit_bound);
            pana = std::max(pana, need);
        }
    }
    std::printf("pana_slack needed %.6f\n", pana);

    double cusp = 0.0;
    for (double y : log_spaced(2.0, 50.0, 200)) {
        for (double x : {0.0, 0.125, 0.25, 0.5}) {
            cusp = std::max(cusp, std::abs(j_minus_inverse_q(HalfPlanePoint(x, y))));
        }
    }
    std::printf("sup |j - 1/q| for y >= 2: %.6f\n", cusp);
    return 0;
}
