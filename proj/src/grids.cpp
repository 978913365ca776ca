#include "runge/grids.hpp"

#include <cmath>
#include <set>

namespace runge {

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out;
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * i));
    out.back() = hi;
    return out;
}

std::vector<HalfPlanePoint> pu_default_grid(long p) {
    const double pd = static_cast<double>(p);
    const double y0 = std::log(pd) / kTwoPi;
    const double y_end = 1.3 * std::max(3.0 * std::sqrt(pd), pd);
    std::vector<double> ys;
    for (double y = y0; y <= y_end; y *= 1.3) ys.push_back(y);
    std::vector<HalfPlanePoint> out;
    for (double x : {0.0, 1.0 / 3.0, 0.5}) {
        for (double y : ys) out.emplace_back(x, y);
    }
    return out;
}

std::vector<HalfPlanePoint> pana_default_grid() {
    std::vector<HalfPlanePoint> out;
    for (double x : {-0.5, -0.25, 0.0, 1.0 / 3.0, 0.5, 1.25}) {
        const double x0 = x - std::round(x);
        const double y_low = std::sqrt(1.0 - x0 * x0);
        for (double y = y_low; y <= 60.0; y *= 1.25) out.emplace_back(x, y);
    }
    return out;
}

std::vector<HalfPlanePoint> pga_grid(double q_min, double q_max, int count) {
    std::vector<HalfPlanePoint> out;
    for (double x : {0.0, 0.25, 0.5}) {
        for (double r : log_spaced(q_min, q_max, count)) {
            out.emplace_back(x, -std::log(r) / kTwoPi);
        }
    }
    return out;
}

std::vector<IndexPair> all_indices_up_to_level(long max_level) {
    std::set<IndexPair> seen;
    std::vector<IndexPair> out;
    for (long n = 2; n <= max_level; ++n) {
        for (long k1 = 0; k1 < n; ++k1) {
            for (long k2 = 0; k2 < n; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                IndexPair a = IndexPair::from_numerators(k1, k2, n);
                if (seen.insert(a).second) out.push_back(a);
            }
        }
    }
    return out;
}

std::vector<cplx> llogz_grid(double lo, double hi, int moduli, int phases) {
    std::vector<cplx> out;
    for (double r : log_spaced(lo, hi, moduli)) {
        for (int k = 0; k < phases; ++k) {
            out.push_back(std::polar(r, kTwoPi * k / phases));
        }
    }
    return out;
}

}  // namespace runge
