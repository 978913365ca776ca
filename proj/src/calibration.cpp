#include "runge/calibration.hpp"

#include "runge/errors.hpp"

#include <cmath>

namespace runge {

void Calibration::validate() const {
    for (double v : {s1, s2, c0, s_pga, pana_slack}) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw DomainError("slack constants must be positive and finite");
        }
    }
}

Calibration default_calibration() {
    Calibration c;
    c.s1 = 12.0;
    c.s2 = 1.0;
    c.c0 = 0.1;
    c.s_pga = 1.5;
    c.pana_slack = 1.0;
    return c;
}

}  // namespace runge
