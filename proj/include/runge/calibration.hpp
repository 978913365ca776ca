#pragma once

// Frozen slack constants for the grid verifiers. The asymptotic statements
// being checked hold with unstated effective constants; these values were
// measured once by tools/calibrate over the acceptance grids and then fixed.
// data/constants.conf carries the same values with their provenance.

namespace runge {

struct Calibration {
    double s1 = 0.0;          // U_c envelope, p | c, multiplies p log p
    double s2 = 0.0;          // U_c envelope, p !| c, multiplies p
    double c0 = 0.0;          // additive constant over (pi^2/6)/log|1/z|
    double s_pga = 0.0;       // |pga residual| <= s_pga |q|
    double pana_slack = 0.0;  // added to both branches of the dichotomy

    /// Throws DomainError unless every constant is positive and finite.
    void validate() const;
};

/// The frozen values.
Calibration default_calibration();

}  // namespace runge
