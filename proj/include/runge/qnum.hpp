#pragma once

// Evaluation of q-expansion objects on the upper half-plane.
//
// Every truncated series in this module carries an explicit geometric tail
// majorant. A result is only returned once the majorant is at or below the
// requested TruncationBudget::target_abs_error; otherwise BudgetExhausted is
// thrown.

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <utility>

namespace runge {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// tau = x + iy with y > 0.
class HalfPlanePoint {
public:
    /// Throws DomainError unless y > 0 and both coordinates are finite.
    HalfPlanePoint(double x, double y);

    double x() const { return x_; }
    double y() const { return y_; }
    cplx tau() const { return {x_, y_}; }

    /// log|q| = -2 pi y.
    double log_q_abs() const { return -kTwoPi * y_; }
    double q_abs() const;
    cplx q() const;

private:
    double x_;
    double y_;
};

/// Integer matrix [[a, b], [c, d]] with ad - bc = 1.
struct UnimodularMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    /// Throws DomainError if the determinant is not 1.
    static UnimodularMatrix make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix translation(std::int64_t n) { return {1, n, 0, 1}; }
    static UnimodularMatrix inversion() { return {0, -1, 1, 0}; }

    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }
    UnimodularMatrix negated() const { return {-a, -b, -c, -d}; }

    /// Representative of +-gamma with c > 0, or c = 0 and d > 0.
    UnimodularMatrix normalized() const;

    /// Moebius action (a tau + b) / (c tau + d).
    HalfPlanePoint act(const HalfPlanePoint& tau) const;

    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;
};

UnimodularMatrix operator*(const UnimodularMatrix& lhs, const UnimodularMatrix& rhs);

struct TruncationBudget {
    double target_abs_error = 1e-12;
    std::int64_t max_terms = 200000;

    /// Throws DomainError unless target_abs_error > 0 and max_terms > 0.
    void validate() const;
};

/// A truncated sum together with the bound on everything it left out.
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::int64_t terms = 0;
};

/// log|1 - w| for w = exp(log_mod) * e^{2 pi i turns}. Accurate for small |w|
/// and stable for |w| > 1. Throws PoleAtNode if w == 1 exactly.
double log_abs_one_minus(double log_mod, double turns);

/// Fractional part in [0, 1).
double frac(double t);

/// q^alpha = e^{2 pi i alpha tau}.
cplx q_pow(const HalfPlanePoint& tau, const mpq_class& alpha);

/// log|eta(tau)| = log|q|/24 + sum_{k>=1} log|1 - q^k|.
SeriesValue eta_log_abs_series(const HalfPlanePoint& tau, const TruncationBudget& budget = {});
double eta_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// log|Delta(tau)| = log|q| + 24 sum log|1 - q^n|.
double delta_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// Weight-4 Eisenstein series 1 + 240 sum n^3 q^n / (1 - q^n).
cplx eisenstein_e4(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// j(tau) = E4^3 / Delta. Overflows for y beyond ~110; use j_log_abs there.
cplx j_invariant(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// log|j(tau)|, computed on the log scale so it stays finite deep in the cusp.
double j_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// j(tau) - 1/q without cancellation (numerator and denominator are both
/// formed as O(q) quantities).
cplx j_minus_inverse_q(const HalfPlanePoint& tau, const TruncationBudget& budget = {});

/// Reduction to the standard fundamental domain.
struct ReducedPoint {
    HalfPlanePoint point;     // tau' in D
    UnimodularMatrix gamma;   // gamma * tau' == tau, normalized sign
};

/// Boundary convention: on |tau'| = 1 or |Re tau'| = 1/2 the representative
/// with Re tau' <= 0 is chosen.
ReducedPoint fundamental_domain_reduce(const HalfPlanePoint& tau);

/// |Re tau| <= 1/2 and |tau| >= 1, up to tol, with the boundary convention.
bool in_fundamental_domain(const HalfPlanePoint& tau, double tol = 1e-12);

/// tau lies in D + Z, up to tol.
bool in_fundamental_domain_translates(const HalfPlanePoint& tau, double tol = 1e-12);

}  // namespace runge
