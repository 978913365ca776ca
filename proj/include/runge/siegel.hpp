#pragma once

// Siegel functions g_a on the upper half-plane, through their modulus only.
//
// The product presentation
//   g_a(tau) = -q^{B2(a1)/2} e^{pi i a2 (a1 - 1)}
//              prod_{n>=0} (1 - q^{n+a1} e^{2 pi i a2}) (1 - q^{n+1-a1} e^{-2 pi i a2})
// is evaluated on the log scale. Phases and roots of unity are never tracked:
// every consumer of this module only needs |g_a|.

#include "runge/qnum.hpp"

#include <gmpxx.h>
#include <ostream>

namespace runge {

/// Canonical representative of t mod 1 in [0, 1).
mpq_class reduce_mod_one(const mpq_class& t);

/// An element (a1, a2) of (N^-1 Z / Z)^2 other than zero, stored with
/// 0 <= a1, a2 < 1.
class IndexPair {
public:
    /// Reduces both coordinates mod 1. level == 0 means "lcm of the
    /// denominators". Throws DomainError if a is in Z^2 or a denominator does
    /// not divide a nonzero level.
    IndexPair(const mpq_class& a1, const mpq_class& a2, long level = 0);

    /// (k1/n, k2/n) reduced mod 1, with level n.
    static IndexPair from_numerators(long k1, long k2, long n);

    const mpq_class& a1() const { return a1_; }
    const mpq_class& a2() const { return a2_; }
    long level() const { return level_; }

    /// -a, reduced mod 1.
    IndexPair negated() const;

    friend bool operator==(const IndexPair& l, const IndexPair& r) {
        return l.a1_ == r.a1_ && l.a2_ == r.a2_;
    }
    friend bool operator<(const IndexPair& l, const IndexPair& r) {
        return l.a1_ < r.a1_ || (l.a1_ == r.a1_ && l.a2_ < r.a2_);
    }

private:
    mpq_class a1_;
    mpq_class a2_;
    long level_;
};

std::ostream& operator<<(std::ostream& os, const IndexPair& a);

/// B2(t) = t^2 - t + 1/6 for 0 <= t < 1. Throws DomainError outside.
mpq_class bernoulli_b2(const mpq_class& t);

/// Row-vector action a * gamma, reduced into [0, 1)^2. Keeps the level of a.
IndexPair act_on_index(const IndexPair& a, const UnimodularMatrix& gamma);

/// log|g_a(tau)| with certified truncation (tail <= budget.target_abs_error).
/// Requires |q| <= 0.99.
SeriesValue siegel_log_abs_series(const IndexPair& a, const HalfPlanePoint& tau,
                                  const TruncationBudget& budget = {});
double siegel_log_abs(const IndexPair& a, const HalfPlanePoint& tau,
                      const TruncationBudget& budget = {});

/// Same product evaluated at an arbitrary rational lift (a1, a2), not reduced
/// mod 1. The modulus does not depend on the lift; this entry point exists so
/// that the independence can be checked.
SeriesValue siegel_log_abs_lifted(const mpq_class& a1, const mpq_class& a2,
                                  const HalfPlanePoint& tau,
                                  const TruncationBudget& budget = {});

/// (B2(a1)/2) log|q| + log|1 - q^{a1} e^{2 pi i a2}| + log|1 - q^{1-a1} e^{-2 pi i a2}|.
double pga_main_term(const IndexPair& a, const HalfPlanePoint& tau);

/// log|g_a(tau)| - pga_main_term(a, tau), i.e. the n >= 1 part of the
/// product, summed directly. Requires |q| <= 0.1; the truncation target is
/// budget.target_abs_error * |q|.
double pga_residual(const IndexPair& a, const HalfPlanePoint& tau,
                    const TruncationBudget& budget = {});

}  // namespace runge
