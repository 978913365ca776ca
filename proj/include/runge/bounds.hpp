#pragma once

// Explicit bound calculators: the Runge bound on log|j| at integral points,
// the arithmetic bound on log|U(P)|, and the conditional isogeny-height chain
// with its crossing-point solver.
//
// Everything in the isogeny chain is conditional on IsogenyChainConstants;
// none of those constants is proved here.

#include <cstdint>
#include <gmpxx.h>
#include <string>

namespace runge {

inline constexpr double kDefaultCRunge = 10.0;

/// 2 pi sqrt(p) + 6 log p + c_runge. The formula accepts any p >= 2; callers
/// gate primality.
double runge_bound(double p, double c_runge);

/// 24 p log p.
double pari_bound(long p);

/// Whether `value` can be U(P) at an integral point: value = +-p^m with
/// 0 <= m <= 24p.
bool is_admissible_unit_value(const mpz_class& value, long p);

struct BoundReport {
    long p = 0;
    double c_runge = kDefaultCRunge;
    double runge_bound = 0.0;
    double pari_bound = 0.0;
    double substitution_margin = 0.0;  // 12 p log p / (p - 1) - 12 log p
    std::string notes;
};

/// Largest value of the substitution margin over primes p >= 3 (attained at
/// p = 3): 6 log 3.
double substitution_slack_limit();

/// Substitutes the arithmetic bound into the unit branch of the dichotomy and
/// checks the result stays within runge_bound up to substitution_slack_limit().
/// Throws std::logic_error if the substitution and its closed form disagree,
/// DomainError unless p is an odd prime.
BoundReport combine_theorem1(long p, double c_runge = kDefaultCRunge);

struct IsogenyChainConstants {
    double kappa2 = 1.0;            // placeholder; no proved value is used
    double faltings_step = 0.5;     // coefficient of log p
    double silverman_slack = 47.15;
    double height_log_coeff = 6.0;

    /// Throws DomainError unless kappa2 > 0 and silverman_slack > 0.
    void validate() const;
};

/// kappa2 (1 + h_j)^2.
double isogeny_degree_bound(double h_j, const IsogenyChainConstants& constants);

struct HeightChain {
    long p = 0;
    double isogenous_height = 0.0;  // lower bound on h(j_{E1})
    double isogenous_faltings = 0.0;  // lower bound on h_F(E1)
    double faltings_height = 0.0;   // lower bound on h_F(E)
    double lower_bound = 0.0;       // L(p), lower bound on h(j_E)
    bool positive = false;          // false: p is below the reach of the constants
    std::string failed_step;        // empty when positive
};

/// Three-step chain: degree bound on the cyclic p^2-isogeny, the Faltings
/// isogeny step, then the height comparison solved by bisection on [0, 1e9].
HeightChain pubo_lower_bound(long p, const IsogenyChainConstants& constants);

/// Inverts the height comparison: least h >= 0 with
/// h + coeff log(1 + h) + slack >= 12 faltings, to within 1e-6.
double height_from_faltings_lower(double faltings, const IsogenyChainConstants& constants);

struct Crossing {
    std::uint64_t prime = 0;      // least prime from which kappa p > runge_bound holds
    std::uint64_t last_failure = 0;  // largest failing prime, 0 if none fails
    double value_at_prime = 0.0;     // kappa p - runge_bound at `prime`
    double value_at_failure = 0.0;   // same at `last_failure`
};

/// Least prime p such that kappa_eff q > 2 pi sqrt(q) + 6 log q + c_runge for
/// every prime q >= p. Throws DomainError if kappa_eff <= 0.
Crossing p0_crossing(double kappa_eff, double c_runge);

}  // namespace runge
