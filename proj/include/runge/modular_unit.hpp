#pragma once

// The modular unit U = prod_{a in A} g_a^{12p} attached to the normalizer of
// the split Cartan subgroup mod p, its translates U_c = U o beta_c, and the
// grid verifiers for the two-regime asymptotics of log|U_c| near the cusp.

#include "runge/qnum.hpp"
#include "runge/siegel.hpp"

#include <cstdint>
#include <vector>

namespace runge {

/// beta_c = [[1, 0], [c, 1]].
UnimodularMatrix beta_matrix(std::int64_t c);

/// A * beta_c for odd prime p, where
/// A = {(k/p, 0)} u {(0, k/p)}, k = 1..p-1.
struct UnitIndexSet {
    long p = 0;
    std::int64_t c = 0;
    std::vector<IndexPair> elements;  // sorted

    /// c mod p in [0, p).
    long c_class() const;
    bool p_divides_c() const { return c_class() == 0; }
};

/// Throws DomainError unless p is an odd prime.
UnitIndexSet build_index_set(long p, std::int64_t c);

/// sum over the set of B2(a1), exactly.
mpq_class b2_sum(const UnitIndexSet& set);

/// log|U_c(tau)| = 12p * sum_{a in A beta_c} log|g_a(tau)|.
double unit_log_abs(const UnitIndexSet& set, const HalfPlanePoint& tau,
                    const TruncationBudget& budget = {});
double unit_log_abs(long p, std::int64_t c, const HalfPlanePoint& tau,
                    const TruncationBudget& budget = {});

/// sum_{k=1}^{n} log|1 - z^k|. Throws DomainError if |z| >= 1 or n < 1.
double sum_log_one_minus_powers(cplx z, std::int64_t n);

/// (pi^2 / 6) / log(1/|z|), the leading term of the bound on the sum above.
double llogz_envelope(double z_abs);

/// The unique c in {0, ..., (p-1)/2} with beta in Gamma * beta_c * Gamma_inf,
/// where Gamma is the pullback of the normalizer of the diagonal subgroup of
/// SL2(F_p). Exhaustive search over c, the translation n mod p and the sign;
/// throws std::logic_error if the class is not unique.
long double_coset_class(const UnimodularMatrix& beta, long p);

/// Whether g mod p is diagonal or anti-diagonal.
bool in_split_cartan_normalizer(const UnimodularMatrix& g, long p);

struct UnitEvalReport {
    long p = 0;
    std::int64_t c = 0;
    HalfPlanePoint tau{0.0, 1.0};
    double log_abs_u = 0.0;
    double main_term = 0.0;
    double envelope = 0.0;
    double residual = 0.0;          // log_abs_u - main_term
    double slack_normalizer = 0.0;  // p log p when p | c, p otherwise
    double slack = 0.0;
    bool passes = false;            // |residual| <= envelope + slack * slack_normalizer
};

/// Main-term slope: (p-1)^2 when p | c, -2(p-1) otherwise.
double unit_main_slope(long p, std::int64_t c);

/// One point of the verification; requires |q| <= 1/p.
UnitEvalReport evaluate_prop_pu(const UnitIndexSet& set, const HalfPlanePoint& tau,
                                double slack_divisible, double slack_coprime,
                                const TruncationBudget& budget = {});

/// Throws DomainError if some grid point has |q| > 1/p.
std::vector<UnitEvalReport> verify_prop_pu(long p, std::int64_t c,
                                           const std::vector<HalfPlanePoint>& grid,
                                           double slack_divisible, double slack_coprime,
                                           const TruncationBudget& budget = {});

struct PanaVerdict {
    long p = 0;
    long c = 0;
    HalfPlanePoint tau{0.0, 1.0};
    double log_abs_j = 0.0;
    double log_abs_u = 0.0;
    double cusp_bound = 0.0;   // 2 pi sqrt(p) + 6 log p + C + slack
    double unit_bound = 0.0;   // |log|U_c||/(2(p-1)) + 2 pi sqrt(p) - 6 log p + C + slack
    bool cusp_branch = false;  // log|j| <= cusp_bound
    bool unit_branch = false;  // log|j| <= unit_bound
    bool holds() const { return cusp_branch || unit_branch; }
};

/// One tau against every c in {0..(p-1)/2}. tau must lie in D + Z.
std::vector<PanaVerdict> evaluate_prop_pana(long p, const HalfPlanePoint& tau, double c_runge,
                                            double slack, const TruncationBudget& budget = {});

std::vector<PanaVerdict> verify_prop_pana(long p, const std::vector<HalfPlanePoint>& grid,
                                          double c_runge, double slack,
                                          const TruncationBudget& budget = {});

}  // namespace runge
