#include "runge/modular_unit.hpp"

#include "runge/errors.hpp"
#include "runge/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace runge {

namespace {

void require_odd_prime(long p) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
        std::ostringstream msg;
        msg << p << " is not an odd prime";
        throw DomainError(msg.str());
    }
}

}  // namespace

UnimodularMatrix beta_matrix(std::int64_t c) { return {1, 0, c, 1}; }

long UnitIndexSet::c_class() const { return static_cast<long>(mod_floor(c, p)); }

UnitIndexSet build_index_set(long p, std::int64_t c) {
    require_odd_prime(p);
    UnitIndexSet set;
    set.p = p;
    set.c = c;
    // Only c mod p matters for the action on (p^-1 Z / Z)^2.
    const UnimodularMatrix beta = beta_matrix(mod_floor(c, p));
    std::set<IndexPair> seen;
    for (long k = 1; k < p; ++k) {
        seen.insert(act_on_index(IndexPair::from_numerators(k, 0, p), beta));
        seen.insert(act_on_index(IndexPair::from_numerators(0, k, p), beta));
    }
    set.elements.assign(seen.begin(), seen.end());
    if (set.elements.size() != static_cast<std::size_t>(2 * (p - 1))) {
        throw std::logic_error("index set A * beta_c has the wrong cardinality");
    }
    return set;
}

mpq_class b2_sum(const UnitIndexSet& set) {
    mpq_class total = 0;
    for (const auto& a : set.elements) total += bernoulli_b2(a.a1());
    total.canonicalize();
    return total;
}

double unit_log_abs(const UnitIndexSet& set, const HalfPlanePoint& tau,
                    const TruncationBudget& budget) {
    double sum = 0.0;
    for (const auto& a : set.elements) sum += siegel_log_abs(a, tau, budget);
    return 12.0 * static_cast<double>(set.p) * sum;
}

double unit_log_abs(long p, std::int64_t c, const HalfPlanePoint& tau,
                    const TruncationBudget& budget) {
    return unit_log_abs(build_index_set(p, c), tau, budget);
}

double sum_log_one_minus_powers(cplx z, std::int64_t n) {
    const double r = std::abs(z);
    if (!(r < 1.0)) throw DomainError("sum_log_one_minus_powers requires |z| < 1");
    if (n < 1) throw DomainError("sum_log_one_minus_powers requires N >= 1");
    if (r == 0.0) return 0.0;
    const double log_r = std::log(r);
    const double turns = std::arg(z) / kTwoPi;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const double lm = static_cast<double>(k) * log_r;
        if (lm < -745.0) break;  // |z^k| underflows; remaining terms are exactly 0 in double
        sum += log_abs_one_minus(lm, static_cast<double>(k) * turns);
    }
    return sum;
}

double llogz_envelope(double z_abs) {
    return (kPi * kPi / 6.0) / std::log(1.0 / z_abs);
}

namespace {

using Mat2 = std::array<std::int64_t, 4>;  // a, b, c, d mod p

Mat2 reduce(const UnimodularMatrix& g, long p) {
    return {mod_floor(g.a, p), mod_floor(g.b, p), mod_floor(g.c, p), mod_floor(g.d, p)};
}

Mat2 mul(const Mat2& l, const Mat2& r, long p) {
    return {mod_floor(l[0] * r[0] + l[1] * r[2], p), mod_floor(l[0] * r[1] + l[1] * r[3], p),
            mod_floor(l[2] * r[0] + l[3] * r[2], p), mod_floor(l[2] * r[1] + l[3] * r[3], p)};
}

bool diagonal_or_antidiagonal(const Mat2& m) {
    return (m[1] == 0 && m[2] == 0) || (m[0] == 0 && m[3] == 0);
}

}  // namespace

bool in_split_cartan_normalizer(const UnimodularMatrix& g, long p) {
    return diagonal_or_antidiagonal(reduce(g, p));
}

long double_coset_class(const UnimodularMatrix& beta, long p) {
    require_odd_prime(p);
    if (static_cast<__int128>(beta.a) * beta.d - static_cast<__int128>(beta.b) * beta.c != 1) {
        throw DomainError("double_coset_class expects a matrix of determinant 1");
    }
    const Mat2 b = reduce(beta, p);
    long found = -1;
    for (long c = 0; c <= (p - 1) / 2; ++c) {
        const Mat2 beta_c_inv = reduce(beta_matrix(-c), p);
        bool member = false;
        for (long n = 0; n < p && !member; ++n) {
            for (int sign : {1, -1}) {
                // kappa^-1 for kappa = sign * T^n
                const Mat2 kappa_inv =
                    reduce(UnimodularMatrix{sign, -sign * n, 0, sign}, p);
                if (diagonal_or_antidiagonal(mul(mul(b, kappa_inv, p), beta_c_inv, p))) {
                    member = true;
                    break;
                }
            }
        }
        if (member) {
            if (found >= 0) throw std::logic_error("double coset class is not unique");
            found = c;
        }
    }
    if (found < 0) throw std::logic_error("no double coset representative found");
    return found;
}

double unit_main_slope(long p, std::int64_t c) {
    const double pm1 = static_cast<double>(p - 1);
    return mod_floor(c, p) == 0 ? pm1 * pm1 : -2.0 * pm1;
}

UnitEvalReport evaluate_prop_pu(const UnitIndexSet& set, const HalfPlanePoint& tau,
                                double slack_divisible, double slack_coprime,
                                const TruncationBudget& budget) {
    const double p = static_cast<double>(set.p);
    const double log_q = tau.log_q_abs();
    if (log_q > -std::log(p) + 1e-12) {
        std::ostringstream msg;
        msg << "grid point " << tau.x() << " + " << tau.y() << "i violates |q| <= 1/" << set.p;
        throw DomainError(msg.str());
    }
    UnitEvalReport rep;
    rep.p = set.p;
    rep.c = set.c;
    rep.tau = tau;
    rep.log_abs_u = unit_log_abs(set, tau, budget);
    rep.main_term = unit_main_slope(set.p, set.c) * log_q;
    rep.residual = rep.log_abs_u - rep.main_term;
    const double scale = kPi * kPi * p * p / (-log_q);
    if (set.p_divides_c()) {
        rep.envelope = 4.0 * scale;
        rep.slack_normalizer = p * std::log(p);
        rep.slack = slack_divisible;
    } else {
        rep.envelope = 8.0 * scale;
        rep.slack_normalizer = p;
        rep.slack = slack_coprime;
    }
    rep.passes = std::abs(rep.residual) <= rep.envelope + rep.slack * rep.slack_normalizer;
    return rep;
}

std::vector<UnitEvalReport> verify_prop_pu(long p, std::int64_t c,
                                           const std::vector<HalfPlanePoint>& grid,
                                           double slack_divisible, double slack_coprime,
                                           const TruncationBudget& budget) {
    const UnitIndexSet set = build_index_set(p, c);
    std::vector<UnitEvalReport> out;
    out.reserve(grid.size());
    for (const auto& tau : grid) {
        out.push_back(evaluate_prop_pu(set, tau, slack_divisible, slack_coprime, budget));
    }
    return out;
}

std::vector<PanaVerdict> evaluate_prop_pana(long p, const HalfPlanePoint& tau, double c_runge,
                                            double slack, const TruncationBudget& budget) {
    require_odd_prime(p);
    if (!in_fundamental_domain_translates(tau, 1e-9)) {
        std::ostringstream msg;
        msg << "grid point " << tau.x() << " + " << tau.y() << "i is not in D + Z";
        throw DomainError(msg.str());
    }
    const double pd = static_cast<double>(p);
    const double sqrt_term = kTwoPi * std::sqrt(pd);
    const double log_term = 6.0 * std::log(pd);
    const double log_j = j_log_abs(tau, budget);
    std::vector<PanaVerdict> out;
    for (long c = 0; c <= (p - 1) / 2; ++c) {
        PanaVerdict v;
        v.p = p;
        v.c = c;
        v.tau = tau;
        v.log_abs_j = log_j;
        v.log_abs_u = unit_log_abs(p, c, tau, budget);
        v.cusp_bound = sqrt_term + log_term + c_runge + slack;
        v.unit_bound = std::abs(v.log_abs_u) / (2.0 * (pd - 1.0)) + sqrt_term - log_term +
                       c_runge + slack;
        v.cusp_branch = log_j <= v.cusp_bound;
        v.unit_branch = log_j <= v.unit_bound;
        out.push_back(v);
    }
    return out;
}

std::vector<PanaVerdict> verify_prop_pana(long p, const std::vector<HalfPlanePoint>& grid,
                                          double c_runge, double slack,
                                          const TruncationBudget& budget) {
    std::vector<PanaVerdict> out;
    for (const auto& tau : grid) {
        auto part = evaluate_prop_pana(p, tau, c_runge, slack, budget);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace runge
