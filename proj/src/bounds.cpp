#include "runge/bounds.hpp"

#include "runge/errors.hpp"
#include "runge/primes.hpp"
#include "runge/qnum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace runge {

double runge_bound(double p, double c_runge) {
    return kTwoPi * std::sqrt(p) + 6.0 * std::log(p) + c_runge;
}

double pari_bound(long p) {
    const double pd = static_cast<double>(p);
    return 24.0 * pd * std::log(pd);
}

bool is_admissible_unit_value(const mpz_class& value, long p) {
    if (value == 0 || p < 2) return false;
    mpz_class magnitude = abs(value);
    mpz_class rest;
    const auto m = mpz_remove(rest.get_mpz_t(), magnitude.get_mpz_t(), mpz_class(p).get_mpz_t());
    return rest == 1 && m <= static_cast<mp_bitcnt_t>(24 * p);
}

double substitution_slack_limit() { return 6.0 * std::log(3.0); }

BoundReport combine_theorem1(long p, double c_runge) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
        std::ostringstream msg;
        msg << p << " is not an odd prime";
        throw DomainError(msg.str());
    }
    const double pd = static_cast<double>(p);
    BoundReport rep;
    rep.p = p;
    rep.c_runge = c_runge;
    rep.runge_bound = runge_bound(pd, c_runge);
    rep.pari_bound = pari_bound(p);

    const double sqrt_term = kTwoPi * std::sqrt(pd);
    const double log_term = 6.0 * std::log(pd);
    const double substituted = rep.pari_bound / (2.0 * (pd - 1.0)) + sqrt_term - log_term + c_runge;
    rep.substitution_margin = substituted - rep.runge_bound;

    const double closed_form = 12.0 * std::log(pd) / (pd - 1.0);
    if (std::abs(rep.substitution_margin - closed_form) > 1e-9 * (1.0 + closed_form)) {
        throw std::logic_error("arithmetic bound substitution disagrees with 12 log p / (p - 1)");
    }
    if (rep.substitution_margin > substitution_slack_limit() + 1e-12) {
        throw std::logic_error("substitution margin exceeds the absorbed constant 6 log 3");
    }
    std::ostringstream notes;
    notes << "C_runge = " << c_runge
          << " is a configuration value, not a proved constant; substitution margin "
          << rep.substitution_margin << " <= 6 log 3";
    rep.notes = notes.str();
    return rep;
}

void IsogenyChainConstants::validate() const {
    if (!(kappa2 > 0.0)) throw DomainError("kappa2 must be positive");
    if (!(silverman_slack > 0.0)) throw DomainError("silverman_slack must be positive");
}

double isogeny_degree_bound(double h_j, const IsogenyChainConstants& constants) {
    constants.validate();
    if (h_j < 0.0) throw DomainError("height must be nonnegative");
    return constants.kappa2 * (1.0 + h_j) * (1.0 + h_j);
}

double height_from_faltings_lower(double faltings, const IsogenyChainConstants& k) {
    const double target = 12.0 * faltings - k.silverman_slack;
    auto excess = [&](double h) { return h + k.height_log_coeff * std::log1p(h) - target; };
    if (excess(0.0) >= 0.0) return 0.0;
    double lo = 0.0;
    double hi = 1e9;
    if (excess(hi) < 0.0) throw DomainError("height comparison has no solution below 1e9");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) >= 0.0 ? hi : lo) = mid;
    }
    return lo;
}

HeightChain pubo_lower_bound(long p, const IsogenyChainConstants& k) {
    k.validate();
    if (p < 3) throw DomainError("pubo_lower_bound requires p >= 3");
    const double pd = static_cast<double>(p);
    HeightChain chain;
    chain.p = p;

    // (i) a cyclic p^2-isogeny has degree p^2 <= kappa2 (1 + h)^2.
    chain.isogenous_height = pd / std::sqrt(k.kappa2) - 1.0;
    if (chain.isogenous_height <= 0.0) {
        chain.failed_step = "isogeny degree";
        return chain;
    }

    // h - c log(1 + h) is smallest at h = c - 1, so a lower bound on h only
    // transfers through its increasing part.
    const double h1 = std::max(chain.isogenous_height, k.height_log_coeff - 1.0);
    chain.isogenous_faltings =
        (h1 - k.height_log_coeff * std::log1p(h1) - k.silverman_slack) / 12.0;

    // (ii) h_F(E1) <= h_F(E) + (1/2) log p
    chain.faltings_height = chain.isogenous_faltings - k.faltings_step * std::log(pd);

    // (iii) h(j) >= 12 h_F - c log(1 + h(j)) - slack
    chain.lower_bound = height_from_faltings_lower(chain.faltings_height, k);
    chain.positive = chain.lower_bound > 0.0;
    if (!chain.positive) chain.failed_step = "height comparison";
    return chain;
}

Crossing p0_crossing(double kappa, double c_runge) {
    if (!(kappa > 0.0)) throw DomainError("kappa_eff must be positive");
    auto f = [&](double x) { return kappa * x - runge_bound(x, c_runge); };
    auto df = [&](double x) { return kappa - kPi / std::sqrt(x) - 6.0 / x; };
    constexpr double kLimit = 1e15;

    // f is convex on x >= 2, so {f <= 0} is an interval [x1, x2].
    double argmin = 2.0;
    if (df(2.0) < 0.0) {
        double lo = 2.0, hi = 4.0;
        while (df(hi) < 0.0) {
            hi *= 2.0;
            if (hi > kLimit) throw DomainError("crossing lies beyond the search range");
        }
        while (hi - lo > 1e-9 * hi) {
            const double mid = 0.5 * (lo + hi);
            (df(mid) < 0.0 ? lo : hi) = mid;
        }
        argmin = hi;
    }

    Crossing out;
    auto finish = [&](std::uint64_t prime) {
        out.prime = prime;
        out.value_at_prime = f(static_cast<double>(prime));
        if (out.last_failure) out.value_at_failure = f(static_cast<double>(out.last_failure));
        return out;
    };
    if (f(argmin) > 0.0) return finish(2);

    double lo = argmin, hi = 2.0 * argmin;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > kLimit) throw DomainError("crossing lies beyond the search range");
    }
    while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    // Largest failing prime is the largest prime <= x2, provided it is >= x1.
    std::uint64_t r = prev_prime(static_cast<std::uint64_t>(std::floor(hi)));
    while (r >= 2 && f(static_cast<double>(r)) > 0.0 && static_cast<double>(r) >= argmin) {
        r = prev_prime(r - 1);
    }
    if (r < 2 || f(static_cast<double>(r)) > 0.0) return finish(2);
    out.last_failure = r;
    return finish(next_prime(r));
}

}  // namespace runge
