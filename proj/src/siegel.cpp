#include "runge/siegel.hpp"

#include "runge/errors.hpp"

#include <cmath>
#include <sstream>

namespace runge {

mpq_class reduce_mod_one(const mpq_class& t_in) {
    mpq_class t = t_in;
    t.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    mpq_class r = t - mpq_class(fl);
    r.canonicalize();
    return r;
}

namespace {

long checked_level(const mpq_class& a1, const mpq_class& a2, long level) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a1.get_den_mpz_t(), a2.get_den_mpz_t());
    if (level == 0) {
        if (!l.fits_slong_p()) throw DomainError("index level does not fit in a long");
        return l.get_si();
    }
    if (level < 0) throw DomainError("index level must be positive");
    if (!mpz_divisible_p(mpz_class(level).get_mpz_t(), l.get_mpz_t())) {
        std::ostringstream msg;
        msg << "denominators of (" << a1 << ", " << a2 << ") do not divide level " << level;
        throw DomainError(msg.str());
    }
    return level;
}

}  // namespace

IndexPair::IndexPair(const mpq_class& a1, const mpq_class& a2, long level)
    : a1_(reduce_mod_one(a1)), a2_(reduce_mod_one(a2)), level_(0) {
    if (a1_ == 0 && a2_ == 0) throw DomainError("Siegel index must not lie in Z^2");
    level_ = checked_level(a1_, a2_, level);
}

IndexPair IndexPair::from_numerators(long k1, long k2, long n) {
    if (n <= 0) throw DomainError("index level must be positive");
    mpq_class a1(k1, n), a2(k2, n);
    a1.canonicalize();
    a2.canonicalize();
    return IndexPair(a1, a2, n);
}

IndexPair IndexPair::negated() const { return IndexPair(-a1_, -a2_, level_); }

std::ostream& operator<<(std::ostream& os, const IndexPair& a) {
    return os << '(' << a.a1() << ", " << a.a2() << ')';
}

mpq_class bernoulli_b2(const mpq_class& t) {
    if (t < 0 || t >= 1) throw DomainError("bernoulli_b2 expects 0 <= t < 1");
    mpq_class r = t * t - t + mpq_class(1, 6);
    r.canonicalize();
    return r;
}

IndexPair act_on_index(const IndexPair& a, const UnimodularMatrix& g) {
    const mpq_class b1 = a.a1() * mpz_class(static_cast<long>(g.a)) +
                         a.a2() * mpz_class(static_cast<long>(g.c));
    const mpq_class b2 = a.a1() * mpz_class(static_cast<long>(g.b)) +
                         a.a2() * mpz_class(static_cast<long>(g.d));
    return IndexPair(b1, b2, a.level());
}

namespace {

void check_certifiable(const HalfPlanePoint& tau) {
    if (tau.q_abs() > 0.99) {
        throw DomainError("Siegel product truncation needs |q| <= 0.99");
    }
}

// Adds factors n = first, first + 1, ... of the product until the remaining
// factors are bounded by target. Both exponents of the factor at n are
// n + s and n + 1 - s.
SeriesValue product_tail_sum(double s, double t, const HalfPlanePoint& tau, long first,
                             double target, const TruncationBudget& budget) {
    const double log_r = tau.log_q_abs();
    const double r = std::exp(log_r);
    SeriesValue out;
    for (long n = first;; ++n) {
        if (out.terms >= budget.max_terms) {
            std::ostringstream msg;
            msg << "Siegel product: tail bound not reached within " << budget.max_terms
                << " terms";
            throw BudgetExhausted(msg.str());
        }
        const double nd = static_cast<double>(n);
        const double e1 = nd + s;
        const double e2 = nd + 1.0 - s;
        out.value += log_abs_one_minus(e1 * log_r, e1 * tau.x() + t);
        out.value += log_abs_one_minus(e2 * log_r, e2 * tau.x() - t);
        ++out.terms;
        // Remaining factors m >= n + 1: |log|1 - w|| <= |w| / (1 - |w|) and
        // every later |w| is at most max(u, v).
        const double f1 = e1 + 1.0;
        const double f2 = e2 + 1.0;
        if (f1 <= 0.0 || f2 <= 0.0) continue;
        const double u = std::exp(f1 * log_r);
        const double v = std::exp(f2 * log_r);
        out.tail_bound = (u + v) / ((1.0 - r) * (1.0 - std::max(u, v)));
        if (out.tail_bound <= target) return out;
    }
}

}  // namespace

SeriesValue siegel_log_abs_lifted(const mpq_class& a1, const mpq_class& a2,
                                  const HalfPlanePoint& tau, const TruncationBudget& budget) {
    budget.validate();
    check_certifiable(tau);
    if (a1.get_den() == 1 && a2.get_den() == 1) {
        throw DomainError("Siegel index must not lie in Z^2");
    }
    const mpq_class b2 = a1 * a1 - a1 + mpq_class(1, 6);
    const double s = a1.get_d();
    const double t = a2.get_d();
    // Factors with a nonpositive exponent only occur for n < -a1 (or
    // n < a1 - 1); starting at n = 0 covers every lift.
    SeriesValue out = product_tail_sum(s, t, tau, 0, budget.target_abs_error, budget);
    out.value += 0.5 * b2.get_d() * tau.log_q_abs();
    return out;
}

SeriesValue siegel_log_abs_series(const IndexPair& a, const HalfPlanePoint& tau,
                                  const TruncationBudget& budget) {
    return siegel_log_abs_lifted(a.a1(), a.a2(), tau, budget);
}

double siegel_log_abs(const IndexPair& a, const HalfPlanePoint& tau,
                      const TruncationBudget& budget) {
    return siegel_log_abs_series(a, tau, budget).value;
}

double pga_main_term(const IndexPair& a, const HalfPlanePoint& tau) {
    const double s = a.a1().get_d();
    const double t = a.a2().get_d();
    const double log_r = tau.log_q_abs();
    return 0.5 * bernoulli_b2(a.a1()).get_d() * log_r +
           log_abs_one_minus(s * log_r, s * tau.x() + t) +
           log_abs_one_minus((1.0 - s) * log_r, (1.0 - s) * tau.x() - t);
}

double pga_residual(const IndexPair& a, const HalfPlanePoint& tau,
                    const TruncationBudget& budget) {
    budget.validate();
    const double q_abs = tau.q_abs();
    if (q_abs > 0.1 * (1.0 + 1e-12)) {
        throw DomainError("pga_residual requires |q| <= 0.1");
    }
    const double target = std::max(budget.target_abs_error * q_abs,
                                   std::numeric_limits<double>::min());
    return product_tail_sum(a.a1().get_d(), a.a2().get_d(), tau, 1, target, budget).value;
}

}  // namespace runge
