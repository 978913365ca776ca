#include "runge/qnum.hpp"

#include "runge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace runge {

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
        std::ostringstream msg;
        msg << "point " << x << " + " << y << "i is not in the upper half-plane";
        throw DomainError(msg.str());
    }
}

double HalfPlanePoint::q_abs() const { return std::exp(log_q_abs()); }

cplx HalfPlanePoint::q() const { return std::polar(q_abs(), kTwoPi * frac(x_)); }

UnimodularMatrix UnimodularMatrix::make(std::int64_t a, std::int64_t b, std::int64_t c,
                                        std::int64_t d) {
    if (static_cast<__int128>(a) * d - static_cast<__int128>(b) * c != 1) {
        throw DomainError("matrix determinant is not 1");
    }
    return {a, b, c, d};
}

UnimodularMatrix UnimodularMatrix::normalized() const {
    if (c < 0 || (c == 0 && d < 0)) return negated();
    return *this;
}

HalfPlanePoint UnimodularMatrix::act(const HalfPlanePoint& tau) const {
    const cplx t = tau.tau();
    const cplx w = (static_cast<double>(a) * t + static_cast<double>(b)) /
                   (static_cast<double>(c) * t + static_cast<double>(d));
    return {w.real(), w.imag()};
}

UnimodularMatrix operator*(const UnimodularMatrix& l, const UnimodularMatrix& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

void TruncationBudget::validate() const {
    if (!(target_abs_error > 0.0) || max_terms <= 0) {
        throw DomainError("truncation budget needs target_abs_error > 0 and max_terms > 0");
    }
}

double frac(double t) {
    double f = t - std::floor(t);
    return f >= 1.0 ? 0.0 : f;
}

double log_abs_one_minus(double log_mod, double turns) {
    const double theta = kTwoPi * frac(turns);
    const double c = std::cos(theta);
    double result;
    if (log_mod <= 0.0) {
        const double r = std::exp(log_mod);
        result = 0.5 * std::log1p(r * r - 2.0 * r * c);
    } else {
        // |1 - w| = |w| |1 - 1/w|
        const double s = std::exp(-log_mod);
        result = log_mod + 0.5 * std::log1p(s * s - 2.0 * s * c);
    }
    if (std::isinf(result) && result < 0.0) {
        throw PoleAtNode("product factor 1 - w vanishes");
    }
    return result;
}

cplx q_pow(const HalfPlanePoint& tau, const mpq_class& alpha) {
    const double a = alpha.get_d();
    return std::polar(std::exp(a * tau.log_q_abs()), kTwoPi * frac(a * tau.x()));
}

namespace {

void check_terms(std::int64_t n, const TruncationBudget& budget, const char* what) {
    if (n > budget.max_terms) {
        std::ostringstream msg;
        msg << what << ": tail bound not reached within " << budget.max_terms << " terms";
        throw BudgetExhausted(msg.str());
    }
}

// Sum_{m >= n} -log(1 - r^m) <= r^n / ((1 - r)(1 - r^n)).
double log_product_tail(double log_r, std::int64_t n) {
    const double rn = std::exp(static_cast<double>(n) * log_r);
    const double r = std::exp(log_r);
    return rn / ((1.0 - r) * (1.0 - rn));
}

cplx q_int_pow(const HalfPlanePoint& tau, std::int64_t n) {
    return std::polar(std::exp(static_cast<double>(n) * tau.log_q_abs()),
                      kTwoPi * frac(static_cast<double>(n) * tau.x()));
}

// Complex log(1 - w) with the real part taken from log_abs_one_minus.
cplx log_one_minus(const cplx& w, double log_mod, double turns) {
    return {log_abs_one_minus(log_mod, turns), std::atan2(-w.imag(), 1.0 - w.real())};
}

// sum_{n>=1} log(1 - q^n), principal branch term by term.
struct ComplexSeries {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
};

ComplexSeries log_euler_product(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    budget.validate();
    const double log_r = tau.log_q_abs();
    ComplexSeries out;
    for (std::int64_t n = 1;; ++n) {
        check_terms(n, budget, "log Euler product");
        const double lm = static_cast<double>(n) * log_r;
        const double turns = static_cast<double>(n) * tau.x();
        const cplx w = q_int_pow(tau, n);
        out.value += log_one_minus(w, lm, turns);
        out.tail_bound = log_product_tail(log_r, n + 1);
        if (out.tail_bound <= budget.target_abs_error) return out;
    }
}

// X = sum_{n>=1} n^3 q^n / (1 - q^n), so E4 = 1 + 240 X.
ComplexSeries e4_lambert_sum(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    budget.validate();
    const double log_r = tau.log_q_abs();
    const double r = std::exp(log_r);
    ComplexSeries out;
    for (std::int64_t n = 1;; ++n) {
        check_terms(n, budget, "Eisenstein series");
        const cplx w = q_int_pow(tau, n);
        const double nd = static_cast<double>(n);
        out.value += nd * nd * nd * w / (1.0 - w);
        // Tail over m >= N = n + 1: consecutive majorant terms shrink by at most rho.
        const double big_n = nd + 1.0;
        const double ratio = (big_n + 1.0) / big_n;
        const double rho = ratio * ratio * ratio * r;
        if (rho < 1.0) {
            const double lead = big_n * big_n * big_n * std::exp(big_n * log_r);
            out.tail_bound = 240.0 * lead / ((1.0 - r) * (1.0 - rho));
            if (out.tail_bound <= budget.target_abs_error) return out;
        }
    }
}

cplx expm1_complex(const cplx& z) {
    const double em = std::expm1(z.real());
    const double s = std::sin(0.5 * z.imag());
    const double re = em * std::cos(z.imag()) - 2.0 * s * s;
    const double im = std::exp(z.real()) * std::sin(z.imag());
    return {re, im};
}

}  // namespace

SeriesValue eta_log_abs_series(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    budget.validate();
    const double log_r = tau.log_q_abs();
    SeriesValue out;
    out.value = log_r / 24.0;
    for (std::int64_t k = 1;; ++k) {
        check_terms(k, budget, "eta product");
        out.value += log_abs_one_minus(static_cast<double>(k) * log_r,
                                       static_cast<double>(k) * tau.x());
        out.terms = k;
        out.tail_bound = log_product_tail(log_r, k + 1);
        if (out.tail_bound <= budget.target_abs_error) return out;
    }
}

double eta_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    return eta_log_abs_series(tau, budget).value;
}

double delta_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    return 24.0 * eta_log_abs(tau, budget);
}

cplx eisenstein_e4(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    return 1.0 + 240.0 * e4_lambert_sum(tau, budget).value;
}

cplx j_invariant(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    const cplx e4 = 1.0 + 240.0 * e4_lambert_sum(tau, budget).value;
    const cplx s = log_euler_product(tau, budget).value;
    return e4 * e4 * e4 / (tau.q() * std::exp(24.0 * s));
}

double j_log_abs(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    const cplx e4 = 1.0 + 240.0 * e4_lambert_sum(tau, budget).value;
    const cplx s = log_euler_product(tau, budget).value;
    return 3.0 * std::log(std::abs(e4)) - (tau.log_q_abs() + 24.0 * s.real());
}

cplx j_minus_inverse_q(const HalfPlanePoint& tau, const TruncationBudget& budget) {
    // j - 1/q = ((E4^3 - 1) - (P^24 - 1)) / (q P^24), P = prod (1 - q^n).
    // The division by q amplifies truncation error, so tighten the target.
    TruncationBudget inner = budget;
    inner.target_abs_error = std::max(budget.target_abs_error * tau.q_abs() / 240.0, 1e-300);
    const cplx e = 240.0 * e4_lambert_sum(tau, inner).value;
    const cplx s24 = 24.0 * log_euler_product(tau, inner).value;
    const cplx numerator = e * (3.0 + 3.0 * e + e * e) - expm1_complex(s24);
    return numerator / (tau.q() * std::exp(s24));
}

namespace {

constexpr double kBoundaryTol = 1e-13;

}  // namespace

ReducedPoint fundamental_domain_reduce(const HalfPlanePoint& tau) {
    UnimodularMatrix g = UnimodularMatrix::identity();  // g * tau == current
    HalfPlanePoint cur = tau;
    for (int iter = 0;; ++iter) {
        if (iter > 100000) throw std::logic_error("fundamental domain reduction did not terminate");
        const double n = std::round(cur.x());
        if (n != 0.0) {
            g = UnimodularMatrix::translation(-static_cast<std::int64_t>(n)) * g;
            cur = g.act(tau);
        }
        const double r2 = cur.x() * cur.x() + cur.y() * cur.y();
        if (r2 < 1.0 - kBoundaryTol) {
            g = UnimodularMatrix::inversion() * g;
            cur = g.act(tau);
            continue;
        }
        break;
    }
    if (std::abs(cur.x() - 0.5) <= kBoundaryTol) {
        g = UnimodularMatrix::translation(-1) * g;
        cur = g.act(tau);
    }
    const double r2 = cur.x() * cur.x() + cur.y() * cur.y();
    if (std::abs(r2 - 1.0) <= kBoundaryTol && cur.x() > kBoundaryTol) {
        g = UnimodularMatrix::inversion() * g;
        cur = g.act(tau);
    }
    return {cur, g.inverse().normalized()};
}

bool in_fundamental_domain(const HalfPlanePoint& tau, double tol) {
    const double x = tau.x();
    const double r2 = x * x + tau.y() * tau.y();
    if (std::abs(x) > 0.5 + tol || r2 < 1.0 - tol) return false;
    if (std::abs(x - 0.5) <= tol) return false;
    if (std::abs(r2 - 1.0) <= tol && x > tol) return false;
    return true;
}

bool in_fundamental_domain_translates(const HalfPlanePoint& tau, double tol) {
    const double x0 = tau.x() - std::round(tau.x());
    return x0 * x0 + tau.y() * tau.y() >= 1.0 - tol;
}

}  // namespace runge
