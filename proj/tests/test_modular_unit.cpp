#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "runge/calibration.hpp"
#include "runge/errors.hpp"
#include "runge/grids.hpp"
#include "runge/modular_unit.hpp"
#include "runge/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace runge;

namespace {

mpq_class frac_q(long num, long den) {
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

/// The translate written out directly from its closed form.
std::vector<IndexPair> closed_form_set(long p, long c) {
    std::vector<IndexPair> out;
    const long cc = mod_floor(c, p);
    for (long k = 1; k < p; ++k) {
        out.emplace_back(frac_q(k, p), 0, p);
        if (cc == 0) {
            out.emplace_back(0, frac_q(k, p), p);
        } else {
            const long b = inverse_mod(cc, p);
            out.emplace_back(frac_q(k, p), frac_q((k * b) % p, p), p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

mpq_class b2_closed_form(long p, long c) {
    if (mod_floor(c, p) == 0) return frac_q((p - 1) * (p - 1), 6 * p);
    return frac_q(-(p - 1), 3 * p);
}

/// Words in generators of Gamma (the pullback of the normalizer of the
/// diagonal mod p): T^p, its transpose, S, and a lift of diag(2, 1/2).
UnimodularMatrix gamma_word(gen::Rng& rng, long p, int len) {
    const std::int64_t pp = p;
    const UnimodularMatrix gens[] = {
        UnimodularMatrix::make(1, pp, 0, 1),
        UnimodularMatrix::make(1, 0, pp, 1),
        UnimodularMatrix::inversion(),
        UnimodularMatrix::make(2, pp, pp, (1 + pp * pp) / 2),
    };
    auto g = UnimodularMatrix::identity();
    for (int i = 0; i < len; ++i) {
        const auto& h = gens[gen::uniform_int(rng, 0, 3)];
        g = g * (gen::uniform_int(rng, 0, 1) ? h : h.inverse());
    }
    return g;
}

}  // namespace

TEST_CASE("build_index_set examples") {
    const auto s0 = build_index_set(5, 0);
    CHECK(s0.elements.size() == 8);
    CHECK(s0.elements == closed_form_set(5, 0));
    const auto s2 = build_index_set(5, 2);
    CHECK(s2.elements == closed_form_set(5, 2));
    CHECK(std::count(s2.elements.begin(), s2.elements.end(),
                     IndexPair(frac_q(1, 5), frac_q(3, 5))) == 1);
    CHECK(build_index_set(5, 7).elements == s2.elements);
    CHECK_THROWS_AS(build_index_set(9, 0), DomainError);
    CHECK_THROWS_AS(build_index_set(2, 0), DomainError);
}

TEST_CASE("index sets: size, closed form, negation closure for p <= 97") {
    for (long p : primes_up_to(97)) {
        if (p == 2) continue;
        for (long c = 0; c < p; ++c) {
            const auto set = build_index_set(p, c);
            REQUIRE(set.elements.size() == static_cast<std::size_t>(2 * (p - 1)));
            CHECK(set.elements == closed_form_set(p, c));
            const std::set<IndexPair> members(set.elements.begin(), set.elements.end());
            for (const auto& a : set.elements) CHECK(members.count(a.negated()) == 1);
        }
    }
}

TEST_CASE("b2_sum examples") {
    CHECK(b2_sum(build_index_set(5, 0)) == frac_q(8, 15));
    CHECK(b2_sum(build_index_set(5, 1)) == frac_q(-4, 15));
    CHECK(b2_sum(build_index_set(3, 0)) == frac_q(2, 9));
}

TEST_CASE("b2_sum closed forms and main-term slopes for 3 <= p <= 97") {
    for (long p : primes_up_to(97)) {
        if (p == 2) continue;
        for (long c = 0; c < p; ++c) {
            const mpq_class s = b2_sum(build_index_set(p, c));
            CHECK(s == b2_closed_form(p, c));
            const mpq_class slope = 6 * p * s;
            const long expect = c == 0 ? (p - 1) * (p - 1) : -2 * (p - 1);
            CHECK(slope == expect);
            CHECK(unit_main_slope(p, c) == static_cast<double>(expect));
        }
    }
}

TEST_CASE("unit_log_abs depends only on c mod p") {
    gen::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto tau = gen::point(rng, -0.5, 0.5, 0.8, 3.0);
        CHECK(unit_log_abs(5, 0, tau) == unit_log_abs(5, 5, tau));
        CHECK(unit_log_abs(7, 3, tau) == unit_log_abs(7, -4, tau));
    }
}

TEST_CASE("unit_log_abs matches 12p times the oracle product sum") {
    gen::Rng rng(8);
    for (long p : {3L, 5L, 7L}) {
        for (long c = 0; c <= (p - 1) / 2; ++c) {
            const auto tau = gen::point(rng, -0.5, 0.5, 0.6, 2.0);
            oracle::ld total = 0;
            for (const auto& a : closed_form_set(p, c)) {
                total += oracle::siegel_log_abs(a.a1().get_d(), a.a2().get_d(), tau.x(), tau.y());
            }
            const double want = static_cast<double>(12 * p * total);
            CHECK(std::abs(unit_log_abs(p, c, tau) - want) <= 1e-9 * (1 + std::abs(want)));
        }
    }
}

TEST_CASE("unit_log_abs examples at tau = 5i") {
    const auto cal = default_calibration();
    const HalfPlanePoint tau(0.0, 5.0);
    const double l = 10.0 * kPi;  // log|1/q|
    const double u0 = unit_log_abs(5, 0, tau);
    CHECK(std::abs(u0 - 16.0 * (-l)) <= 4 * kPi * kPi * 25 / l + cal.s1 * 5 * std::log(5.0));
    const double u1 = unit_log_abs(5, 1, tau);
    CHECK(u1 == doctest::Approx(80.0 * kPi).epsilon(0.2));
    CHECK(std::abs(u1 - 80.0 * kPi) <= 8 * kPi * kPi * 25 / l + cal.s2 * 5);
}

TEST_CASE("sum_log_one_minus_powers") {
    CHECK(sum_log_one_minus_powers(cplx(0.5, 0), 1) == doctest::Approx(std::log(0.5)));
    CHECK(sum_log_one_minus_powers(cplx(0, 0), 100) == 0.0);
    CHECK_THROWS_AS(sum_log_one_minus_powers(cplx(1.0, 0), 5), DomainError);
    CHECK_THROWS_AS(sum_log_one_minus_powers(cplx(0.3, 0), 0), DomainError);

    gen::Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const double r = gen::uniform_real(rng, 0.01, 0.95);
        const double th = gen::uniform_real(rng, 0, 1);
        const cplx z = std::polar(r, kTwoPi * th);
        oracle::cld zk = 1;
        oracle::ld want = 0;
        const oracle::cld zl(z.real(), z.imag());
        for (int k = 1; k <= 300; ++k) {
            zk *= zl;
            want += std::log(std::abs(1.0L - zk));
        }
        CHECK(std::abs(sum_log_one_minus_powers(z, 300) - static_cast<double>(want)) <= 1e-10);
    }
}

TEST_CASE("llogz envelope with the frozen constant, sampled") {
    const double c0 = default_calibration().c0;
    for (double r : {0.5, 0.7, 0.9, 0.95, 0.99}) {
        const double v = sum_log_one_minus_powers(cplx(r, 0), 10000);
        CHECK(std::abs(v) <= llogz_envelope(r) + c0);
    }
    gen::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const double r = gen::uniform_real(rng, 0.01, 0.99);
        const cplx z = std::polar(r, kTwoPi * gen::uniform_real(rng, 0, 1));
        for (std::int64_t n : {10, 100, 10000}) {
            CHECK(std::abs(sum_log_one_minus_powers(z, n)) <= llogz_envelope(r) + c0);
        }
    }
}

TEST_CASE("double_coset_class examples") {
    CHECK(double_coset_class(beta_matrix(3), 11) == 3);
    CHECK(double_coset_class(UnimodularMatrix::identity(), 7) == 0);
    CHECK(double_coset_class(beta_matrix(-3), 11) == 3);
    CHECK(double_coset_class(beta_matrix(8), 11) == 3);
}

TEST_CASE("double_coset_class round trip and translation invariance") {
    gen::Rng rng(1729);
    for (long p : {7L, 11L, 13L, 23L}) {
        for (int trial = 0; trial < 30; ++trial) {
            const long c = gen::uniform_int(rng, 0, (p - 1) / 2);
            auto beta = beta_matrix(c) * UnimodularMatrix::translation(gen::uniform_int(rng, -40, 40));
            if (gen::uniform_int(rng, 0, 1)) beta = beta.negated();
            CHECK(double_coset_class(beta, p) == c);
            const auto left = gamma_word(rng, p, 5);
            REQUIRE(in_split_cartan_normalizer(left, p));
            CHECK(double_coset_class(left * beta, p) == c);
        }
    }
}

TEST_CASE("double coset classes partition SL2 mod 7 representatives") {
    const long p = 7;
    const std::int64_t pp = p;
    std::vector<int> counts((p + 1) / 2, 0);
    for (std::int64_t a = 0; a < pp; ++a) {
        for (std::int64_t c = 0; c < pp; ++c) {
            if (a == 0 && c == 0) continue;
            // complete the column (a, c) to a matrix in SL2(Z)
            std::int64_t a0 = a == 0 ? pp : a, c0 = c == 0 ? pp : c;
            while (std::gcd(a0, c0) != 1) a0 += pp;
            std::int64_t b = 0, d = 0;
            for (std::int64_t t = -pp * pp; t <= pp * pp; ++t) {
                if ((1 + t * c0) % a0 == 0) {
                    b = t;
                    d = (1 + t * c0) / a0;
                    break;
                }
            }
            const auto m = UnimodularMatrix::make(a0, b, c0, d);
            const long cls = double_coset_class(m, p);
            CHECK(cls == oracle::coset_class_from_column(a, c, p));
            ++counts[cls];
        }
    }
    // class 0: ac = 0 gives 2(p-1) columns; each other class 2(p-1) as well
    for (int n : counts) CHECK(n == 2 * (p - 1));
}

TEST_CASE("in_split_cartan_normalizer") {
    CHECK(in_split_cartan_normalizer(UnimodularMatrix::identity(), 5));
    CHECK(in_split_cartan_normalizer(UnimodularMatrix::inversion(), 5));
    CHECK(in_split_cartan_normalizer(UnimodularMatrix::make(1, 5, 0, 1), 5));
    CHECK_FALSE(in_split_cartan_normalizer(UnimodularMatrix::translation(1), 5));
    CHECK_FALSE(in_split_cartan_normalizer(beta_matrix(2), 5));
}

TEST_CASE("prop pu examples at p = 7") {
    const auto cal = default_calibration();
    const HalfPlanePoint tau(0.0, 7.0);
    const auto r0 = evaluate_prop_pu(build_index_set(7, 0), tau, cal.s1, cal.s2);
    CHECK(r0.passes);
    CHECK(r0.residual == doctest::Approx(r0.log_abs_u - r0.main_term));
    CHECK(r0.envelope == doctest::Approx(4 * kPi * kPi * 49 / (kTwoPi * 7)));
    CHECK(r0.slack_normalizer == doctest::Approx(7 * std::log(7.0)));
    const auto r3 = evaluate_prop_pu(build_index_set(7, 3), tau, cal.s1, cal.s2);
    CHECK(r3.passes);
    CHECK(r3.envelope == doctest::Approx(8 * kPi * kPi * 49 / (kTwoPi * 7)));
    CHECK(r3.slack_normalizer == doctest::Approx(7.0));

    double prev = 1e300;
    for (double y : {10.0, 100.0, 1000.0}) {
        const auto r = evaluate_prop_pu(build_index_set(7, 0), HalfPlanePoint(0, y), cal.s1, cal.s2);
        const double ratio = std::abs(r.residual) / (kTwoPi * y);
        CHECK(ratio < prev);
        prev = ratio;
    }
    // The constant term: 12p sum_k log|1 - zeta_p^k| = 12p log p.
    const auto far = evaluate_prop_pu(build_index_set(7, 0), HalfPlanePoint(0.1, 1000.0), cal.s1, cal.s2);
    CHECK(far.residual == doctest::Approx(84.0 * std::log(7.0)).epsilon(1e-9));
    CHECK_THROWS_AS(evaluate_prop_pu(build_index_set(7, 0), HalfPlanePoint(0, 0.2), cal.s1, cal.s2),
                    DomainError);
}

TEST_CASE("prop pu on the default grid, small primes") {
    const auto cal = default_calibration();
    for (long p : {5L, 7L, 11L}) {
        for (long c : {0L, 1L, 2L}) {
            for (const auto& r : verify_prop_pu(p, c, pu_default_grid(p), cal.s1, cal.s2)) {
                CHECK(r.passes);
            }
        }
    }
}

TEST_CASE("prop pana examples at p = 11") {
    const auto cal = default_calibration();
    const auto deep = evaluate_prop_pana(11, HalfPlanePoint(0.0, 40.0), 10.0, cal.pana_slack);
    REQUIRE(deep.size() == 6);
    for (const auto& v : deep) {
        if (v.c != 0) CHECK(v.unit_branch);
        CHECK(v.holds());
    }
    const auto at_i = evaluate_prop_pana(11, HalfPlanePoint(0.0, 1.0), 10.0, cal.pana_slack);
    for (const auto& v : at_i) {
        CHECK(v.log_abs_j == doctest::Approx(std::log(1728.0)));
        CHECK(v.cusp_branch);
    }
    CHECK_THROWS_AS(evaluate_prop_pana(11, HalfPlanePoint(0.0, 0.5), 10.0, cal.pana_slack),
                    DomainError);
}
