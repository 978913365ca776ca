#include "runge/galois.hpp"

#include "runge/errors.hpp"
#include "runge/primes.hpp"

#include <sstream>

namespace runge {

namespace {

struct Invariants {
    mpz_class c4;
    mpz_class disc;
};

Invariants invariants(const std::array<mpz_class, 5>& a) {
    const mpz_class& a1 = a[0];
    const mpz_class& a2 = a[1];
    const mpz_class& a3 = a[2];
    const mpz_class& a4 = a[3];
    const mpz_class& a6 = a[4];
    const mpz_class b2 = a1 * a1 + 4 * a2;
    const mpz_class b4 = 2 * a4 + a1 * a3;
    const mpz_class b6 = a3 * a3 + 4 * a6;
    const mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    Invariants out;
    out.c4 = b2 * b2 - 24 * b4;
    out.disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    return out;
}

std::int64_t reduce_mod(const mpz_class& v, std::int64_t m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mpz_class(static_cast<long>(m)).get_mpz_t());
    return r.get_si();
}

void require_odd_prime(std::int64_t p, const char* what) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
        std::ostringstream msg;
        msg << what << " " << p << " is not an odd prime";
        throw DomainError(msg.str());
    }
}

}  // namespace

CurveModel::CurveModel(mpz_class a1, mpz_class a2, mpz_class a3, mpz_class a4, mpz_class a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    const auto inv = invariants(a_);
    c4_ = inv.c4;
    disc_ = inv.disc;
    if (disc_ == 0) throw DomainError("singular curve: discriminant is zero");
}

CurveModel CurveModel::from_j(const mpq_class& j_in) {
    mpq_class j = j_in;
    j.canonicalize();
    if (j == 0) return CurveModel(0, 0, 0, 0, 1);
    if (j == 1728) return CurveModel(0, 0, 0, 1, 0);
    const mpz_class n = j.get_num();
    const mpz_class d = j.get_den();
    const mpz_class m = 1728 * d - n;  // (1728 - j) d
    return CurveModel(0, 0, 0, 3 * n * m * d * d, 2 * n * m * m * d * d * d);
}

mpq_class CurveModel::j_invariant() const {
    mpq_class j(c4_ * c4_ * c4_, disc_);
    j.canonicalize();
    return j;
}

std::string CurveModel::to_string() const {
    std::ostringstream os;
    os << '[' << a_[0] << ',' << a_[1] << ',' << a_[2] << ',' << a_[3] << ',' << a_[4] << ']';
    return os.str();
}

bool has_good_reduction(const CurveModel& e, std::int64_t ell) {
    return reduce_mod(e.discriminant(), ell) != 0;
}

std::int64_t trace_of_frobenius(const CurveModel& e, std::int64_t ell) {
    if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) {
        throw DomainError("trace_of_frobenius needs a prime ell");
    }
    if (!has_good_reduction(e, ell)) {
        std::ostringstream msg;
        msg << "model " << e.to_string() << " has bad reduction at " << ell;
        throw BadReduction(msg.str());
    }
    std::array<std::int64_t, 5> a{};
    for (std::size_t i = 0; i < 5; ++i) a[i] = reduce_mod(e.coefficients()[i], ell);
    const auto [a1, a2, a3, a4, a6] = a;

    std::int64_t points = 1;  // point at infinity
    if (ell == 2) {
        for (std::int64_t x = 0; x < 2; ++x) {
            for (std::int64_t y = 0; y < 2; ++y) {
                const std::int64_t lhs = y * y + a1 * x * y + a3 * y;
                const std::int64_t rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if ((lhs - rhs) % 2 == 0) ++points;
            }
        }
        return ell + 1 - points;
    }
    // Odd ell: y^2 + (a1 x + a3) y = f(x) has 1 + chi(D) solutions with
    // D = (a1 x + a3)^2 + 4 f(x).
    std::vector<std::int8_t> chi(static_cast<std::size_t>(ell), -1);
    chi[0] = 0;
    for (std::int64_t y = 1; y < ell; ++y) chi[static_cast<std::size_t>(y * y % ell)] = 1;
    for (std::int64_t x = 0; x < ell; ++x) {
        const std::int64_t x2 = x * x % ell;
        const std::int64_t f = (x2 * x + a2 * x2 + a4 * x + a6) % ell;
        const std::int64_t lin = (a1 * x + a3) % ell;
        const std::int64_t disc = (lin * lin + 4 * f) % ell;
        points += 1 + chi[static_cast<std::size_t>(disc)];
    }
    return ell + 1 - points;
}

TraceTable::TraceTable(const CurveModel& e, std::int64_t ell_max) : ell_max_(ell_max) {
    if (ell_max < 2) return;
    for (auto ell : primes_up_to(static_cast<std::uint32_t>(ell_max))) {
        const auto l = static_cast<std::int64_t>(ell);
        if (has_good_reduction(e, l)) {
            good_.push_back({l, trace_of_frobenius(e, l)});
        } else {
            bad_.push_back(l);
        }
    }
}

bool split_cartan_compatible(std::int64_t a_ell, std::int64_t ell, std::int64_t p) {
    require_odd_prime(p, "level");
    if (ell == p) throw DomainError("trace test is undecidable at ell = p");
    if (mod_floor(a_ell, p) == 0) return true;
    return legendre(a_ell * a_ell - 4 * ell, p) >= 0;
}

std::string to_string(ImageStatus status) {
    return status == ImageStatus::RuledOut ? "ruled-out" : "possibly-contained";
}

ImageVerdict classify_point_image(const TraceTable& table, std::int64_t p, std::int64_t ell_max) {
    require_odd_prime(p, "level");
    if (ell_max > table.ell_max()) throw DomainError("trace table does not reach ell_max");
    ImageVerdict v;
    v.p = p;
    for (auto ell : table.bad()) {
        if (ell <= ell_max && ell != p) ++v.bad_primes_skipped;
    }
    for (const auto& rec : table.good()) {
        if (rec.ell > ell_max) break;
        if (rec.ell == p) continue;
        ++v.traces_used;
        if (!split_cartan_compatible(rec.a_ell, rec.ell, p)) {
            v.status = ImageStatus::RuledOut;
            v.witness_ell = rec.ell;
            return v;
        }
    }
    return v;
}

ImageVerdict classify_point_image(const CurveModel& e, std::int64_t p, std::int64_t ell_max) {
    require_odd_prime(p, "level");
    if (ell_max < 2) {
        ImageVerdict v;
        v.p = p;
        return v;
    }
    // Counting lazily keeps the common case (an early witness) cheap.
    ImageVerdict v;
    v.p = p;
    for (auto ell32 : primes_up_to(static_cast<std::uint32_t>(ell_max))) {
        const auto ell = static_cast<std::int64_t>(ell32);
        if (ell == p) continue;
        if (!has_good_reduction(e, ell)) {
            ++v.bad_primes_skipped;
            continue;
        }
        ++v.traces_used;
        if (!split_cartan_compatible(trace_of_frobenius(e, ell), ell, p)) {
            v.status = ImageStatus::RuledOut;
            v.witness_ell = ell;
            return v;
        }
    }
    return v;
}

const std::vector<CmPoint>& cm_j_invariants() {
    static const std::vector<CmPoint> table{
        {-3, mpz_class("0")},
        {-4, mpz_class("1728")},
        {-7, mpz_class("-3375")},
        {-8, mpz_class("8000")},
        {-12, mpz_class("54000")},
        {-16, mpz_class("287496")},
        {-11, mpz_class("-32768")},
        {-28, mpz_class("16581375")},
        {-19, mpz_class("-884736")},
        {-27, mpz_class("-12288000")},
        {-43, mpz_class("-884736000")},
        {-67, mpz_class("-147197952000")},
        {-163, mpz_class("-262537412640768000")},
    };
    return table;
}

std::vector<std::int64_t> cm_split_primes(std::int64_t d, std::int64_t p_max) {
    if (d >= 0) throw DomainError("CM discriminant must be negative");
    std::vector<std::int64_t> out;
    if (p_max < 3) return out;
    for (auto p : primes_up_to(static_cast<std::uint32_t>(p_max))) {
        if (p == 2) continue;
        if (legendre(d, p) == 1) out.push_back(p);
    }
    return out;
}

std::vector<std::int64_t> cm_inert_primes(std::int64_t d, std::int64_t ell_max) {
    if (d >= 0) throw DomainError("CM discriminant must be negative");
    std::vector<std::int64_t> out;
    if (ell_max < 3) return out;
    for (auto ell : primes_up_to(static_cast<std::uint32_t>(ell_max))) {
        if (ell == 2) continue;
        if (legendre(d, ell) == -1) out.push_back(ell);
    }
    return out;
}

std::vector<CmCheck> verify_cm_table(std::int64_t ell_max) {
    std::vector<CmCheck> out;
    for (const auto& cm : cm_j_invariants()) {
        CmCheck check;
        check.discriminant = cm.discriminant;
        const CurveModel e = CurveModel::from_j(mpq_class(cm.j));
        check.j_matches = e.j_invariant() == mpq_class(cm.j);
        bool all_zero = true;
        for (auto ell : cm_inert_primes(cm.discriminant, ell_max)) {
            if (ell < 5 || !has_good_reduction(e, ell)) continue;
            ++check.inert_primes_checked;
            if (trace_of_frobenius(e, ell) != 0) all_zero = false;
        }
        check.supersingular_pattern = all_zero && check.inert_primes_checked > 0;
        out.push_back(check);
    }
    return out;
}

}  // namespace runge
