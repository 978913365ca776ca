#pragma once

// Frobenius traces of elliptic curves over Q and the trace test for mod-p
// Galois images inside the normalizer of a split Cartan subgroup.
//
// The test only certifies non-containment: an element of the normalizer has
// trace 0 (anti-diagonal coset) or a characteristic polynomial that splits
// over F_p (Cartan), so a Frobenius with nonzero trace and nonsquare
// discriminant mod p is a witness that the image is not contained.

#include <array>
#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace runge {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
class CurveModel {
public:
    /// Throws DomainError if the discriminant vanishes.
    CurveModel(mpz_class a1, mpz_class a2, mpz_class a3, mpz_class a4, mpz_class a6);

    /// Model with the given j-invariant: y^2 = x^3 + 1 for j = 0,
    /// y^2 = x^3 + x for j = 1728, otherwise A = 3j(1728 - j), B = 2j(1728 - j)^2
    /// scaled by the denominator of j to integral coefficients.
    static CurveModel from_j(const mpq_class& j);

    const std::array<mpz_class, 5>& coefficients() const { return a_; }
    const mpz_class& discriminant() const { return disc_; }
    const mpz_class& c4() const { return c4_; }
    mpq_class j_invariant() const;

    std::string to_string() const;

private:
    std::array<mpz_class, 5> a_;  // a1, a2, a3, a4, a6
    mpz_class c4_;
    mpz_class disc_;
};

struct TraceRecord {
    std::int64_t ell = 0;
    std::int64_t a_ell = 0;
};

bool has_good_reduction(const CurveModel& e, std::int64_t ell);

/// a_ell = ell + 1 - #E(F_ell), by enumerating x in F_ell. Throws
/// BadReduction if ell divides the model's discriminant, DomainError if ell
/// is not prime.
std::int64_t trace_of_frobenius(const CurveModel& e, std::int64_t ell);

/// Traces at every good prime ell <= ell_max, computed once.
class TraceTable {
public:
    TraceTable(const CurveModel& e, std::int64_t ell_max);

    std::int64_t ell_max() const { return ell_max_; }
    const std::vector<TraceRecord>& good() const { return good_; }
    const std::vector<std::int64_t>& bad() const { return bad_; }

private:
    std::int64_t ell_max_;
    std::vector<TraceRecord> good_;
    std::vector<std::int64_t> bad_;
};

/// a_ell = 0 mod p, or a_ell^2 - 4 ell is a square mod p (0 allowed).
/// Throws DomainError if ell == p or p is not an odd prime.
bool split_cartan_compatible(std::int64_t a_ell, std::int64_t ell, std::int64_t p);

enum class ImageStatus { RuledOut, PossiblyContained };

std::string to_string(ImageStatus status);

struct ImageVerdict {
    std::int64_t p = 0;
    ImageStatus status = ImageStatus::PossiblyContained;
    std::optional<std::int64_t> witness_ell;
    std::int64_t traces_used = 0;
    std::int64_t bad_primes_skipped = 0;
};

/// Scans good primes ell <= ell_max, ell != p, in increasing order; the first
/// incompatible trace rules the image out.
ImageVerdict classify_point_image(const CurveModel& e, std::int64_t p, std::int64_t ell_max);
ImageVerdict classify_point_image(const TraceTable& table, std::int64_t p, std::int64_t ell_max);

struct CmPoint {
    std::int64_t discriminant;
    mpz_class j;
};

/// The thirteen class-number-one CM j-invariants with their discriminants.
const std::vector<CmPoint>& cm_j_invariants();

/// Odd primes p <= p_max with p not dividing d and (d | p) = +1.
std::vector<std::int64_t> cm_split_primes(std::int64_t discriminant, std::int64_t p_max);

/// Inert primes ell <= ell_max for the CM order of discriminant d (ell odd,
/// (d | ell) = -1).
std::vector<std::int64_t> cm_inert_primes(std::int64_t discriminant, std::int64_t ell_max);

struct CmCheck {
    std::int64_t discriminant = 0;
    std::int64_t inert_primes_checked = 0;
    bool supersingular_pattern = false;  // a_ell == 0 at every checked inert prime
    bool j_matches = false;              // model j equals the tabulated j
};

/// Builds a model for each tabulated j and checks a_ell = 0 at good inert
/// primes 5 <= ell <= ell_max.
std::vector<CmCheck> verify_cm_table(std::int64_t ell_max = 200);

}  // namespace runge
