#pragma once

#include <cstdint>
#include <vector>

namespace runge {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Largest prime <= n, or 0 if there is none.
std::uint64_t prev_prime(std::uint64_t n);

/// All primes <= limit (sieve).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Legendre symbol (a | p) for odd prime p: -1, 0 or 1.
int legendre(std::int64_t a, std::int64_t p);

/// Nonnegative a mod m.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

/// Inverse of a mod m; throws DomainError when gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

}  // namespace runge
