#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cmroot {

// Shared sieve of the primes below 2^20, built once.
const std::vector<uint32_t>& primes_below_million();
// Primes below limit; falls back to the shared sieve when limit fits.
std::vector<uint32_t> primes_below(uint32_t limit);

// Segmented sieve of Eratosthenes; calls fn(p) for each prime p <= limit in
// increasing order.
void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn);

// Rational primes p <= limit with p % modulus == residue, ascending.
std::vector<uint64_t> primes_in_progression(uint64_t limit, uint64_t modulus, uint64_t residue);

} // namespace cmroot
