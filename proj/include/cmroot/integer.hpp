#pragma once

#include <cstdint>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "cmroot/error.hpp"

namespace cmroot {

using Integer = mpz_class;

// Non-negative remainder of a mod m (m > 0).
inline Integer imod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline unsigned long imod_ui(const Integer& a, unsigned long m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Integer ipowmod(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool fits_slong(const Integer& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline long to_long(const Integer& a) {
    if (!fits_slong(a)) fail(Errc::effort_bound, "integer exceeds machine range: " + a.get_str());
    return mpz_get_si(a.get_mpz_t());
}

inline bool is_probable_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t invmod64(uint64_t a, uint64_t m) {
    // extended Euclid; a coprime to m
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) fail(Errc::not_coprime, "invmod64: arguments not coprime");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

// Rational factorization used by gaussint::factor_primary.  Trial division by
// the primes below trial_limit, then Brent's rho with a deterministic seed.
struct FactorEffort {
    uint32_t trial_limit = 1u << 20;
    uint64_t rho_iteration_cap = 1ull << 26;
    uint64_t seed = 1;
};

std::vector<std::pair<Integer, int>> factor_integer(Integer n, const FactorEffort& effort = {});

} // namespace cmroot
