#include "cmroot/integer.hpp"
#include "cmroot/primes.hpp"

#include <algorithm>
#include <map>

namespace cmroot {

namespace {

// Brent's cycle variant of Pollard rho.  Deterministic: the polynomial
// increment walks 1, 3, 5, ... (xor'd with the caller seed) until the cap.
Integer rho_brent(const Integer& n, const FactorEffort& effort) {
    uint64_t spent = 0;
    for (uint64_t c = 1;; c += 2) {
        Integer add = Integer(static_cast<unsigned long>(c ^ effort.seed) | 1);
        Integer y = 2, g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = imod(y * y + add, n);
            for (unsigned long k = 0; k < r && g == 1; k += m) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = imod(y * y + add, n);
                    q = imod(q * (x - y), n);
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                spent += lim;
                if (spent > effort.rho_iteration_cap)
                    fail(Errc::factorization_limit,
                         "rho iteration cap exceeded factoring " + n.get_str());
            }
            r *= 2;
        }
        if (g == n) { // backtrack
            do {
                ys = imod(ys * ys + add, n);
                mpz_gcd(g.get_mpz_t(), Integer(x - ys).get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const Integer& n, std::map<Integer, int>& out, const FactorEffort& effort) {
    if (n == 1) return;
    if (is_probable_prime(n)) { out[n] += 1; return; }
    Integer d = rho_brent(n, effort);
    factor_rec(d, out, effort);
    factor_rec(n / d, out, effort);
}

} // namespace

std::vector<std::pair<Integer, int>> factor_integer(Integer n, const FactorEffort& effort) {
    if (n < 0) n = -n;
    if (n == 0) fail(Errc::zero_input, "factor_integer(0)");
    std::map<Integer, int> acc;
    const auto& primes = primes_below(effort.trial_limit);
    for (uint32_t p : primes) {
        if (Integer(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            acc[Integer(p)] += 1;
        }
        if (n == 1) break;
    }
    if (n > 1) {
        if (Integer(effort.trial_limit) * effort.trial_limit > n || is_probable_prime(n))
            acc[n] += 1;
        else
            factor_rec(n, acc, effort);
    }
    return {acc.begin(), acc.end()};
}

} // namespace cmroot
