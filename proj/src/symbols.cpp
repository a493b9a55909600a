#include "cmroot/symbols.hpp"

namespace cmroot {

namespace {

// Match a residue r mod pi against the four units; not_prime if none fits.
Mu4 match_unit(const GaussInt& r, const GaussInt& pi) {
    for (int k = 0; k < 4; ++k)
        if (divides(pi, r - unit_from_exponent(k))) return Mu4(k);
    fail(Errc::not_prime, "no quartic root of unity matches mod " + to_string(pi));
}

GaussInt powmod_gauss(GaussInt base, Integer e, const GaussInt& pi) {
    GaussInt acc(1);
    base = mod(base, pi);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = mod(acc * base, pi);
        base = mod(base * base, pi);
        e >>= 1;
    }
    return acc;
}

// Degree-one fast path: map Z[i]/pi onto F_p via i -> u with pi | (i - u).
struct SplitEmbedding {
    uint64_t p, u;
};

SplitEmbedding split_embedding(const GaussInt& pi, uint64_t p) {
    uint64_t a = imod_ui(pi.re, p), b = imod_ui(pi.im, p);
    uint64_t u = mulmod64(p - a, invmod64(b, p), p); // u = -a/b, so a + b*u == 0
    return {p, u};
}

uint64_t embed_mod_p(const GaussInt& x, const SplitEmbedding& em) {
    uint64_t r = imod_ui(x.re, em.p), i = imod_ui(x.im, em.p);
    return (r + mulmod64(i, em.u, em.p)) % em.p;
}

Mu4 quartic_symbol_deg1_fast(const GaussInt& alpha, const GaussInt& pi, uint64_t p) {
    SplitEmbedding em = split_embedding(pi, p);
    uint64_t m = embed_mod_p(alpha, em);
    if (m == 0) fail(Errc::not_coprime, "quartic symbol with pi | alpha");
    uint64_t r = powmod64(m, (p - 1) / 4, p);
    if (r == 1) return Mu4(0);
    if (r == em.u) return Mu4(1);
    if (r == p - 1) return Mu4(2);
    if (r == p - em.u) return Mu4(3);
    fail(Errc::not_prime, "exponentiation left the roots of unity mod " + to_string(pi));
}

Mu4 quartic_symbol_deg2_fast(const GaussInt& alpha, uint64_t q) {
    uint64_t x0 = imod_ui(alpha.re, q), x1 = imod_ui(alpha.im, q);
    if (x0 == 0 && x1 == 0) fail(Errc::not_coprime, "quartic symbol with q | alpha");
    uint64_t e = (q * q - 1) / 4;
    uint64_t r0 = 1, r1 = 0; // accumulator in F_q[i]
    while (e) {
        if (e & 1) {
            uint64_t t0 = (mulmod64(r0, x0, q) + q - mulmod64(r1, x1, q)) % q;
            uint64_t t1 = (mulmod64(r0, x1, q) + mulmod64(r1, x0, q)) % q;
            r0 = t0; r1 = t1;
        }
        uint64_t s0 = (mulmod64(x0, x0, q) + q - mulmod64(x1, x1, q)) % q;
        uint64_t s1 = (2 * mulmod64(x0, x1, q)) % q;
        x0 = s0; x1 = s1;
        e >>= 1;
    }
    if (r0 == 1 && r1 == 0) return Mu4(0);
    if (r0 == 0 && r1 == 1) return Mu4(1);
    if (r0 == q - 1 && r1 == 0) return Mu4(2);
    if (r0 == 0 && r1 == q - 1) return Mu4(3);
    fail(Errc::not_prime, "exponentiation left the roots of unity mod q");
}

} // namespace

Mu4 quartic_symbol(const GaussInt& alpha, const GaussInt& pi) {
    Integer n = pi.norm();
    if (imod_ui(n, 2) == 0) fail(Errc::even_modulus, "quartic symbol mod even " + to_string(pi));
    if (n == 1) fail(Errc::not_prime, "quartic symbol mod a unit");

    if (fits_slong(n) && n < Integer(int64_t(1) << 62)) {
        uint64_t nl = static_cast<uint64_t>(mpz_get_ui(n.get_mpz_t()));
        if (pi.re == 0 || pi.im == 0) {
            Integer q = pi.re == 0 ? abs(pi.im) : abs(pi.re);
            return quartic_symbol_deg2_fast(alpha, static_cast<uint64_t>(q.get_ui()));
        }
        return quartic_symbol_deg1_fast(alpha, pi, nl);
    }

    GaussInt r = mod(alpha, pi);
    if (divides(pi, r)) fail(Errc::not_coprime, "quartic symbol with pi | alpha");
    GaussInt val = powmod_gauss(r, (n - 1) / 4, pi);
    return match_unit(val, pi);
}

Mu4 quartic_symbol_composite(const GaussInt& alpha, const GaussInt& beta,
                             const FactorEffort& effort) {
    if (beta.is_zero()) fail(Errc::zero_input, "composite symbol with beta = 0");
    if (!is_odd(beta)) fail(Errc::even_modulus, "composite symbol with even beta");
    if (!gcd(alpha, beta).is_unit())
        fail(Errc::not_coprime, "composite symbol with gcd(alpha, beta) != 1");
    Mu4 acc;
    for (const auto& [pi, e] : factor_primary(beta, effort).odd)
        acc *= quartic_symbol(alpha, pi).pow(e);
    return acc;
}

Mu4 supplement_i(const GaussInt& beta) {
    Integer e = (1 - beta.re) / 2;
    return Mu4(static_cast<long>(imod_ui(e, 4)));
}

Mu4 supplement_one_plus_i(const GaussInt& beta) {
    Integer e = (beta.re - 1 - beta.im - beta.im * beta.im) / 4;
    return Mu4(static_cast<long>(imod_ui(e, 4)));
}

namespace {

Mu4 fast_chain(GaussInt a, GaussInt b) {
    // invariant: answer = acc * (a/b)
    Mu4 acc;
    for (;;) {
        a = mod(a, b);
        if (a.is_zero()) fail(Errc::not_coprime, "fast symbol with gcd != 1");
        long t = 0;
        while (!is_odd(a)) {
            a = div_one_plus_i(a);
            ++t;
        }
        PrimaryAssociate pa = primary_associate(a);
        int s = unit_exponent(pa.unit); // a = i^{-s} * primary
        acc *= supplement_one_plus_i(b).pow(t);
        acc *= supplement_i(b).pow(4 - s);
        if (pa.primary.is_one()) return acc;
        if (b.is_unit()) fail(Errc::reciprocity_precondition, "unit denominator mid-chain");
        if (reciprocity_sign(pa.primary, b) < 0) acc *= Mu4(2);
        a = b;
        b = pa.primary;
    }
}

} // namespace

Mu4 quartic_symbol_fast(const GaussInt& alpha, const GaussInt& beta) {
    if (alpha.is_zero()) fail(Errc::not_coprime, "fast symbol with alpha = 0");
    if (beta.is_zero()) fail(Errc::zero_input, "fast symbol with beta = 0");
    if (!is_odd(beta)) fail(Errc::even_modulus, "fast symbol with even beta");
    if (!is_primary(beta) && !beta.is_one())
        fail(Errc::reciprocity_precondition, "fast symbol needs primary beta");
    if (beta.is_one()) return Mu4(0);
    try {
        return fast_chain(alpha, beta);
    } catch (const Error& e) {
        if (e.code() == Errc::reciprocity_precondition)
            return quartic_symbol_composite(alpha, beta);
        throw;
    }
}

int jacobi_symbol(const Integer& a, const Integer& n) {
    if (n < 1 || imod_ui(n, 2) == 0) fail(Errc::even_modulus, "jacobi symbol with even modulus");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

} // namespace cmroot
