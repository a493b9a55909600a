#pragma once

#include "cmroot/gaussint.hpp"

namespace cmroot {

// Element i^k of the fourth roots of unity, carried as the exponent so that
// symbol arithmetic stays exact.
struct Mu4 {
    int k = 0;

    Mu4() = default;
    explicit Mu4(long e) : k(static_cast<int>(((e % 4) + 4) % 4)) {}

    Mu4 operator*(Mu4 o) const { return Mu4(k + o.k); }
    Mu4& operator*=(Mu4 o) { k = (k + o.k) & 3; return *this; }
    Mu4 pow(long e) const { return Mu4(static_cast<long>(k) * e); }
    Mu4 conj() const { return Mu4(-k); }
    Mu4 inv() const { return conj(); }
    bool operator==(Mu4 o) const { return k == o.k; }
    bool operator!=(Mu4 o) const { return k != o.k; }
    bool is_one() const { return k == 0; }
    bool is_real() const { return k == 0 || k == 2; }

    GaussInt to_gauss() const { return unit_from_exponent(k); }
    const char* str() const {
        static const char* names[4] = {"1", "i", "-1", "-i"};
        return names[k];
    }
};

// Quartic residue character (alpha/pi)_4: the unique i^k with
// alpha^((Npi-1)/4) == i^k mod pi, computed by modular exponentiation.
// Errors: even_modulus, not_coprime; not_prime when no root of unity matches.
Mu4 quartic_symbol(const GaussInt& alpha, const GaussInt& pi);

// Jacobi-style extension over the primary odd prime factorization of beta.
// Errors: even_modulus, not_coprime, zero_input; factorization_limit.
Mu4 quartic_symbol_composite(const GaussInt& alpha, const GaussInt& beta,
                             const FactorEffort& effort = {});

// Same value as quartic_symbol_composite, by a Euclidean chain: reduce mod
// beta, strip units and (1+i) with the supplement formulas, flip with the
// reciprocity sign, repeat.  Falls back to the exponentiation route if a
// chain precondition is violated.
Mu4 quartic_symbol_fast(const GaussInt& alpha, const GaussInt& beta);

// Supplements for primary beta: (i/beta) = i^((1-a)/2),
// ((1+i)/beta) = i^((a-1-b-b^2)/4).
Mu4 supplement_i(const GaussInt& beta);
Mu4 supplement_one_plus_i(const GaussInt& beta);

// Reciprocity sign between coprime primary non-units: -1 exactly when both
// are == 3+2i mod 4.
inline int reciprocity_sign(const GaussInt& a, const GaussInt& b) {
    return (is_three_plus_two_i_mod4(a) && is_three_plus_two_i_mod4(b)) ? -1 : 1;
}

// Standard Jacobi symbol; n odd >= 1.  Errors: even_modulus.
int jacobi_symbol(const Integer& a, const Integer& n);

} // namespace cmroot
