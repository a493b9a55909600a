#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmroot/integer.hpp"

namespace cmroot {

// Exact element a + bi of Z[i] with arbitrary-precision coordinates.
struct GaussInt {
    Integer re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}
    GaussInt(Integer r) : re(std::move(r)), im(0) {}
    GaussInt(Integer r, Integer i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_unit() const { return norm() == 1; }

    Integer norm() const { return re * re + im * im; }
    GaussInt conj() const { return {re, -im}; }
    GaussInt times_i() const { return {-im, re}; }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
    GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }
    GaussInt& operator*=(const GaussInt& o) { *this = *this * o; return *this; }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussInt& o) const { return !(*this == o); }
};

inline GaussInt gi_i() { return {0, 1}; }
inline GaussInt gi_one_plus_i() { return {1, 1}; }

// i^k for k taken mod 4.
GaussInt unit_from_exponent(long k);
// 0..3 such that u = i^k; error if u is not a unit.
int unit_exponent(const GaussInt& u);

// Canonical ordering (norm, re, im); used for factor keys and reports.
bool norm_lex_less(const GaussInt& a, const GaussInt& b);
// Strict order by principal argument in [0, 2pi); exact integer arithmetic.
bool angle_less(const GaussInt& a, const GaussInt& b);

GaussInt pow(const GaussInt& base, unsigned long e);

// Division with remainder: q = nearest Gaussian integer to a/b, both
// coordinates rounded half toward -inf; then norm(r) <= norm(b)/2.
struct DivMod { GaussInt quot, rem; };
DivMod divmod(const GaussInt& a, const GaussInt& b);
GaussInt mod(const GaussInt& a, const GaussInt& b);
bool divides(const GaussInt& b, const GaussInt& a);
GaussInt exact_div(const GaussInt& a, const GaussInt& b); // asserts divisibility

GaussInt gcd(GaussInt a, GaussInt b);
// g = x*a + y*b with g a gcd (some associate).
struct ExtGcd { GaussInt g, x, y; };
ExtGcd ext_gcd(const GaussInt& a, const GaussInt& b);
// Inverse of a mod m; error not_coprime when gcd(a, m) is not a unit.
GaussInt mod_inverse(const GaussInt& a, const GaussInt& m);

bool is_odd(const GaussInt& a);            // (1+i) does not divide a
long valuation_one_plus_i(GaussInt a);     // a != 0
GaussInt div_one_plus_i(const GaussInt& a); // exact division by (1+i)

// alpha == 1 mod 2(1+i); equivalently (re, im) == (1,0) or (3,2) mod 4.
bool is_primary(const GaussInt& a);
// Residue pattern test used by the reciprocity sign: alpha == 3+2i mod 4.
bool is_three_plus_two_i_mod4(const GaussInt& a);

// Unique unit u with u*alpha primary.  Errors: zero_input, even_input.
struct PrimaryAssociate { GaussInt unit, primary; };
PrimaryAssociate primary_associate(const GaussInt& alpha);

// d = i^n_u (1+i)^n_2 * prod pi^e over primary odd primes, keys sorted by
// (norm, re, im).
struct PrimaryFactorization {
    int n_u = 0;
    long n_2 = 0;
    std::vector<std::pair<GaussInt, long>> odd;

    GaussInt reassemble() const;
    long exponent_of(const GaussInt& primary_pi) const;
};
PrimaryFactorization factor_primary(const GaussInt& d, const FactorEffort& effort = {});

enum class PlaceKind { even, degree_one, degree_two };

struct PrimeClass {
    PlaceKind kind = PlaceKind::even;
    GaussInt generator;    // primary generator; 1+i for the even place
    Integer residue_char;  // p (degree one), q (degree two), 2 (even)

    Integer place_norm() const {
        return kind == PlaceKind::degree_two ? residue_char * residue_char
                                             : residue_char;
    }
    bool operator==(const PrimeClass& o) const { return generator == o.generator; }
};

// Errors: not_prime.
PrimeClass classify_prime(const GaussInt& pi);
bool is_gaussian_prime(const GaussInt& pi);

// Valuation of a at the place of pi (pi a Gaussian prime, a != 0).
long valuation(GaussInt a, const GaussInt& pi);

// First k digits of the (1+i)-adic expansion of d, each in {0,1}:
// d == sum d_j (1+i)^j  mod (1+i)^k.
std::vector<int> expand_base_1pi(GaussInt d, int k);

// "a+bi" / "a-bi" with decimal coordinates.
std::string to_string(const GaussInt& g);
// Accepts "a+bi", "a-bi", "bi", "a", "i", "-i", ...; whitespace-insensitive.
GaussInt parse_gaussint(std::string_view s);

} // namespace cmroot
