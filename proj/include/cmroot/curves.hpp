#pragma once

#include "cmroot/gaussint.hpp"

namespace cmroot {

enum class Kodaira { good, II, II_star, III, III_star, I0_star, I2_star, I4_star };
const char* kodaira_str(Kodaira k);

struct EvenReduction {
    Kodaira type = Kodaira::good;
    int f2 = 0;    // conductor exponent at (1+i)
    int row = -1;  // matched table row, 0-based
    bool good() const { return type == Kodaira::good; }
};

// E_d : y^2 = x^3 - dx with canonical fourth-power-free d.
struct CurveClass {
    GaussInt d;
    PrimaryFactorization fact;
    EvenReduction even_reduction;
    std::vector<std::pair<GaussInt, int>> odd_bad; // primary prime -> v(d) in {1,2,3}

    static CurveClass from(const GaussInt& d, const FactorEffort& effort = {});
    bool operator==(const CurveClass& o) const { return d == o.d; }
    bool operator!=(const CurveClass& o) const { return d != o.d; }
};

// d = x^4 * d' with d' fourth-power-free (factor exponents reduced mod 4,
// unit part kept in {0..3}).  x is the associate in the first quadrant
// (re > 0, im >= 0).
struct Normalized { GaussInt d_prime, x; };
Normalized normalize_d(const GaussInt& d, const FactorEffort& effort = {});

CurveClass twist(const CurveClass& c, const GaussInt& x, const FactorEffort& effort = {});

// Reduction type and even conductor exponent from the first six digits of the
// (1+i)-adic expansion.  Errors: table_miss (unreachable for fourth-power-free d).
EvenReduction reduction_at_two(const GaussInt& d_fourth_power_free);
EvenReduction decode_reduction_row(const std::vector<int>& digits);
constexpr int reduction_table_rows = 12;

// Odd part of the conductor: exponent 2 at each odd prime dividing d.
std::vector<std::pair<GaussInt, int>> odd_conductor(const CurveClass& c);

// Order of the local epsilon type at an odd place: 4 iff v(d) in {1,3},
// 2 iff v(d) = 2, 1 iff v(d) = 0.  At degree-two places the rule is also
// validated against the directly computed character order.
int epsilon_order(const CurveClass& c, const PrimeClass& v);

} // namespace cmroot
