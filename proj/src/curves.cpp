#include "cmroot/curves.hpp"
#include "cmroot/symbols.hpp"

#include <array>

namespace cmroot {

const char* kodaira_str(Kodaira k) {
    switch (k) {
        case Kodaira::good: return "good";
        case Kodaira::II: return "II";
        case Kodaira::II_star: return "II*";
        case Kodaira::III: return "III";
        case Kodaira::III_star: return "III*";
        case Kodaira::I0_star: return "I0*";
        case Kodaira::I2_star: return "I2*";
        case Kodaira::I4_star: return "I4*";
    }
    return "?";
}

namespace {

struct Row {
    std::array<int, 6> digits; // -1 = irrelevant
    Kodaira type;
    int f2;
};

// Reduction types and even conductor exponents keyed on the digit vector of d.
constexpr std::array<Row, reduction_table_rows> kReductionTable{{
    {{0, 0, 0, 1, -1, -1}, Kodaira::III_star, 14},
    {{0, 0, 1, 0, -1, -1}, Kodaira::I4_star, 10},
    {{0, 0, 1, 1, -1, -1}, Kodaira::I2_star, 12},
    {{0, 1, -1, -1, -1, -1}, Kodaira::III, 14},
    {{1, 0, 0, 0, -1, -1}, Kodaira::I2_star, 6},
    {{1, 0, 0, 1, -1, -1}, Kodaira::I0_star, 8},
    {{1, 0, 1, 0, 0, 0}, Kodaira::good, 0},
    {{1, 0, 1, 0, 0, 1}, Kodaira::II_star, 4},
    {{1, 0, 1, 0, 1, 0}, Kodaira::II_star, 4},
    {{1, 0, 1, 0, 1, 1}, Kodaira::good, 0},
    {{1, 0, 1, 1, -1, -1}, Kodaira::I0_star, 8},
    {{1, 1, -1, -1, -1, -1}, Kodaira::II, 12},
}};

} // namespace

EvenReduction decode_reduction_row(const std::vector<int>& digits) {
    for (int r = 0; r < reduction_table_rows; ++r) {
        const Row& row = kReductionTable[static_cast<size_t>(r)];
        bool match = true;
        for (size_t j = 0; j < 6 && match; ++j)
            if (row.digits[j] != -1 && row.digits[j] != digits.at(j)) match = false;
        if (match) return {row.type, row.f2, r};
    }
    fail(Errc::table_miss, "no reduction row matches digit vector");
}

EvenReduction reduction_at_two(const GaussInt& d) {
    return decode_reduction_row(expand_base_1pi(d, 6));
}

Normalized normalize_d(const GaussInt& d, const FactorEffort& effort) {
    PrimaryFactorization f = factor_primary(d, effort);
    GaussInt x(1);
    GaussInt dp = unit_from_exponent(f.n_u);
    dp *= pow(gi_one_plus_i(), static_cast<unsigned long>(f.n_2 % 4));
    x *= pow(gi_one_plus_i(), static_cast<unsigned long>(f.n_2 / 4));
    for (const auto& [pi, e] : f.odd) {
        dp *= pow(pi, static_cast<unsigned long>(e % 4));
        x *= pow(pi, static_cast<unsigned long>(e / 4));
    }
    // canonical associate of x in the first quadrant
    for (int k = 0; k < 4 && !(x.re > 0 && x.im >= 0); ++k) x = x.times_i();
    return {dp, x};
}

CurveClass CurveClass::from(const GaussInt& d, const FactorEffort& effort) {
    if (d.is_zero()) fail(Errc::zero_input, "curve with d = 0 is singular");
    CurveClass c;
    c.d = normalize_d(d, effort).d_prime;
    c.fact = factor_primary(c.d, effort);
    c.even_reduction = reduction_at_two(c.d);
    for (const auto& [pi, e] : c.fact.odd)
        c.odd_bad.emplace_back(pi, static_cast<int>(e));
    return c;
}

CurveClass twist(const CurveClass& c, const GaussInt& x, const FactorEffort& effort) {
    if (x.is_zero()) fail(Errc::zero_input, "twist by 0");
    return CurveClass::from(x * c.d, effort);
}

std::vector<std::pair<GaussInt, int>> odd_conductor(const CurveClass& c) {
    std::vector<std::pair<GaussInt, int>> out;
    for (const auto& [pi, e] : c.odd_bad) out.emplace_back(pi, 2);
    return out;
}

namespace {

// Order of the character x -> conj((x/-q)^n) on (O/q)^x, computed on a
// generator of F_{q^2}^x.
int direct_epsilon_order_deg2(const Integer& q_big, long n) {
    long q = to_long(q_big);
    Integer group = Integer(q) * q - 1;
    auto factors = factor_integer(group);
    GaussInt mq(-q, 0);
    for (long x0 = 1; x0 < q; ++x0) {
        for (long x1 = 1; x1 < q; ++x1) {
            GaussInt g(x0, x1);
            bool generator = true;
            for (const auto& [p, e] : factors) {
                GaussInt probe(1);
                Integer expo = group / p;
                // exponentiation via quartic-symbol-free modexp
                GaussInt base = g;
                Integer ee = expo;
                GaussInt acc(1);
                while (ee > 0) {
                    if (mpz_odd_p(ee.get_mpz_t())) acc = mod(acc * base, mq);
                    base = mod(base * base, mq);
                    ee >>= 1;
                }
                probe = acc;
                if (probe.is_one() || mod(probe - GaussInt(1), mq).is_zero()) {
                    generator = false;
                    break;
                }
            }
            if (!generator) continue;
            Mu4 val = quartic_symbol(g, mq).conj().pow(n);
            if (val.k == 0) return 1;
            return val.k == 2 ? 2 : 4;
        }
    }
    fail(Errc::internal, "no generator of F_q^2 found");
}

} // namespace

int epsilon_order(const CurveClass& c, const PrimeClass& v) {
    if (v.kind == PlaceKind::even) fail(Errc::even_place, "epsilon order at the even place");
    long n = c.fact.exponent_of(v.generator);
    int rule = n == 0 ? 1 : (n == 2 ? 2 : 4);
    if (v.kind == PlaceKind::degree_two && v.residue_char <= 10000) {
        int direct = direct_epsilon_order_deg2(v.residue_char, n);
        if (direct != rule)
            fail(Errc::internal, "degree-two epsilon order disagrees with the v(d) rule at q=" +
                                     v.residue_char.get_str());
    }
    return rule;
}

} // namespace cmroot
