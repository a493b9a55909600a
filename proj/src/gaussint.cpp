#include "cmroot/gaussint.hpp"

#include <algorithm>
#include <cctype>

namespace cmroot {

GaussInt unit_from_exponent(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

int unit_exponent(const GaussInt& u) {
    if (u.re == 1 && u.im == 0) return 0;
    if (u.re == 0 && u.im == 1) return 1;
    if (u.re == -1 && u.im == 0) return 2;
    if (u.re == 0 && u.im == -1) return 3;
    fail(Errc::internal, "unit_exponent of non-unit " + to_string(u));
}

bool norm_lex_less(const GaussInt& a, const GaussInt& b) {
    Integer na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

namespace {
// Half-open quadrants starting at the positive real axis.
int quadrant(const GaussInt& a) {
    if (a.re > 0 && a.im >= 0) return 0;
    if (a.re <= 0 && a.im > 0) return 1;
    if (a.re < 0 && a.im <= 0) return 2;
    return 3;
}
} // namespace

bool angle_less(const GaussInt& a, const GaussInt& b) {
    int qa = quadrant(a), qb = quadrant(b);
    if (qa != qb) return qa < qb;
    // same quadrant: a before b iff cross product a x b > 0
    return a.re * b.im - a.im * b.re > 0;
}

GaussInt pow(const GaussInt& base, unsigned long e) {
    GaussInt acc(1), b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

namespace {
// Nearest integer to a/n (n > 0), ties toward -inf.
Integer round_half_down(const Integer& a, const Integer& n) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    if (2 * r > n) q += 1;
    return q;
}
} // namespace

DivMod divmod(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) fail(Errc::zero_input, "division by zero");
    GaussInt num = a * b.conj();
    Integer n = b.norm();
    GaussInt q{round_half_down(num.re, n), round_half_down(num.im, n)};
    return {q, a - q * b};
}

GaussInt mod(const GaussInt& a, const GaussInt& b) { return divmod(a, b).rem; }

bool divides(const GaussInt& b, const GaussInt& a) {
    if (b.is_zero()) return a.is_zero();
    GaussInt num = a * b.conj();
    Integer n = b.norm();
    return imod(num.re, n) == 0 && imod(num.im, n) == 0;
}

GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
    GaussInt num = a * b.conj();
    Integer n = b.norm();
    Integer r1 = imod(num.re, n), r2 = imod(num.im, n);
    if (r1 != 0 || r2 != 0)
        fail(Errc::internal, "exact_div: " + to_string(b) + " does not divide " + to_string(a));
    return {num.re / n, num.im / n};
}

GaussInt gcd(GaussInt a, GaussInt b) {
    while (!b.is_zero()) {
        GaussInt r = mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

ExtGcd ext_gcd(const GaussInt& a, const GaussInt& b) {
    GaussInt r0 = a, r1 = b;
    GaussInt s0(1), s1(0), t0(0), t1(1);
    while (!r1.is_zero()) {
        DivMod dm = divmod(r0, r1);
        GaussInt r2 = dm.rem;
        GaussInt s2 = s0 - dm.quot * s1;
        GaussInt t2 = t0 - dm.quot * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    return {r0, s0, t0};
}

GaussInt mod_inverse(const GaussInt& a, const GaussInt& m) {
    ExtGcd e = ext_gcd(a, m);
    if (!e.g.is_unit())
        fail(Errc::not_coprime, to_string(a) + " not invertible mod " + to_string(m));
    // x*a == g; multiply by g^-1 = conj(g) for units
    return mod(e.x * e.g.conj(), m);
}

bool is_odd(const GaussInt& a) { return imod(a.re + a.im, 2) == 1; }

GaussInt div_one_plus_i(const GaussInt& a) {
    // a / (1+i) = a(1-i)/2
    return {(a.re + a.im) / 2, (a.im - a.re) / 2};
}

long valuation_one_plus_i(GaussInt a) {
    if (a.is_zero()) fail(Errc::zero_input, "valuation of 0");
    long v = 0;
    while (!is_odd(a)) {
        a = div_one_plus_i(a);
        ++v;
    }
    return v;
}

bool is_primary(const GaussInt& a) {
    unsigned long r = imod_ui(a.re, 4), i = imod_ui(a.im, 4);
    return (r == 1 && i == 0) || (r == 3 && i == 2);
}

bool is_three_plus_two_i_mod4(const GaussInt& a) {
    return imod_ui(a.re, 4) == 3 && imod_ui(a.im, 4) == 2;
}

PrimaryAssociate primary_associate(const GaussInt& alpha) {
    if (alpha.is_zero()) fail(Errc::zero_input, "primary_associate(0)");
    if (!is_odd(alpha)) fail(Errc::even_input, "primary_associate of even " + to_string(alpha));
    GaussInt cand = alpha;
    for (int k = 0; k < 4; ++k) {
        if (is_primary(cand)) return {unit_from_exponent(k), cand};
        cand = cand.times_i();
    }
    fail(Errc::internal, "no primary associate of " + to_string(alpha));
}

GaussInt PrimaryFactorization::reassemble() const {
    GaussInt acc = unit_from_exponent(n_u) * pow(gi_one_plus_i(), static_cast<unsigned long>(n_2));
    for (const auto& [pi, e] : odd) acc *= pow(pi, static_cast<unsigned long>(e));
    return acc;
}

long PrimaryFactorization::exponent_of(const GaussInt& primary_pi) const {
    for (const auto& [pi, e] : odd)
        if (pi == primary_pi) return e;
    return 0;
}

namespace {

// Smallest positive u with u^2 == -1 mod p, p == 1 mod 4.
uint64_t sqrt_minus_one(uint64_t p) {
    for (uint64_t a = 2; a < p; ++a) {
        uint64_t u = powmod64(a, (p - 1) / 4, p);
        if (mulmod64(u, u, p) == p - 1) return std::min(u, p - u);
    }
    fail(Errc::internal, "no sqrt(-1) mod " + std::to_string(p));
}

// A Gaussian prime above the split rational prime p (p == 1 mod 4), primary.
GaussInt split_prime_above(const Integer& p) {
    if (!fits_slong(p)) fail(Errc::effort_bound, "split prime above huge p");
    uint64_t pl = static_cast<uint64_t>(p.get_ui());
    uint64_t u = sqrt_minus_one(pl);
    GaussInt g = gcd(GaussInt(p), GaussInt(Integer(static_cast<long>(u)), Integer(1)));
    return primary_associate(g).primary;
}

} // namespace

PrimaryFactorization factor_primary(const GaussInt& d, const FactorEffort& effort) {
    if (d.is_zero()) fail(Errc::zero_input, "factor_primary(0)");
    PrimaryFactorization out;
    GaussInt cur = d;
    while (!is_odd(cur)) {
        cur = div_one_plus_i(cur);
        out.n_2 += 1;
    }
    int ucount = 0;
    if (!cur.is_unit()) {
        auto rat = factor_integer(cur.norm(), effort);
        for (const auto& [p, e] : rat) {
            if (imod_ui(p, 4) == 3) {
                // inert: primary generator -q, multiplicity e/2
                if (e % 2 != 0) fail(Errc::internal, "odd inert multiplicity in norm");
                GaussInt piq(-p, 0);
                long mult = e / 2;
                for (long t = 0; t < mult; ++t) cur = exact_div(cur, piq);
                out.odd.emplace_back(piq, mult);
            } else {
                // split: pull out pi and conj(pi) separately
                GaussInt pi = split_prime_above(p);
                for (GaussInt cand : {pi, primary_associate(pi.conj()).primary}) {
                    long mult = 0;
                    while (divides(cand, cur)) {
                        cur = exact_div(cur, cand);
                        ++mult;
                    }
                    if (mult > 0) out.odd.emplace_back(cand, mult);
                }
            }
        }
    }
    if (!cur.is_unit()) fail(Errc::internal, "non-unit cofactor after factoring");
    ucount = unit_exponent(cur);
    out.n_u = ucount;
    std::sort(out.odd.begin(), out.odd.end(),
              [](const auto& a, const auto& b) { return norm_lex_less(a.first, b.first); });
    return out;
}

bool is_gaussian_prime(const GaussInt& pi) {
    if (pi.is_zero() || pi.is_unit()) return false;
    Integer n = pi.norm();
    if (n == 2) return true;
    if (is_probable_prime(n)) return true;
    if (pi.re == 0 || pi.im == 0) {
        Integer q = pi.re == 0 ? abs(pi.im) : abs(pi.re);
        return imod_ui(q, 4) == 3 && is_probable_prime(q);
    }
    return false;
}

PrimeClass classify_prime(const GaussInt& pi) {
    if (!is_gaussian_prime(pi))
        fail(Errc::not_prime, to_string(pi) + " is not a Gaussian prime");
    Integer n = pi.norm();
    if (n == 2) return {PlaceKind::even, gi_one_plus_i(), Integer(2)};
    if (is_probable_prime(n) && imod_ui(n, 4) == 1)
        return {PlaceKind::degree_one, primary_associate(pi).primary, n};
    Integer q = pi.re == 0 ? abs(pi.im) : abs(pi.re);
    return {PlaceKind::degree_two, GaussInt(-q, 0), q};
}

long valuation(GaussInt a, const GaussInt& pi) {
    if (a.is_zero()) fail(Errc::zero_input, "valuation of 0");
    long v = 0;
    while (divides(pi, a)) {
        a = exact_div(a, pi);
        ++v;
    }
    return v;
}

std::vector<int> expand_base_1pi(GaussInt d, int k) {
    if (d.is_zero()) fail(Errc::zero_input, "expand_base_1pi(0)");
    if (k < 1) fail(Errc::usage, "expand_base_1pi needs k >= 1");
    std::vector<int> digits(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        if (is_odd(d)) {
            digits[static_cast<size_t>(j)] = 1;
            d -= GaussInt(1);
        }
        d = div_one_plus_i(d);
    }
    return digits;
}

std::string to_string(const GaussInt& g) {
    std::string s = g.re.get_str();
    s += (g.im < 0) ? "-" : "+";
    s += Integer(abs(g.im)).get_str();
    s += "i";
    return s;
}

GaussInt parse_gaussint(std::string_view sv) {
    std::string s;
    for (char c : sv)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail(Errc::parse_error, "empty Gaussian integer");

    // split into one or two signed terms
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '+' && s[i - 1] != '-') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));
    if (terms.size() > 2) fail(Errc::parse_error, "bad Gaussian integer: " + std::string(sv));

    Integer re = 0, im = 0;
    bool saw_re = false, saw_im = false;
    for (auto& t : terms) {
        if (t.empty()) fail(Errc::parse_error, "bad Gaussian integer: " + std::string(sv));
        bool imag = t.back() == 'i' || t.back() == 'I';
        std::string num = imag ? t.substr(0, t.size() - 1) : t;
        if (num.empty() || num == "+") num = "1";
        else if (num == "-") num = "-1";
        for (size_t i = 0; i < num.size(); ++i) {
            char c = num[i];
            bool ok = std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '+' || c == '-'));
            if (!ok) fail(Errc::parse_error, "bad Gaussian integer: " + std::string(sv));
        }
        if (imag) {
            if (saw_im) fail(Errc::parse_error, "two imaginary parts: " + std::string(sv));
            im = Integer(num);
            saw_im = true;
        } else {
            if (saw_re) fail(Errc::parse_error, "two real parts: " + std::string(sv));
            re = Integer(num);
            saw_re = true;
        }
    }
    return {re, im};
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::zero_input: return "ZeroInput";
        case Errc::even_input: return "EvenInput";
        case Errc::not_prime: return "NotPrime";
        case Errc::not_coprime: return "NotCoprime";
        case Errc::even_modulus: return "EvenModulus";
        case Errc::even_place: return "EvenPlace";
        case Errc::factorization_limit: return "FactorizationLimit";
        case Errc::reciprocity_precondition: return "ReciprocityPreconditionViolated";
        case Errc::table_miss: return "TableMiss";
        case Errc::bad_reduction: return "BadReduction";
        case Errc::good_reduction: return "GoodReduction";
        case Errc::effort_bound: return "EffortBound";
        case Errc::search_exhausted: return "SearchExhausted";
        case Errc::unsupported_even_bad_reduction: return "UnsupportedEvenBadReduction";
        case Errc::unsnapped: return "Unsnapped";
        case Errc::inadmissible_system: return "InadmissibleSystem";
        case Errc::invalid_shape: return "InvalidShape";
        case Errc::parse_error: return "ParseError";
        case Errc::usage: return "Usage";
        case Errc::internal: return "Internal";
    }
    return "Unknown";
}

} // namespace cmroot
