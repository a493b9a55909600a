#include "cmroot/rootnum.hpp"
#include "cmroot/primes.hpp"

#include <algorithm>

namespace cmroot {

namespace {

__float128 qfrom(const Integer& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 100)
        fail(Errc::effort_bound, "coordinate too large for quad conversion");
    // exact for < 2^100: split into two doubles
    Integer hi = v >> 52;
    Integer lo = v - (hi << 52);
    return __float128(mpz_get_d(hi.get_mpz_t())) * 4503599627370496.0 +
           __float128(mpz_get_d(lo.get_mpz_t()));
}

__float128 qarg(const GaussInt& g) { return atan2q(qfrom(g.im), qfrom(g.re)); }

QComplex mu4_rotate(const QComplex& z, int k) {
    switch (k & 3) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return {-z.re, -z.im};
        default: return {z.im, -z.re};
    }
}

} // namespace

QComplex mu4_qc(Mu4 m) { return mu4_rotate(QComplex(1), m.k); }

QComplex unit_qc(const GaussInt& pi) {
    __float128 a = qfrom(pi.re), b = qfrom(pi.im);
    __float128 n = hypotq(a, b);
    return {a / n, b / n};
}

QComplex Certificate::value() const {
    QComplex acc = mu4_qc(zeta);
    for (const auto& f : factors) acc *= qc_polar(qarg(f.pi) * f.half_steps / 2);
    return acc;
}

Certificate Certificate::times(const Certificate& o) const {
    Certificate out;
    out.zeta = zeta * o.zeta;
    // merge the two canonically sorted factor lists
    size_t i = 0, j = 0;
    auto push = [&out](const GaussInt& pi, int h) {
        if (h != 0) out.factors.push_back({pi, h});
    };
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size() ||
            (i < factors.size() && norm_lex_less(factors[i].pi, o.factors[j].pi))) {
            push(factors[i].pi, factors[i].half_steps);
            ++i;
        } else if (i == factors.size() || norm_lex_less(o.factors[j].pi, factors[i].pi)) {
            push(o.factors[j].pi, o.factors[j].half_steps);
            ++j;
        } else {
            push(factors[i].pi, factors[i].half_steps + o.factors[j].half_steps);
            ++i;
            ++j;
        }
    }
    return out;
}

Certificate Certificate::over(const Certificate& o) const {
    Certificate inv;
    inv.zeta = o.zeta.inv();
    inv.factors = o.factors;
    for (auto& f : inv.factors) f.half_steps = -f.half_steps;
    return times(inv);
}

std::string Certificate::str() const {
    std::string s = zeta.str();
    for (const auto& f : factors) {
        s += " * (";
        s += to_string(f.pi);
        s += "/|.|)^(";
        s += std::to_string(f.half_steps);
        s += "/2)";
    }
    return s;
}

// ---------------------------------------------------------------------------
// find_prime_congruent

namespace {

Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

} // namespace

GaussInt find_prime_congruent(const CongruenceSystem& sys, const Integer& norm_bound) {
    GaussInt m(1), r(0);
    for (const auto& item : sys.items) {
        if (item.modulus.is_zero()) fail(Errc::inadmissible_system, "zero modulus");
        if (item.modulus.is_unit()) continue;
        if (!gcd(m, item.modulus).is_unit())
            fail(Errc::inadmissible_system, "moduli not pairwise coprime");
        if (!gcd(item.residue, item.modulus).is_unit())
            fail(Errc::inadmissible_system,
                 "residue " + to_string(item.residue) + " not invertible mod " +
                     to_string(item.modulus));
        GaussInt t = mod((item.residue - r) * mod_inverse(m, item.modulus), item.modulus);
        r = r + m * t;
        m = m * item.modulus;
        r = mod(r, m);
    }

    Integer nm = m.norm();
    Integer lo = 0;
    Integer hi = nm * 64 + 1024;
    while (lo < norm_bound) {
        if (hi > norm_bound) hi = norm_bound;
        Integer radius = (isqrt(hi) + isqrt(r.norm())) / isqrt(nm) + 2;
        if (radius * radius > 30000000)
            fail(Errc::effort_bound, "congruence scan box too large");
        long rad = to_long(radius);
        std::vector<GaussInt> batch;
        for (long s = -rad; s <= rad; ++s)
            for (long t = -rad; t <= rad; ++t) {
                GaussInt x = r + m * GaussInt(s, t);
                Integer nx = x.norm();
                if (nx <= lo || nx > hi) continue;
                if (sys.require_primary && !is_primary(x)) continue;
                batch.push_back(x);
            }
        std::sort(batch.begin(), batch.end(), [](const GaussInt& a, const GaussInt& b) {
            Integer na = a.norm(), nb = b.norm();
            if (na != nb) return na < nb;
            return angle_less(a, b);
        });
        for (const auto& x : batch)
            if (is_gaussian_prime(x)) return x;
        lo = hi;
        hi = hi * 4;
    }
    fail(Errc::search_exhausted,
         "no prime below norm " + norm_bound.get_str() + " in the lifted progression");
}

// ---------------------------------------------------------------------------
// Gauss sums

namespace {

uint64_t find_generator_mod_p(uint64_t p) {
    auto fac = factor_integer(Integer(static_cast<unsigned long>(p - 1)));
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [ell, e] : fac)
            if (powmod64(g, (p - 1) / ell.get_ui(), p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    fail(Errc::internal, "no generator mod p");
}

QComplex gauss_sum_deg1(long n, const PrimeClass& v) {
    uint64_t p = static_cast<uint64_t>(v.residue_char.get_ui());
    uint64_t u = embedding_u(v);
    uint64_t a = imod_ui(v.generator.re, p), b = imod_ui(v.generator.im, p);
    uint64_t c = (a + p - mulmod64(b, u, p)) % p; // t(x) = c*x for rational x

    uint64_t g = find_generator_mod_p(p);
    uint64_t w = powmod64(g, (p - 1) / 4, p);
    int s = (w == u) ? 1 : 3;
    if (s == 3 && w != p - u) fail(Errc::internal, "generator power is not a sqrt(-1)");

    std::vector<uint8_t> quart(p, 0);
    {
        uint64_t x = 1;
        for (uint64_t j = 0; j + 1 < p; ++j) {
            quart[x] = static_cast<uint8_t>((s * j) & 3);
            x = mulmod64(x, g, p);
        }
    }

    QComplex acc[4];
    QComplex step = qc_polar(2 * M_PIq * c / p);
    QComplex cur = step;
    for (uint64_t x = 1; x < p; ++x) {
        acc[quart[x]] += cur;
        if ((x & 2047) == 2047)
            cur = qc_polar(2 * M_PIq * mulmod64(c, x + 1, p) / p);
        else
            cur *= step;
    }
    QComplex total;
    for (int k = 0; k < 4; ++k) total += mu4_rotate(acc[k], (n * k) & 3);
    return total * QComplex(1 / sqrtq(__float128(p)));
}

QComplex gauss_sum_deg2(long n, const PrimeClass& v) {
    uint64_t q = static_cast<uint64_t>(v.residue_char.get_ui());
    // generator of F_{q^2}^x
    Integer group = v.residue_char * v.residue_char - 1;
    auto fac = factor_integer(group);
    uint64_t g0 = 0, g1 = 0;
    for (uint64_t x0 = 1; x0 < q && g0 == 0; ++x0)
        for (uint64_t x1 = 1; x1 < q; ++x1) {
            bool ok = true;
            for (const auto& [ell, e] : fac) {
                uint64_t expo = static_cast<uint64_t>(Integer(group / ell).get_ui());
                // (x0 + x1 i)^expo in F_q[i]
                uint64_t r0 = 1, r1 = 0, b0 = x0, b1 = x1, ee = expo;
                while (ee) {
                    if (ee & 1) {
                        uint64_t t0 = (mulmod64(r0, b0, q) + q - mulmod64(r1, b1, q)) % q;
                        uint64_t t1 = (mulmod64(r0, b1, q) + mulmod64(r1, b0, q)) % q;
                        r0 = t0; r1 = t1;
                    }
                    uint64_t s0 = (mulmod64(b0, b0, q) + q - mulmod64(b1, b1, q)) % q;
                    uint64_t s1 = (2 * mulmod64(b0, b1, q)) % q;
                    b0 = s0; b1 = s1;
                    ee >>= 1;
                }
                if (r0 == 1 && r1 == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g0 = x0;
                g1 = x1;
                break;
            }
        }
    if (g0 == 0) fail(Errc::internal, "no generator of F_q^2");

    // orientation: g^((q^2-1)/4) is +-i; s aligns the discrete log with i^k
    uint64_t e4 = static_cast<uint64_t>(Integer((group) / 4).get_ui());
    uint64_t w0 = 1, w1 = 0, b0 = g0, b1 = g1, ee = e4;
    while (ee) {
        if (ee & 1) {
            uint64_t t0 = (mulmod64(w0, b0, q) + q - mulmod64(w1, b1, q)) % q;
            uint64_t t1 = (mulmod64(w0, b1, q) + mulmod64(w1, b0, q)) % q;
            w0 = t0; w1 = t1;
        }
        uint64_t s0 = (mulmod64(b0, b0, q) + q - mulmod64(b1, b1, q)) % q;
        uint64_t s1 = (2 * mulmod64(b0, b1, q)) % q;
        b0 = s0; b1 = s1;
        ee >>= 1;
    }
    int s;
    if (w0 == 0 && w1 == 1) s = 1;
    else if (w0 == 0 && w1 == q - 1) s = 3;
    else fail(Errc::internal, "generator power is not +-i in F_q^2");

    // counts per (x0, exponent); the additive character only sees x0
    std::vector<int64_t> cnt(q * 4, 0);
    uint64_t z0 = 1, z1 = 0;
    uint64_t order = q * q - 1;
    for (uint64_t j = 0; j < order; ++j) {
        cnt[z0 * 4 + ((n * s * j) & 3)] += 1;
        uint64_t t0 = (mulmod64(z0, g0, q) + q - mulmod64(z1, g1, q)) % q;
        uint64_t t1 = (mulmod64(z0, g1, q) + mulmod64(z1, g0, q)) % q;
        z0 = t0; z1 = t1;
    }

    QComplex total;
    for (uint64_t x0 = 0; x0 < q; ++x0) {
        QComplex inner;
        for (int k = 0; k < 4; ++k)
            inner += mu4_rotate(QComplex(__float128(static_cast<double>(cnt[x0 * 4 + k]))), k);
        // tr(x/(-q)) = -2*x0/q
        total += inner * qc_polar(-4 * M_PIq * x0 / q);
    }
    return total * QComplex(1 / __float128(q));
}

} // namespace

QComplex gauss_sum(const GaussInt& d, const PrimeClass& v, long effort_cap, GaussSumCache* cache) {
    if (v.kind == PlaceKind::even) fail(Errc::even_place, "gauss sum at the even place");
    if (d.is_zero()) fail(Errc::zero_input, "gauss sum with d = 0");
    long n = valuation(d, v.generator);
    if (n == 0) fail(Errc::good_reduction, "gauss sum at a good place");
    if (n > 3) fail(Errc::usage, "gauss sum needs v(d) in {1,2,3}");
    if (v.place_norm() > effort_cap) fail(Errc::effort_bound, "gauss sum beyond the effort cap");

    std::string key;
    if (cache) {
        key = to_string(v.generator) + "#" + std::to_string(n);
        QComplex hit;
        if (cache->find(key, hit)) return hit;
    }
    QComplex g = v.kind == PlaceKind::degree_one ? gauss_sum_deg1(n, v) : gauss_sum_deg2(n, v);
    if (cache) cache->put(key, g);
    return g;
}

std::optional<SnappedGauss> snap_gauss_sum(const QComplex& g, const GaussInt& pi, double tol) {
    __float128 half = qarg(pi) / 2;
    for (int h : {1, 0, -1}) {
        QComplex base = qc_polar(half * h);
        QComplex ratio = g / base;
        for (int k = 0; k < 4; ++k)
            if (qc_dist(ratio, mu4_qc(Mu4(k))) < tol) return SnappedGauss{Mu4(k), h};
    }
    return std::nullopt;
}

Mu4 snap_mu4(const QComplex& v, const QComplex& base, double tol) {
    QComplex ratio = v / base;
    for (int k = 0; k < 4; ++k)
        if (qc_dist(ratio, mu4_qc(Mu4(k))) < tol) return Mu4(k);
    fail(Errc::unsnapped, "value does not snap to a fourth root of unity; raw = " +
                              qc_str(v, 20));
}

// ---------------------------------------------------------------------------
// local root numbers

RootNumber archimedean_root_number() {
    return {QComplex(0, -1), Certificate{Mu4(3), {}}};
}

namespace {

RootNumber good_even_root_number(const CurveClass& c) {
    // w = chi((1+i)^3 O)/|...| with chi((1+i)O) = eps(1+i) * (1+i)
    Mu4 eps;
    for (const auto& [pi, e] : c.odd_bad)
        eps *= supplement_one_plus_i(pi).conj().pow(e);
    Mu4 zeta = eps.pow(3);
    Certificate cert{zeta, {{gi_one_plus_i(), 6}}};
    return {cert.value(), cert};
}

RootNumber degree_one_root_number(const CurveClass& c, const PrimeClass& v, long n,
                                  long effort_cap, GaussSumCache* cache) {
    const GaussInt& pi = v.generator;
    QComplex g = gauss_sum(c.d, v, effort_cap, cache);
    Mu4 eta_n((is_three_plus_two_i_mod4(pi) && (n % 2 == 1)) ? 2 : 0);
    GaussInt rest = exact_div(c.d, pow(pi, static_cast<unsigned long>(n)));
    Mu4 sym1 = quartic_symbol(rest, pi).conj();
    GaussInt pin = pow(pi, static_cast<unsigned long>(n));
    Mu4 sym2 = quartic_symbol(mod_inverse(pi.conj(), pin), pi).conj().pow(n);
    Mu4 mu = eta_n * sym1 * sym2;

    RootNumber out;
    out.numeric = mu4_qc(mu) * unit_qc(pi) * g;
    if (auto snap = snap_gauss_sum(g, pi)) {
        Certificate cert{mu * snap->zeta, {}};
        int h = 2 + snap->half_steps;
        if (h != 0) cert.factors.push_back({pi, h});
        out.cert = cert;
    }
    return out;
}

RootNumber degree_two_root_number(const CurveClass& c, const PrimeClass& v, long n) {
    const GaussInt& mq = v.generator; // -q
    // G(chi^v) = +1 at exact order 2, -1 at exact order 4
    Mu4 g_exact(n == 2 ? 0 : 2);
    GaussInt rest = exact_div(c.d, pow(mq, static_cast<unsigned long>(n)));
    Mu4 mu = Mu4(2) * quartic_symbol(rest, mq).conj() * g_exact;
    Certificate cert{mu, {}};
    return {cert.value(), cert};
}

} // namespace

RootNumber local_root_number(const CurveClass& c, const PrimeClass& v, long effort_cap,
                             GaussSumCache* cache) {
    if (v.kind == PlaceKind::even) {
        if (!c.even_reduction.good())
            fail(Errc::unsupported_even_bad_reduction,
                 "local root number above 2 with bad even reduction (type " +
                     std::string(kodaira_str(c.even_reduction.type)) + ")");
        return good_even_root_number(c);
    }
    long n = c.fact.exponent_of(v.generator);
    if (n == 0) return {QComplex(1), Certificate{Mu4(0), {}}};
    return v.kind == PlaceKind::degree_one
               ? degree_one_root_number(c, v, n, effort_cap, cache)
               : degree_two_root_number(c, v, n);
}

RootNumber local_root_number(const GaussInt& d, const PrimeClass& v, long effort_cap,
                             GaussSumCache* cache) {
    return local_root_number(CurveClass::from(d), v, effort_cap, cache);
}

QComplex local_root_oracle(const GaussInt& d, const PrimeClass& v, const Integer& search_bound,
                           long effort_cap, GaussSumCache* cache) {
    if (v.kind == PlaceKind::even) fail(Errc::even_place, "oracle at the even place");
    PrimaryFactorization fact = factor_primary(d);
    long n = 0;
    for (const auto& [pi, e] : fact.odd)
        if (pi == v.generator) n = e;
    if (n == 0) fail(Errc::good_reduction, "oracle at a good place");

    GaussInt sixteen = pow(gi_one_plus_i(), 8);
    CongruenceSystem sys;
    const GaussInt& target = v.generator; // pi for degree one, -q for degree two
    sys.items.push_back({sixteen, target});
    for (const auto& [pi, e] : fact.odd)
        if (pi != v.generator) sys.items.push_back({pi, target});
    GaussInt pin = pow(v.generator, static_cast<unsigned long>(n));
    if (v.kind == PlaceKind::degree_one)
        sys.items.push_back({pin, mod_inverse(v.generator.conj(), pin)});
    else
        sys.items.push_back({pin, GaussInt(-1)});

    Integer bound = search_bound;
    if (bound == 0) {
        GaussInt m(1);
        for (const auto& it : sys.items) m *= it.modulus;
        bound = m.norm();
        bound = bound * bound + Integer("1000000000000");
    }
    GaussInt x = find_prime_congruent(sys, bound);

    QComplex g = gauss_sum(d, v, effort_cap, cache);
    Mu4 eps = quartic_symbol_composite(d, x).conj();
    if (v.kind == PlaceKind::degree_one) return unit_qc(v.generator) * mu4_qc(eps) * g;
    return mu4_qc(Mu4(2) * eps) * g; // the unit forced by primariness contributes -1
}

RootNumber global_root_ratio(const CurveClass& c, long effort_cap, GaussSumCache* cache) {
    RootNumber acc = archimedean_root_number();
    for (const auto& [pi, e] : c.odd_bad) {
        RootNumber w = local_root_number(c, classify_prime(pi), effort_cap, cache);
        acc.numeric *= w.numeric;
        if (acc.cert && w.cert)
            acc.cert = acc.cert->times(*w.cert);
        else
            acc.cert.reset();
    }
    return acc;
}

RootNumber global_root_ratio(const GaussInt& d, long effort_cap, GaussSumCache* cache) {
    return global_root_ratio(CurveClass::from(d), effort_cap, cache);
}

} // namespace cmroot
