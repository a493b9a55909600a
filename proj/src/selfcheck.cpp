#include "cmroot/selfcheck.hpp"
#include "cmroot/experiments.hpp"
#include "cmroot/parallel.hpp"
#include "cmroot/primes.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace cmroot {

namespace {

// splitmix64; self-contained so results do not depend on the standard library
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long below(long n) { return static_cast<long>(next() % static_cast<uint64_t>(n)); }
    long coord(long bound) { return below(2 * bound + 1) - bound; }
    GaussInt gauss(long bound) { return {coord(bound), coord(bound)}; }
    GaussInt nonzero(long bound) {
        GaussInt g;
        do g = gauss(bound);
        while (g.is_zero());
        return g;
    }
    GaussInt odd_nonzero(long bound) {
        GaussInt g;
        do g = gauss(bound);
        while (g.is_zero() || !is_odd(g));
        return g;
    }
};

struct Ctx {
    bool quick;
    int threads;
    GaussSumCache cache;
};

std::vector<GaussInt> primary_primes_up_to(long norm_bound) {
    std::vector<GaussInt> out;
    for (const auto& v : odd_places_up_to(norm_bound)) out.push_back(v.generator);
    return out;
}

CheckResult make(const std::string& name, bool pass, const std::string& detail) {
    return {name, pass, detail};
}

// --- gaussint -------------------------------------------------------------

CheckResult chk_factor_roundtrip(Ctx& ctx) {
    Rng rng(101);
    int n = ctx.quick ? 80 : 300;
    for (int t = 0; t < n; ++t) {
        GaussInt d = rng.nonzero(t % 7 == 0 ? 100000 : 500);
        PrimaryFactorization f = factor_primary(d);
        if (f.reassemble() != d)
            return make("gaussint.factor_roundtrip", false, "reassembly mismatch at " + to_string(d));
        for (const auto& [pi, e] : f.odd)
            if (!is_primary(pi) || e <= 0)
                return make("gaussint.factor_roundtrip", false, "bad factor key " + to_string(pi));
    }
    return make("gaussint.factor_roundtrip", true, std::to_string(n) + " random elements");
}

CheckResult chk_primary_unique(Ctx& ctx) {
    Rng rng(102);
    int n = ctx.quick ? 100 : 400;
    for (int t = 0; t < n; ++t) {
        GaussInt a = rng.odd_nonzero(10000);
        PrimaryAssociate pa = primary_associate(a);
        if (pa.primary != pa.unit * a || !is_primary(pa.primary))
            return make("gaussint.primary_unique", false, "bad associate at " + to_string(a));
        int hits = 0;
        GaussInt c = a;
        for (int k = 0; k < 4; ++k) {
            if (is_primary(c)) ++hits;
            c = c.times_i();
        }
        if (hits != 1)
            return make("gaussint.primary_unique", false,
                        std::to_string(hits) + " primary associates at " + to_string(a));
    }
    return make("gaussint.primary_unique", true, std::to_string(n) + " odd elements");
}

CheckResult chk_primary_patterns(Ctx& ctx) {
    long bound = ctx.quick ? 1000 : 10000;
    int count = 0;
    for (const auto& pi : primary_primes_up_to(bound)) {
        unsigned long r = imod_ui(pi.re, 4), i = imod_ui(pi.im, 4);
        bool p10 = r == 1 && i == 0, p32 = r == 3 && i == 2;
        if (p10 == p32)
            return make("gaussint.primary_patterns", false, "pattern failure at " + to_string(pi));
        ++count;
    }
    return make("gaussint.primary_patterns", true,
                std::to_string(count) + " primary primes below norm " + std::to_string(bound));
}

CheckResult chk_digit_roundtrip(Ctx& ctx) {
    Rng rng(103);
    int n = ctx.quick ? 60 : 250;
    for (int t = 0; t < n; ++t) {
        GaussInt d = rng.nonzero(100000);
        int k = 1 + static_cast<int>(rng.below(32));
        auto digits = expand_base_1pi(d, k);
        GaussInt acc(0), power(1);
        for (int j = 0; j < k; ++j) {
            if (digits[static_cast<size_t>(j)]) acc += power;
            power *= gi_one_plus_i();
        }
        if (!divides(power, d - acc))
            return make("gaussint.digit_roundtrip", false,
                        "digits do not reassemble mod (1+i)^" + std::to_string(k) + " at " + to_string(d));
    }
    return make("gaussint.digit_roundtrip", true, std::to_string(n) + " expansions, k <= 32");
}

// --- symbols ---------------------------------------------------------------

CheckResult chk_sym_multiplicative(Ctx& ctx) {
    Rng rng(201);
    auto pool = primary_primes_up_to(2000);
    int n = ctx.quick ? 300 : 1000;
    int done = 0;
    while (done < n) {
        const GaussInt& pi = pool[static_cast<size_t>(rng.below(static_cast<long>(pool.size())))];
        GaussInt a = rng.nonzero(300), b = rng.nonzero(300);
        if (divides(pi, a) || divides(pi, b)) continue;
        if (quartic_symbol(a * b, pi) != quartic_symbol(a, pi) * quartic_symbol(b, pi))
            return make("symbols.multiplicativity", false,
                        "failure at (" + to_string(a) + ", " + to_string(b) + ") mod " + to_string(pi));
        ++done;
    }
    return make("symbols.multiplicativity", true, std::to_string(n) + " random triples");
}

CheckResult chk_sym_conjugation(Ctx& ctx) {
    Rng rng(202);
    auto pool = primary_primes_up_to(2000);
    int n = ctx.quick ? 200 : 600;
    int done = 0;
    while (done < n) {
        const GaussInt& pi = pool[static_cast<size_t>(rng.below(static_cast<long>(pool.size())))];
        GaussInt a = rng.nonzero(300);
        if (divides(pi, a)) continue;
        if (quartic_symbol(a, pi).conj() != quartic_symbol(a.conj(), pi.conj()))
            return make("symbols.conjugation", false,
                        "failure at " + to_string(a) + " mod " + to_string(pi));
        ++done;
    }
    return make("symbols.conjugation", true, std::to_string(n) + " samples");
}

CheckResult chk_sym_associates(Ctx& ctx) {
    Rng rng(203);
    auto pool = primary_primes_up_to(2000);
    int n = ctx.quick ? 150 : 400;
    int done = 0;
    while (done < n) {
        const GaussInt& pi = pool[static_cast<size_t>(rng.below(static_cast<long>(pool.size())))];
        GaussInt a = rng.nonzero(300);
        if (divides(pi, a)) continue;
        Mu4 base = quartic_symbol(a, pi);
        for (int k = 1; k < 4; ++k)
            if (quartic_symbol(a, unit_from_exponent(k) * pi) != base)
                return make("symbols.associate_invariance", false,
                            "failure at unit i^" + std::to_string(k) + " of " + to_string(pi));
        ++done;
    }
    return make("symbols.associate_invariance", true, std::to_string(n) + " samples x 4 units");
}

CheckResult chk_sym_congruence(Ctx& ctx) {
    Rng rng(204);
    auto pool = primary_primes_up_to(2000);
    int n = ctx.quick ? 150 : 400;
    int done = 0;
    while (done < n) {
        const GaussInt& pi = pool[static_cast<size_t>(rng.below(static_cast<long>(pool.size())))];
        GaussInt a = rng.nonzero(300);
        if (divides(pi, a)) continue;
        GaussInt b = a + pi * rng.gauss(50);
        if (quartic_symbol(a, pi) != quartic_symbol(b, pi))
            return make("symbols.congruence_invariance", false,
                        "failure at " + to_string(a) + " ~ " + to_string(b) + " mod " + to_string(pi));
        ++done;
    }
    return make("symbols.congruence_invariance", true, std::to_string(n) + " congruent pairs");
}

CheckResult chk_sym_rational(Ctx&) {
    for (long q = 3; q <= 199; q += 4) {
        if (!is_probable_prime(Integer(q))) continue;
        for (long a = 1; a <= 200; ++a) {
            if (a % q == 0) continue;
            if (!quartic_symbol(GaussInt(a), GaussInt(q)).is_one())
                return make("symbols.rational_triviality", false,
                            "(" + std::to_string(a) + "/" + std::to_string(q) + ") != 1");
        }
    }
    return make("symbols.rational_triviality", true, "all a <= 200, q <= 200");
}

CheckResult chk_sym_reciprocity(Ctx& ctx) {
    long bound = ctx.quick ? 200 : 500;
    auto prims = primary_primes_up_to(bound);
    long pairs = 0;
    for (size_t i = 0; i < prims.size(); ++i)
        for (size_t j = 0; j < prims.size(); ++j) {
            if (i == j) continue;
            const GaussInt &a = prims[i], &b = prims[j];
            if (!gcd(a, b).is_unit()) continue;
            Mu4 lhs = quartic_symbol(a, b) * quartic_symbol(b, a).inv();
            Integer ea = (a.norm() - 1) / 4, eb = (b.norm() - 1) / 4;
            bool minus = imod_ui(ea, 2) == 1 && imod_ui(eb, 2) == 1;
            if (lhs != Mu4(minus ? 2 : 0))
                return make("symbols.reciprocity", false,
                            "failure at (" + to_string(a) + ", " + to_string(b) + ")");
            if (quartic_symbol(b, a) !=
                (reciprocity_sign(a, b) < 0 ? Mu4(2) : Mu4(0)) * quartic_symbol(a, b))
                return make("symbols.reciprocity", false,
                            "two-case form fails at (" + to_string(a) + ", " + to_string(b) + ")");
            ++pairs;
        }
    return make("symbols.reciprocity", true,
                std::to_string(pairs) + " ordered pairs below norm " + std::to_string(bound));
}

CheckResult chk_sym_supplements(Ctx& ctx) {
    long bound = ctx.quick ? 1000 : 10000;
    auto prims = primary_primes_up_to(bound);
    for (const auto& pi : prims) {
        if (quartic_symbol(gi_i(), pi) != supplement_i(pi))
            return make("symbols.supplements", false, "(i/pi) formula fails at " + to_string(pi));
        if (quartic_symbol(gi_one_plus_i(), pi) != supplement_one_plus_i(pi))
            return make("symbols.supplements", false, "((1+i)/pi) formula fails at " + to_string(pi));
    }
    return make("symbols.supplements", true,
                std::to_string(prims.size()) + " primary primes below norm " + std::to_string(bound));
}

CheckResult chk_sym_square_jacobi(Ctx& ctx) {
    Rng rng(205);
    int n = ctx.quick ? 200 : 800;
    auto places = odd_places_up_to(5000);
    int done = 0;
    while (done < n) {
        const auto& v = places[static_cast<size_t>(rng.below(static_cast<long>(places.size())))];
        if (v.kind != PlaceKind::degree_one) continue;
        long a = 1 + rng.below(10000);
        if (imod(Integer(a), v.residue_char) == 0) continue;
        Mu4 sq = quartic_symbol(GaussInt(a), v.generator).pow(2);
        int leg = jacobi_symbol(Integer(a), v.residue_char);
        if ((sq.k == 0 ? 1 : -1) != leg)
            return make("symbols.square_is_jacobi", false,
                        "mismatch at a=" + std::to_string(a) + ", p=" + v.residue_char.get_str());
        ++done;
    }
    return make("symbols.square_is_jacobi", true, std::to_string(n) + " samples");
}

CheckResult chk_sym_fast(Ctx& ctx) {
    Rng rng(206);
    int n = ctx.quick ? 800 : 10000;
    int done = 0;
    while (done < n) {
        GaussInt beta = rng.odd_nonzero(120);
        if (!beta.is_unit()) beta = primary_associate(beta).primary;
        if (beta.is_unit()) continue;
        GaussInt alpha = rng.nonzero(400);
        if (!gcd(alpha, beta).is_unit()) continue;
        if (quartic_symbol_fast(alpha, beta) != quartic_symbol_composite(alpha, beta))
            return make("symbols.fast_equals_oracle", false,
                        "mismatch at (" + to_string(alpha) + ", " + to_string(beta) + ")");
        ++done;
    }
    return make("symbols.fast_equals_oracle", true, std::to_string(n) + " random valid inputs");
}

CheckResult chk_jacobi_reciprocity(Ctx& ctx) {
    auto primes = primes_below(1000);
    int checked = 0;
    for (size_t i = 1; i < primes.size(); i += ctx.quick ? 7 : 1)
        for (size_t j = i + 1; j < primes.size(); j += ctx.quick ? 5 : 1) {
            long p = primes[i], q = primes[j];
            int lhs = jacobi_symbol(Integer(p), Integer(q)) * jacobi_symbol(Integer(q), Integer(p));
            int rhs = ((p - 1) / 2 % 2 == 1 && (q - 1) / 2 % 2 == 1) ? -1 : 1;
            if (lhs != rhs)
                return make("symbols.jacobi_reciprocity", false,
                            "failure at (" + std::to_string(p) + ", " + std::to_string(q) + ")");
            ++checked;
        }
    return make("symbols.jacobi_reciprocity", true, std::to_string(checked) + " odd prime pairs");
}

// --- curves ----------------------------------------------------------------

CheckResult chk_table_digits(Ctx&) {
    std::set<int> rows_hit;
    int vectors = 0;
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<int> digits(6);
        for (int j = 0; j < 6; ++j) digits[static_cast<size_t>(j)] = (mask >> j) & 1;
        if (!digits[0] && !digits[1] && !digits[2] && !digits[3]) continue; // would need (1+i)^4 | d
        EvenReduction red = decode_reduction_row(digits);
        if (red.f2 % 2 != 0)
            return make("curves.table_digits", false, "odd conductor exponent in a row");
        rows_hit.insert(red.row);
        ++vectors;
    }
    if (rows_hit.size() != reduction_table_rows)
        return make("curves.table_digits", false,
                    "only " + std::to_string(rows_hit.size()) + " of 12 rows reachable");
    return make("curves.table_digits", true,
                std::to_string(vectors) + " digit vectors, all 12 rows reachable, all exponents even");
}

CheckResult chk_twist_laws(Ctx& ctx) {
    Rng rng(301);
    int n = ctx.quick ? 40 : 150;
    for (int t = 0; t < n; ++t) {
        GaussInt d = rng.nonzero(200);
        CurveClass c = CurveClass::from(d);
        CurveClass c4 = twist(twist(twist(twist(c, gi_i()), gi_i()), gi_i()), gi_i());
        if (!(c4 == c)) return make("curves.twist_laws", false, "unit twist period at " + to_string(d));
        GaussInt x = rng.nonzero(40), y = rng.nonzero(40);
        if (!(twist(twist(c, x), y) == twist(c, x * y)))
            return make("curves.twist_laws", false, "action law at " + to_string(d));
        if (!(twist(c, x * x * x * x) == c))
            return make("curves.twist_laws", false, "fourth-power twist at " + to_string(d));
    }
    return make("curves.twist_laws", true, std::to_string(n) + " random classes");
}

CheckResult chk_normalize_idem(Ctx& ctx) {
    Rng rng(302);
    int n = ctx.quick ? 60 : 200;
    for (int t = 0; t < n; ++t) {
        GaussInt d = rng.nonzero(100000);
        Normalized nd = normalize_d(d);
        if (nd.d_prime * GaussInt(1) != nd.d_prime || d != nd.d_prime * pow(nd.x, 4))
            return make("curves.normalize_idempotent", false, "decomposition fails at " + to_string(d));
        Normalized again = normalize_d(nd.d_prime);
        if (again.d_prime != nd.d_prime || !again.x.is_one())
            return make("curves.normalize_idempotent", false, "not idempotent at " + to_string(d));
    }
    return make("curves.normalize_idempotent", true, std::to_string(n) + " random d");
}

CheckResult chk_epsilon_order(Ctx&) {
    // orders decided by v(d), degree-two validated directly inside
    struct Case { GaussInt d; GaussInt place; int expect; };
    std::vector<Case> cases = {
        {GaussInt(-1, 2), GaussInt(-1, 2), 4},
        {GaussInt(-1, 2) * GaussInt(-1, 2), GaussInt(-1, 2), 2},
        {GaussInt(-1, 2) * GaussInt(-1, 2) * GaussInt(-1, 2), GaussInt(-1, 2), 4},
        {GaussInt(1, 2), GaussInt(-1, 2), 1},
        {GaussInt(-3), GaussInt(-3), 4},
        {GaussInt(9), GaussInt(-3), 2},
        {GaussInt(-27), GaussInt(-3), 4},
        {GaussInt(-7), GaussInt(-7), 4},
        {GaussInt(49), GaussInt(-7), 2},
    };
    for (const auto& c : cases) {
        int got = epsilon_order(CurveClass::from(c.d), classify_prime(c.place));
        if (got != c.expect)
            return make("curves.epsilon_order", false,
                        "order " + std::to_string(got) + " != " + std::to_string(c.expect) +
                            " at d=" + to_string(c.d));
    }
    return make("curves.epsilon_order", true,
                std::to_string(cases.size()) + " cases incl. degree-two direct validation");
}

// --- hecke -------------------------------------------------------------------

const std::vector<GaussInt>& sweep_curves() {
    static const std::vector<GaussInt> ds = {GaussInt(1), gi_i(), GaussInt(-1, 2), GaussInt(-3),
                                             GaussInt(1, 2)};
    return ds;
}

CheckResult chk_hasse(Ctx& ctx) {
    long bound = ctx.quick ? 500 : 2000;
    for (const auto& d : sweep_curves())
        for (const auto& v : good_odd_places(d, bound)) {
            long count = count_points(d, v);
            double N = v.place_norm().get_d();
            if (std::fabs(N + 1 - count) > 2 * std::sqrt(N) + 1e-9)
                return make("hecke.hasse_bound", false,
                            "bound fails at d=" + to_string(d) + ", place " + to_string(v.generator));
        }
    return make("hecke.hasse_bound", true, "5 curves, places below norm " + std::to_string(bound));
}

CheckResult chk_hecke_norm(Ctx& ctx) {
    long bound = ctx.quick ? 1000 : 5000;
    for (const auto& d : sweep_curves())
        for (const auto& v : good_odd_places(d, bound)) {
            if (v.kind != PlaceKind::degree_one) continue;
            GaussInt chi = hecke_at_prime(d, v).value;
            if (chi.norm() != v.residue_char)
                return make("hecke.value_norm", false,
                            "norm(chi) != p at d=" + to_string(d) + ", p=" + v.residue_char.get_str());
        }
    return make("hecke.value_norm", true, "degree-one places below norm " + std::to_string(bound));
}

CheckResult chk_hecke_twist(Ctx& ctx) {
    Rng rng(401);
    int n = ctx.quick ? 50 : 200;
    auto places = odd_places_up_to(2000);
    int done = 0;
    while (done < n) {
        GaussInt d = rng.nonzero(100);
        GaussInt x = rng.nonzero(20);
        const auto& v = places[static_cast<size_t>(rng.below(static_cast<long>(places.size())))];
        if (divides(v.generator, d) || divides(v.generator, x)) continue;
        GaussInt a = hecke_at_prime(d, v).value;
        GaussInt b = hecke_at_prime(d * pow(x, 4), v).value;
        if (a != b)
            return make("hecke.twist_invariance", false,
                        "chi changed under x^4 twist at d=" + to_string(d));
        ++done;
    }
    return make("hecke.twist_invariance", true, std::to_string(n) + " samples");
}

CheckResult chk_trace_sweep(Ctx& ctx) {
    long bound = ctx.quick ? 1000 : 10000;
    for (const auto& d : sweep_curves()) {
        auto places = good_odd_places(d, bound);
        std::vector<uint8_t> ok(places.size(), 0);
        parallel_for(places.size(), ctx.threads, [&](size_t i) {
            ok[i] = verify_trace(d, places[i]) ? 1 : 0;
        });
        for (size_t i = 0; i < places.size(); ++i)
            if (!ok[i])
                return make("hecke.trace_sweep", false,
                            "trace formula fails at d=" + to_string(d) + ", place " +
                                to_string(places[i].generator));
    }
    return make("hecke.trace_sweep", true,
                "5 curves, every good odd place below norm " + std::to_string(bound));
}

// --- rootnum -----------------------------------------------------------------

CheckResult chk_root_modulus(Ctx& ctx) {
    std::vector<GaussInt> ds = {GaussInt(-1, 2), GaussInt(-3), GaussInt(3, 2) * GaussInt(-3),
                                GaussInt(1, 2) * GaussInt(-7)};
    for (const auto& d : ds) {
        CurveClass c = CurveClass::from(d);
        for (const auto& [pi, e] : c.odd_bad) {
            RootNumber w = local_root_number(c, classify_prime(pi), 1000000, &ctx.cache);
            if (std::fabs(static_cast<double>(w.numeric.abs()) - 1.0) > 1e-9)
                return make("rootnum.modulus_one", false, "|w| != 1 at d=" + to_string(d));
            if (w.cert && qc_dist(w.numeric, w.cert->value()) > 1e-9)
                return make("rootnum.modulus_one", false,
                            "certificate drifts from numeric at d=" + to_string(d));
        }
    }
    RootNumber arch = archimedean_root_number();
    if (qc_dist(arch.numeric, QComplex(0, -1)) != 0)
        return make("rootnum.modulus_one", false, "archimedean value is not -i");
    return make("rootnum.modulus_one", true, "bad places of 4 curves + archimedean");
}

CheckResult chk_route_equivalence(Ctx& ctx) {
    Rng rng(501);
    int wanted = ctx.quick ? 6 : 20;
    int done = 0;
    double worst = 0;
    while (done < wanted) {
        GaussInt d = normalize_d(rng.nonzero(60)).d_prime;
        if (d.is_unit()) continue;
        CurveClass c = CurveClass::from(d);
        if (c.odd_bad.empty()) continue;
        for (const auto& [pi, e] : c.odd_bad) {
            PrimeClass v = classify_prime(pi);
            RootNumber a = local_root_number(c, v, 1000000, &ctx.cache);
            QComplex b = local_root_oracle(c.d, v, Integer(0), 1000000, &ctx.cache);
            double dist = qc_dist(a.numeric, b);
            worst = std::max(worst, dist);
            if (dist > 1e-9)
                return make("rootnum.route_equivalence", false,
                            "routes differ by " + std::to_string(dist) + " at d=" + to_string(c.d) +
                                ", place " + to_string(pi));
        }
        ++done;
    }
    std::ostringstream os;
    os << wanted << " curves, worst gap " << worst;
    return make("rootnum.route_equivalence", true, os.str());
}

CheckResult chk_nusym(Ctx& ctx) {
    long bound = ctx.quick ? 300 : 2000;
    int count = 0;
    for (const auto& pi : primary_primes_up_to(bound)) {
        if (!is_three_plus_two_i_mod4(pi) || pi.im == 0) continue;
        auto ratios = unit_twist_table(pi, &ctx.cache);
        std::set<int> seen;
        for (const auto& r : ratios) seen.insert(r.k);
        if (seen.size() != 4)
            return make("rootnum.nusym", false, "twist ratios not all of mu_4 at " + to_string(pi));
        if (!ratios[0].is_one())
            return make("rootnum.nusym", false, "m = 0 ratio is not 1 at " + to_string(pi));
        for (int m = 0; m < 4; ++m)
            if (ratios[static_cast<size_t>(m)] != ratios[1].pow(m))
                return make("rootnum.nusym", false, "ratio at m is not (ratio at 1)^m at " + to_string(pi));
        ++count;
    }
    return make("rootnum.nusym", true,
                std::to_string(count) + " primes == 3+2i mod 4 below norm " + std::to_string(bound));
}

CheckResult chk_expanding_d(Ctx& ctx) {
    Rng rng(502);
    int wanted = ctx.quick ? 25 : 100;
    std::vector<GaussInt> base_ds = {GaussInt(-1, 2), GaussInt(3, 2), GaussInt(-1, 2) * GaussInt(-3),
                                     GaussInt(-1, 6), GaussInt(3, 2) * GaussInt(-7)};
    std::vector<long> qprimes;
    for (long q = 3; q <= 100; q += 4)
        if (is_probable_prime(Integer(q))) qprimes.push_back(q);

    int done = 0;
    while (done < wanted) {
        const GaussInt& d = base_ds[static_cast<size_t>(rng.below(static_cast<long>(base_ds.size())))];
        long qp = qprimes[static_cast<size_t>(rng.below(static_cast<long>(qprimes.size())))];
        long k = 1 + rng.below(3);
        GaussInt mq(-qp, 0);
        CurveClass c = CurveClass::from(d);
        if (divides(mq, c.d)) continue;
        GaussInt dk = c.d * pow(mq, static_cast<unsigned long>(k));
        CurveClass ck = CurveClass::from(dk);
        for (const auto& [pi, e] : c.odd_bad) {
            PrimeClass v = classify_prime(pi);
            RootNumber w0 = local_root_number(c, v, 1000000, &ctx.cache);
            RootNumber wk = local_root_number(ck, v, 1000000, &ctx.cache);
            if (!w0.cert || !wk.cert)
                return make("rootnum.expanding_d", false, "missing certificate at d=" + to_string(c.d));
            if (v.kind == PlaceKind::degree_one) {
                Certificate expect =
                    w0.cert->times({quartic_symbol(mq, pi).conj().pow(k), {}});
                if (!(*wk.cert == expect))
                    return make("rootnum.expanding_d", false,
                                "identity (1) fails at d=" + to_string(c.d) + ", q'=" + std::to_string(qp) +
                                    ", k=" + std::to_string(k));
            } else {
                if (!(*wk.cert == *w0.cert))
                    return make("rootnum.expanding_d", false,
                                "identity (2) fails at d=" + to_string(c.d) + ", q'=" + std::to_string(qp) +
                                    ", k=" + std::to_string(k));
            }
        }
        ++done;
    }
    return make("rootnum.expanding_d", true, std::to_string(wanted) + " sampled (d, q', k) triples");
}

CheckResult chk_root_twist4(Ctx& ctx) {
    Rng rng(503);
    int n = ctx.quick ? 10 : 30;
    int done = 0;
    while (done < n) {
        GaussInt d = normalize_d(rng.nonzero(40)).d_prime;
        if (d.is_unit()) continue;
        CurveClass c = CurveClass::from(d);
        if (c.odd_bad.empty()) continue;
        GaussInt x = rng.nonzero(10);
        bool okx = true;
        for (const auto& [pi, e] : c.odd_bad)
            if (divides(pi, x)) okx = false;
        if (!okx) continue;
        for (const auto& [pi, e] : c.odd_bad) {
            PrimeClass v = classify_prime(pi);
            RootNumber a = local_root_number(c, v, 1000000, &ctx.cache);
            RootNumber b = local_root_number(CurveClass::from(d * pow(x, 4)), v, 1000000, &ctx.cache);
            if (qc_dist(a.numeric, b.numeric) > 1e-9)
                return make("rootnum.fourth_power_twist", false,
                            "w changed under x^4 twist at d=" + to_string(d));
        }
        ++done;
    }
    return make("rootnum.fourth_power_twist", true, std::to_string(n) + " twists");
}

CheckResult chk_deg2_gauss(Ctx& ctx) {
    long qmax = ctx.quick ? 23 : 50;
    for (long q = 3; q <= qmax; q += 4) {
        if (!is_probable_prime(Integer(q))) continue;
        PrimeClass v{PlaceKind::degree_two, GaussInt(-q, 0), Integer(q)};
        for (long n = 1; n <= 3; ++n) {
            GaussInt d = pow(GaussInt(-q, 0), static_cast<unsigned long>(n));
            QComplex g = gauss_sum(d, v, 1000000, &ctx.cache);
            double expect = (n == 2) ? 1.0 : -1.0;
            if (qc_dist(g, QComplex(__float128(expect))) > 1e-9)
                return make("rootnum.deg2_gauss_pm1", false,
                            "G != " + std::to_string(expect) + " at q=" + std::to_string(q) +
                                ", n=" + std::to_string(n));
        }
    }
    return make("rootnum.deg2_gauss_pm1", true, "q <= " + std::to_string(qmax) + ", n in {1,2,3}");
}

// --- experiments ---------------------------------------------------------------

CheckResult chk_enumq_recount(Ctx& ctx) {
    long X = ctx.quick ? 2000 : 10000;
    QFamily fam = enumerate_Q(static_cast<double>(X));
    // direct recount over squarefree integers with every prime factor == 3 mod 4
    size_t direct = 0;
    for (long v = 1; v <= X; ++v) {
        long n = v;
        bool ok = true;
        for (long p = 2; p * p <= n && ok; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0 || p % 4 != 3) ok = false;
        }
        if (ok && n > 1 && n % 4 != 3) ok = false;
        if (ok) ++direct;
    }
    if (direct != fam.members.size())
        return make("experiments.enumQ_recount", false,
                    "enumerated " + std::to_string(fam.members.size()) + ", direct filter " +
                        std::to_string(direct));
    return make("experiments.enumQ_recount", true,
                std::to_string(fam.members.size()) + " members at X = " + std::to_string(X));
}

CheckResult chk_pattern_class(Ctx& ctx) {
    // d = (-1+2i)(-3): within the class {3 | Q} the term certificate divided
    // by the degree-one quadratic symbols must be constant
    GaussInt d = GaussInt(-1, 2) * GaussInt(-3);
    QFamily fam = enumerate_Q(ctx.quick ? 300 : 2000);
    Integer p5(5);
    std::optional<Certificate> ref;
    int used = 0;
    for (long long Q : fam.members) {
        if (Q % 3 != 0) continue;
        if (used >= 50) break;
        CurveClass c = CurveClass::from(d * GaussInt(static_cast<long>(Q)));
        RootNumber r = global_root_ratio(c, 1000000, &ctx.cache);
        if (!r.cert) return make("experiments.pattern_class_constant", false, "missing certificate");
        // strip the quadratic symbols over the degree-one prime p = 5
        Mu4 quad;
        long K = static_cast<long>(Q / -3); // the part coprime to d, with its sign
        for (const auto& [pr, e] : factor_integer(Integer(std::labs(K))))
            if (jacobi_symbol(-pr, p5) < 0) quad *= Mu4(2);
        Certificate norm = r.cert->over({quad, {}});
        if (!ref) ref = norm;
        else if (!(*ref == norm))
            return make("experiments.pattern_class_constant", false,
                        "class factor varies at Q = " + std::to_string(Q));
        ++used;
    }
    return make("experiments.pattern_class_constant", true,
                std::to_string(used) + " members of the {3 | Q} class");
}

CheckResult chk_sweep_terms(Ctx& ctx) {
    GaussInt d(-1, 2);
    QFamily fam = enumerate_Q(100);
    for (long long Q : fam.members) {
        CurveClass c = CurveClass::from(d * GaussInt(static_cast<long>(Q)));
        RootNumber r = global_root_ratio(c, 1000000, &ctx.cache);
        if (std::fabs(static_cast<double>(r.numeric.abs()) - 1.0) > 1e-9)
            return make("experiments.term_modulus", false, "|term| != 1 at Q = " + std::to_string(Q));
    }
    return make("experiments.term_modulus", true,
                std::to_string(fam.members.size()) + " members at X = 100");
}

CheckResult chk_density_self(Ctx& ctx) {
    DensityWitness w = density_scan(2.0, 0.5, 3000, &ctx.cache);
    double dist = std::abs(w.value.to_complex() - std::polar(1.0, 2.0));
    if (dist >= 0.5)
        return make("experiments.density_self_verifying", false, "witness outside its own ball");
    std::ostringstream os;
    os << "witness d=" << to_string(w.curve.d) << " at distance " << dist;
    return make("experiments.density_self_verifying", true, os.str());
}

CheckResult chk_mertens_quick(Ctx& ctx) {
    double X = ctx.quick ? 100000 : 1000000;
    MertensFit fit = mertens_fit({1, 0}, 3, 4, X);
    if (std::fabs(fit.fitted_exponent - fit.predicted_exponent) > 0.3) {
        std::ostringstream os;
        os << "slope " << fit.fitted_exponent << " vs predicted " << fit.predicted_exponent;
        return make("experiments.mertens_smoke", false, os.str());
    }
    std::ostringstream os;
    os << "slope " << fit.fitted_exponent << " ~ " << fit.predicted_exponent << " at X = " << X;
    return make("experiments.mertens_smoke", true, os.str());
}

} // namespace

std::vector<CheckResult> run_selftest(bool quick, int threads) {
    Ctx ctx{quick, threads, {}};
    std::vector<CheckResult> out;
    out.push_back(chk_factor_roundtrip(ctx));
    out.push_back(chk_primary_unique(ctx));
    out.push_back(chk_primary_patterns(ctx));
    out.push_back(chk_digit_roundtrip(ctx));
    out.push_back(chk_sym_multiplicative(ctx));
    out.push_back(chk_sym_conjugation(ctx));
    out.push_back(chk_sym_associates(ctx));
    out.push_back(chk_sym_congruence(ctx));
    out.push_back(chk_sym_rational(ctx));
    out.push_back(chk_sym_reciprocity(ctx));
    out.push_back(chk_sym_supplements(ctx));
    out.push_back(chk_sym_square_jacobi(ctx));
    out.push_back(chk_sym_fast(ctx));
    out.push_back(chk_jacobi_reciprocity(ctx));
    out.push_back(chk_table_digits(ctx));
    out.push_back(chk_twist_laws(ctx));
    out.push_back(chk_normalize_idem(ctx));
    out.push_back(chk_epsilon_order(ctx));
    out.push_back(chk_hasse(ctx));
    out.push_back(chk_hecke_norm(ctx));
    out.push_back(chk_hecke_twist(ctx));
    out.push_back(chk_trace_sweep(ctx));
    out.push_back(chk_root_modulus(ctx));
    out.push_back(chk_route_equivalence(ctx));
    out.push_back(chk_nusym(ctx));
    out.push_back(chk_expanding_d(ctx));
    out.push_back(chk_root_twist4(ctx));
    out.push_back(chk_deg2_gauss(ctx));
    out.push_back(chk_enumq_recount(ctx));
    out.push_back(chk_pattern_class(ctx));
    out.push_back(chk_sweep_terms(ctx));
    out.push_back(chk_density_self(ctx));
    out.push_back(chk_mertens_quick(ctx));
    return out;
}

} // namespace cmroot
