#include "cmroot/experiments.hpp"
#include "cmroot/parallel.hpp"
#include "cmroot/primes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace cmroot {

QFamily enumerate_Q(double X, bool include_unit) {
    if (X < 1) fail(Errc::usage, "enumerate_Q needs X >= 1");
    if (X > 4e18) fail(Errc::effort_bound, "enumerate_Q bound too large");
    QFamily fam;
    fam.X = X;
    auto limit = static_cast<uint64_t>(X);
    std::vector<uint64_t> qs = primes_in_progression(limit, 4, 3);

    std::vector<long long> out;
    if (include_unit) out.push_back(1);
    // depth-first over the sorted primes with product pruning; the signed
    // product carries (-1)^{#factors}
    std::vector<std::pair<size_t, long long>> stack; // (index to multiply in, product so far)
    for (size_t i = 0; i < qs.size(); ++i) stack.push_back({i, 1});
    while (!stack.empty()) {
        auto [i, prod] = stack.back();
        stack.pop_back();
        long long next = prod * -static_cast<long long>(qs[i]);
        out.push_back(next);
        for (size_t j = i + 1; j < qs.size(); ++j) {
            if (static_cast<double>(std::llabs(next)) * static_cast<double>(qs[j]) > X) break;
            stack.push_back({j, next});
        }
    }
    std::sort(out.begin(), out.end(), [](long long a, long long b) {
        if (std::llabs(a) != std::llabs(b)) return std::llabs(a) < std::llabs(b);
        return a < b;
    });
    fam.members = std::move(out);
    return fam;
}

namespace {

double unit_circle_dist(double alpha, double theta) {
    return 2.0 * std::fabs(std::sin((alpha - theta) / 2.0));
}

} // namespace

DensityWitness density_scan(double theta, double eps, long prime_norm_bound,
                            GaussSumCache* cache) {
    if (eps <= 0) fail(Errc::usage, "density_scan needs eps > 0");
    long best_tried = 0;
    for (uint32_t p : primes_below(static_cast<uint32_t>(prime_norm_bound))) {
        if (p % 8 != 5) continue; // primary generators == 3+2i mod 4 exactly here
        best_tried = p;
        auto fact = factor_primary(GaussInt(static_cast<long>(p)));
        std::vector<GaussInt> gens;
        for (const auto& [pi, e] : fact.odd) gens.push_back(pi);
        std::sort(gens.begin(), gens.end(), norm_lex_less);
        for (const auto& pi : gens) {
            double base = 1.5 * std::atan2(pi.im.get_d(), pi.re.get_d());
            double best = 1e9;
            for (int k = 0; k < 4; ++k)
                best = std::min(best, unit_circle_dist(base + k * M_PI / 2.0, theta));
            if (best >= eps) continue; // the four candidates are exactly these angles
            PrimeClass v = classify_prime(pi);
            for (int m = 0; m < 4; ++m) {
                CurveClass c = CurveClass::from(unit_from_exponent(m) * pi);
                RootNumber w = local_root_number(c, v, 1000000, cache);
                std::complex<double> val = w.to_complex();
                std::complex<double> target = std::polar(1.0, theta);
                if (std::abs(val - target) < eps) return {c, v, w.numeric, m};
            }
        }
    }
    fail(Errc::search_exhausted,
         "no witness below prime norm " + std::to_string(best_tried) + " for the requested ball");
}

std::array<Mu4, 4> unit_twist_table(const GaussInt& pi, GaussSumCache* cache) {
    PrimeClass v = classify_prime(pi);
    if (v.kind != PlaceKind::degree_one || !is_three_plus_two_i_mod4(v.generator))
        fail(Errc::usage, "unit twist table needs a primary degree-one prime == 3+2i mod 4");
    RootNumber base = local_root_number(CurveClass::from(v.generator), v, 1000000, cache);
    if (!base.cert) fail(Errc::unsnapped, "base root number has no certificate");
    std::array<Mu4, 4> out;
    for (int m = 0; m < 4; ++m) {
        CurveClass c = CurveClass::from(unit_from_exponent(m) * v.generator);
        RootNumber w = local_root_number(c, v, 1000000, cache);
        if (!w.cert) fail(Errc::unsnapped, "twisted root number has no certificate");
        Certificate ratio = w.cert->over(*base.cert);
        if (!ratio.is_pure_mu4()) fail(Errc::internal, "twist ratio kept a transcendental part");
        out[static_cast<size_t>(m)] = ratio.zeta;
    }
    return out;
}

std::vector<CurveClass> many_theta_witnesses(const GaussInt& d, const PrimeClass& v, int count,
                                             long prime_search_bound, GaussSumCache* cache) {
    CurveClass base = CurveClass::from(d);
    RootNumber w0 = local_root_number(base, v, 1000000, cache);
    if (!w0.cert) fail(Errc::unsnapped, "base root number has no certificate");

    std::vector<CurveClass> out;
    for (uint32_t q : primes_below(static_cast<uint32_t>(prime_search_bound))) {
        if (static_cast<int>(out.size()) >= count) break;
        if (q % 4 != 3) continue;
        GaussInt mq(-static_cast<long>(q), 0);
        if (divides(mq, base.d) || mq == v.generator) continue;
        CurveClass c = base;
        if (v.kind == PlaceKind::degree_two) {
            c = twist(base, mq);
        } else {
            if (quartic_symbol(mq, v.generator) != Mu4(2)) continue; // need (-q/pi) = -1
            c = twist(base, mq * mq);
        }
        RootNumber w = local_root_number(c, v, 1000000, cache);
        if (!w.cert || !(*w.cert == *w0.cert))
            fail(Errc::internal, "twist changed the certified local root number");
        out.push_back(c);
    }
    if (static_cast<int>(out.size()) < count)
        fail(Errc::search_exhausted, "not enough twist primes below the search bound");
    return out;
}

SweepReport average_sweep(const GaussInt& d, const std::vector<double>& X_list,
                          bool include_unit_q, int threads, long effort_cap,
                          GaussSumCache* cache) {
    PrimaryFactorization fact = factor_primary(d);
    if (fact.n_u != 0 || fact.n_2 != 0)
        fail(Errc::invalid_shape, "average sweep needs d with no unit or even part");
    for (const auto& [pi, e] : fact.odd) {
        PrimeClass v = classify_prime(pi);
        if (v.kind == PlaceKind::degree_one && e != 1)
            fail(Errc::invalid_shape,
                 "average sweep needs the degree-one part of d squarefree (found " +
                     to_string(pi) + "^" + std::to_string(e) + ")");
    }
    if (!std::is_sorted(X_list.begin(), X_list.end()))
        fail(Errc::usage, "X list must be ascending");
    if (X_list.empty()) fail(Errc::usage, "X list is empty");

    GaussSumCache local_cache;
    if (!cache) cache = &local_cache;
    // prewarm the degree-one Gauss sums; Q never touches those places
    for (const auto& [pi, e] : fact.odd) {
        PrimeClass v = classify_prime(pi);
        if (v.kind == PlaceKind::degree_one) gauss_sum(d, v, effort_cap, cache);
    }

    QFamily fam = enumerate_Q(X_list.back(), include_unit_q);
    std::vector<std::complex<double>> terms(fam.members.size());
    parallel_for(fam.members.size(), threads, [&](size_t i) {
        GaussInt dq = d * GaussInt(Integer(static_cast<long>(fam.members[i])));
        CurveClass c = CurveClass::from(dq);
        terms[i] = global_root_ratio(c, effort_cap, cache).to_complex();
    });

    SweepReport rep;
    rep.d = d;
    rep.include_unit_q = include_unit_q;
    size_t upto = 0;
    std::complex<double> sum = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (double X : X_list) {
        while (upto < fam.members.size() &&
               static_cast<double>(std::llabs(fam.members[upto])) <= X) {
            sum += terms[upto];
            ++upto;
        }
        auto t1 = std::chrono::steady_clock::now();
        SweepRow row;
        row.X = X;
        row.members = upto;
        row.mean = upto ? sum / static_cast<double>(upto) : 0.0;
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.rows.push_back(row);
    }
    return rep;
}

MertensFit mertens_fit(std::complex<double> xi, long a, long m, double X) {
    if (m < 1 || std::gcd(a % m, m) != 1) fail(Errc::usage, "mertens_fit needs gcd(a, m) = 1");
    if (X < 100) fail(Errc::usage, "mertens_fit needs X >= 100");
    if (X > 2e9) fail(Errc::effort_bound, "mertens_fit bound above the sieve cap");

    std::vector<double> thresholds;
    double y = X < 2000 ? 250 : 1000;
    for (; y < X; y *= 1.3) thresholds.push_back(y);
    thresholds.push_back(X);

    double logmag = 0, argsum = 0;
    std::vector<std::pair<double, double>> pts; // (log log Y, log |P(Y)|)
    size_t ti = 0;
    uint64_t residue = static_cast<uint64_t>(((a % m) + m) % m);
    for_each_prime(static_cast<uint64_t>(X), [&](uint64_t p) {
        while (ti < thresholds.size() && static_cast<double>(p) > thresholds[ti]) {
            pts.emplace_back(std::log(std::log(thresholds[ti])), logmag);
            ++ti;
        }
        if (p % static_cast<uint64_t>(m) != residue) return;
        double inv = 1.0 / static_cast<double>(p);
        logmag += 0.5 * std::log1p(inv * (std::norm(xi) * inv - 2.0 * xi.real()));
        argsum += std::atan2(-xi.imag() * inv, 1.0 - xi.real() * inv);
    });
    while (ti < thresholds.size()) {
        pts.emplace_back(std::log(std::log(thresholds[ti])), logmag);
        ++ti;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    double fit_min = X < 2000 ? 0.0 : 999.0; // dodge small-prime transients
    for (size_t i = 0; i < pts.size(); ++i) {
        if (thresholds[i] < fit_min) continue;
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
        ++n;
    }
    if (n < 2) fail(Errc::usage, "not enough ladder points for the fit");
    double denom = static_cast<double>(n) * sxx - sx * sx;
    double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;

    long phi = 0;
    for (long t = 1; t <= m; ++t)
        if (std::gcd(t, m) == 1) ++phi;

    MertensFit out;
    out.product = std::polar(std::exp(logmag), argsum);
    out.fitted_exponent = slope;
    out.predicted_exponent = -std::cos(std::arg(xi)) / static_cast<double>(phi);
    out.ladder_points = n;
    return out;
}

} // namespace cmroot
