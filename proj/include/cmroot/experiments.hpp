#pragma once

#include <array>
#include <complex>

#include "cmroot/rootnum.hpp"

namespace cmroot {

// Squarefree products Q = prod(-q) of distinct rational primes q == 3 mod 4
// with |Q| <= X, ascending by (|Q|, Q).  Q = 1 (the empty product) is a
// member unless excluded.
struct QFamily {
    double X = 0;
    std::vector<long long> members;
};
QFamily enumerate_Q(double X, bool include_unit = true);

struct DensityWitness {
    CurveClass curve;
    PrimeClass place;
    QComplex value;
    int unit_power = 0; // d = i^m * pi
};

// First curve/place pair (primary degree-one pi == 3+2i mod 4 scanned by
// increasing norm, unit twists m = 0..3) whose local root number falls in the
// open ball of radius eps around e^{i theta}.  Errors: search_exhausted.
DensityWitness density_scan(double theta, double eps, long prime_norm_bound,
                            GaussSumCache* cache = nullptr);

// {w(chi_{i^m pi}) / w(chi_pi)}_{m=0..3}, exact.
std::array<Mu4, 4> unit_twist_table(const GaussInt& pi, GaussSumCache* cache = nullptr);

// `count` distinct curve classes sharing the certified local root number of
// E_d at v: degree-two places twist by fresh primes -q'; degree-one places
// twist by (-q)^2 for q with (-q/pi)_4 = -1.  Errors: search_exhausted.
std::vector<CurveClass> many_theta_witnesses(const GaussInt& d, const PrimeClass& v, int count,
                                             long prime_search_bound = 100000,
                                             GaussSumCache* cache = nullptr);

struct SweepRow {
    double X = 0;
    size_t members = 0;
    std::complex<double> mean;
    double wall_ms = 0; // reported to the log stream, never to output files
};
struct SweepReport {
    GaussInt d;
    bool include_unit_q = true;
    std::vector<SweepRow> rows;
};

// Mean of w/w_2 over the twist family dQ, Q in Q(X), for each X in the
// ascending list; terms are computed once at the largest X and reused.
// Errors: invalid_shape unless d is a product of distinct primary degree-one
// primes and powers of primary degree-two primes.
SweepReport average_sweep(const GaussInt& d, const std::vector<double>& X_list,
                          bool include_unit_q = true, int threads = 1,
                          long effort_cap = 1000000, GaussSumCache* cache = nullptr);

struct MertensFit {
    std::complex<double> product;  // P(X)
    double fitted_exponent = 0;    // slope of log|P(Y)| against log log Y
    double predicted_exponent = 0; // -cos(arg xi)/phi(m)
    size_t ladder_points = 0;
};

// P(Y) = prod_{p <= Y, p == a mod m} (1 - xi/p) on a geometric ladder up to X,
// least-squares exponent fit over Y >= 1000.
MertensFit mertens_fit(std::complex<double> xi, long a, long m, double X);

} // namespace cmroot
