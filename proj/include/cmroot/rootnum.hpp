#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "cmroot/curves.hpp"
#include "cmroot/hecke.hpp"
#include "cmroot/qcomplex.hpp"

namespace cmroot {

// Exact description of a unit-circle value: zeta * prod (pi/|pi|)^(h/2) with
// zeta in mu_4 and integer half-step exponents h.  Local root numbers carry at
// most one factor; products keep the list merged and canonically ordered.
struct CertFactor {
    GaussInt pi;
    int half_steps;
    bool operator==(const CertFactor& o) const {
        return pi == o.pi && half_steps == o.half_steps;
    }
};

struct Certificate {
    Mu4 zeta;
    std::vector<CertFactor> factors;

    QComplex value() const;
    Certificate times(const Certificate& o) const;
    Certificate over(const Certificate& o) const; // this / o
    bool operator==(const Certificate& o) const {
        return zeta == o.zeta && factors == o.factors;
    }
    bool is_pure_mu4() const { return factors.empty(); }
    std::string str() const;
};

struct RootNumber {
    QComplex numeric;
    std::optional<Certificate> cert;
    std::complex<double> to_complex() const { return numeric.to_complex(); }
};

struct Congruence {
    GaussInt modulus, residue;
};

struct CongruenceSystem {
    std::vector<Congruence> items;
    bool require_primary = true;
};

// Least-norm prime element (primary when requested) satisfying the system,
// ties broken by principal argument in [0, 2pi).
// Errors: inadmissible_system, search_exhausted.
GaussInt find_prime_congruent(const CongruenceSystem& sys, const Integer& norm_bound);

// Cache of normalized Gauss sums keyed by (place generator, v(d)).
// Lookups copy the value under a lock so sweeps can share one cache.
class GaussSumCache {
public:
    bool find(const std::string& key, QComplex& out) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = m_.find(key);
        if (it == m_.end()) return false;
        out = it->second;
        return true;
    }
    void put(const std::string& key, const QComplex& v) {
        std::lock_guard<std::mutex> lk(mu_);
        m_.emplace(key, v);
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, QComplex> m_;
};

// Normalized Gauss sum G(chi^v) = N(v)^{-1/2} sum over (O/pi)^x of the unit
// character times e^{2 pi i tr(x/beta)}, with beta the primary generator
// (degree one) or -q (degree two) and the residue embedding fixed in the
// README.  Errors: even_place, good_reduction, effort_bound.
QComplex gauss_sum(const GaussInt& d, const PrimeClass& v, long effort_cap = 1000000,
                   GaussSumCache* cache = nullptr);

// G as zeta * (pi/|pi|)^(h/2) with h in {1, 0, -1}; nullopt if no coset fits
// within tol.
struct SnappedGauss {
    Mu4 zeta;
    int half_steps;
};
std::optional<SnappedGauss> snap_gauss_sum(const QComplex& g, const GaussInt& pi,
                                           double tol = 1e-9);
// Nearest fourth root of unity to v/base; error unsnapped outside tol.
Mu4 snap_mu4(const QComplex& v, const QComplex& base, double tol = 1e-9);

RootNumber archimedean_root_number(); // always -i

// Closed-form local root number at a finite place of E_d (d fourth-power-free
// via CurveClass).  Errors: unsupported_even_bad_reduction at the even place
// with bad reduction; propagated errors.
RootNumber local_root_number(const CurveClass& c, const PrimeClass& v,
                             long effort_cap = 1000000, GaussSumCache* cache = nullptr);
RootNumber local_root_number(const GaussInt& d, const PrimeClass& v,
                             long effort_cap = 1000000, GaussSumCache* cache = nullptr);

// Independent route: CRT-search a primary prime x replicating the defining
// congruences, evaluate the global epsilon at x, multiply by the numeric
// Gauss sum.  Errors: search_exhausted; propagated.
QComplex local_root_oracle(const GaussInt& d, const PrimeClass& v,
                           const Integer& search_bound = Integer(0), // 0: automatic
                           long effort_cap = 1000000, GaussSumCache* cache = nullptr);

// w(chi)/w_2(chi) = -i * prod over odd bad places of the local root numbers.
RootNumber global_root_ratio(const CurveClass& c, long effort_cap = 1000000,
                             GaussSumCache* cache = nullptr);
RootNumber global_root_ratio(const GaussInt& d, long effort_cap = 1000000,
                             GaussSumCache* cache = nullptr);

QComplex mu4_qc(Mu4 m);
QComplex unit_qc(const GaussInt& pi); // pi/|pi|

} // namespace cmroot
