#pragma once

#include "cmroot/curves.hpp"
#include "cmroot/symbols.hpp"

namespace cmroot {

struct HeckeValue {
    PrimeClass place;
    GaussInt value; // chi(p) exactly
};

// Projective points of y^2 = x^3 - dx over the residue field of the place
// (including infinity), by exhaustive enumeration.
// Errors: bad_reduction if the place divides 2d; effort_bound above the cap.
long count_points(const GaussInt& d, const PrimeClass& place, long effort_cap = 1000000);

// chi(p) = conj((d/p)_4) * pi with pi the primary generator.
// Errors: bad_reduction, not_coprime, even_place.
HeckeValue hecke_at_prime(const GaussInt& d, const PrimeClass& place);

// Point count vs N(p) + 1 - trace for degree one; the three-case count for
// degree two, the case chosen by the quartic power status of d in F_{q^2}.
bool verify_trace(const GaussInt& d, const PrimeClass& place, long effort_cap = 1000000);

// Good odd places for E_d with norm <= bound, ascending (norm, generator).
std::vector<PrimeClass> good_odd_places(const GaussInt& d, long norm_bound);

// i -> u with pi | (i - u): the residue embedding O/pi = F_p at a degree-one
// place.  Swapping u for -u would swap the place with its conjugate.
uint64_t embedding_u(const PrimeClass& place);

// All odd places with norm <= bound (degree one: both conjugates).
std::vector<PrimeClass> odd_places_up_to(long norm_bound);

} // namespace cmroot
