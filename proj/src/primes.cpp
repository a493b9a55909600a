#include "cmroot/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

namespace cmroot {

namespace {

std::vector<uint32_t> sieve(uint32_t limit) {
    std::vector<uint32_t> out;
    if (limit < 2) return out;
    std::vector<uint8_t> comp(limit + 1, 0);
    for (uint32_t i = 2; static_cast<uint64_t>(i) * i <= limit; ++i)
        if (!comp[i])
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
                comp[j] = 1;
    for (uint32_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

} // namespace

const std::vector<uint32_t>& primes_below_million() {
    static const std::vector<uint32_t> cache = sieve(1u << 20);
    return cache;
}

std::vector<uint32_t> primes_below(uint32_t limit) {
    const auto& base = primes_below_million();
    if (limit <= (1u << 20)) {
        auto it = std::upper_bound(base.begin(), base.end(), limit);
        return {base.begin(), it};
    }
    return sieve(limit);
}

void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn) {
    if (limit < 2) return;
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    auto base = primes_below(static_cast<uint32_t>(root));
    for (uint64_t p : base) fn(p);

    const uint64_t seg = 1u << 21;
    std::vector<uint8_t> comp(seg);
    for (uint64_t lo = root + 1; lo <= limit; lo += seg) {
        uint64_t hi = std::min(limit, lo + seg - 1);
        std::fill(comp.begin(), comp.begin() + (hi - lo + 1), 0);
        for (uint64_t p : base) {
            if (p * p > hi) break;
            uint64_t start = ((lo + p - 1) / p) * p;
            for (uint64_t j = start; j <= hi; j += p) comp[j - lo] = 1;
        }
        for (uint64_t v = lo; v <= hi; ++v)
            if (!comp[v - lo]) fn(v);
    }
}

std::vector<uint64_t> primes_in_progression(uint64_t limit, uint64_t modulus, uint64_t residue) {
    std::vector<uint64_t> out;
    for_each_prime(limit, [&](uint64_t p) {
        if (p % modulus == residue) out.push_back(p);
    });
    return out;
}

} // namespace cmroot
