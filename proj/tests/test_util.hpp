#pragma once

// Shared test oracles, kept independent of the library's threading face maps.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ybhom/biquandle.hpp"
#include "ybhom/chain_complex.hpp"

namespace ybtest {

using namespace ybhom;

//! d^l_{i,n+1} evaluated by literally composing the operator factors
//! (Id^{i-2} x R x Id^{n-i+1}), ..., (Id x R x Id^{n-2}), (R_2 x Id^{n-1}).
inline std::vector<Element> oracle_face_left(const YBMap& map, int i, std::vector<Element> t) {
    for (int k = i; k >= 3; --k) {  // plain R factor at 1-based positions (k-1, k)
        auto [a, b] = map.apply(t[static_cast<std::size_t>(k - 2)], t[static_cast<std::size_t>(k - 1)]);
        t[static_cast<std::size_t>(k - 2)] = a;
        t[static_cast<std::size_t>(k - 1)] = b;
    }
    if (i >= 2) {
        std::vector<Element> out(t.begin() + 1, t.end());
        out[0] = map.r2_at(t[0], t[1]);
        return out;
    }
    return std::vector<Element>(t.begin() + 1, t.end());
}

//! d^r_{i,n+1} by literal composition of
//! (Id^{n-1} x R_1), (Id^{n-2} x R x Id), ..., (Id^{i-1} x R x Id^{n-i}).
inline std::vector<Element> oracle_face_right(const YBMap& map, int i, std::vector<Element> t) {
    const int n = static_cast<int>(t.size()) - 1;
    for (int k = i; k <= n - 1; ++k) {  // plain R factor at 1-based positions (k, k+1)
        auto [a, b] = map.apply(t[static_cast<std::size_t>(k - 1)], t[static_cast<std::size_t>(k)]);
        t[static_cast<std::size_t>(k - 1)] = a;
        t[static_cast<std::size_t>(k)] = b;
    }
    if (i <= n) {
        std::vector<Element> out(t.begin(), t.end() - 1);
        out[static_cast<std::size_t>(n - 1)] =
            map.r1_at(t[static_cast<std::size_t>(n - 1)], t[static_cast<std::size_t>(n)]);
        return out;
    }
    return std::vector<Element>(t.begin(), t.end() - 1);
}

//! Seeded search for bijective solutions of the hexagon equation: random
//! permutations of X x X, deduplicated by fingerprint.
inline std::vector<YBMap> random_yb_operators(int want, unsigned seed, long long max_attempts = 2'000'000) {
    std::mt19937 rng(seed);
    std::vector<YBMap> found;
    std::vector<std::uint64_t> seen;
    for (long long attempt = 0; attempt < max_attempts && static_cast<int>(found.size()) < want;
         ++attempt) {
        const int m = (attempt % 4 == 0) ? 2 : 3;
        std::vector<int> perm(static_cast<std::size_t>(m) * m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        YBMap map;
        map.m = m;
        map.r1.resize(perm.size());
        map.r2.resize(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
            map.r1[k] = static_cast<Element>(perm[k] / m);
            map.r2[k] = static_cast<Element>(perm[k] % m);
        }
        if (!check_yang_baxter(map)) continue;
        std::uint64_t fp = map.fingerprint();
        if (std::find(seen.begin(), seen.end(), fp) != seen.end()) continue;
        seen.push_back(fp);
        found.push_back(std::move(map));
    }
    return found;
}

inline std::vector<Element> nth_tuple(int m, int n, i64 code) {
    std::vector<Element> t(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        t[static_cast<std::size_t>(k)] = static_cast<Element>(code % m);
        code /= m;
    }
    return t;
}

}  // namespace ybtest
