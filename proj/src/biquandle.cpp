#include "ybhom/biquandle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace ybhom {

namespace {

std::string pair_str(Element a, Element b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

long long mod_ll(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

bool is_permutation_table(const std::vector<Element>& vals, int m) {
    std::vector<char> seen(m, 0);
    for (Element v : vals) {
        if (v < 0 || v >= m || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

}  // namespace

YBMap YBMap::from_tables(int m, const std::vector<std::vector<Element>>& r1,
                         const std::vector<std::vector<Element>>& r2) {
    if (m <= 0) throw InputError("set size must be positive, got " + std::to_string(m));
    auto check = [m](const std::vector<std::vector<Element>>& t, const char* name) {
        if (static_cast<int>(t.size()) != m)
            throw InputError(std::string(name) + " has " + std::to_string(t.size()) +
                             " rows, expected " + std::to_string(m));
        for (int a = 0; a < m; ++a) {
            if (static_cast<int>(t[a].size()) != m)
                throw InputError(std::string(name) + " row " + std::to_string(a) + " has " +
                                 std::to_string(t[a].size()) + " entries, expected " +
                                 std::to_string(m));
            for (Element v : t[a])
                if (v < 0 || v >= m)
                    throw InputError(std::string(name) + " entry " + std::to_string(v) +
                                     " out of range [0," + std::to_string(m) + ")");
        }
    };
    check(r1, "R1");
    check(r2, "R2");
    YBMap map;
    map.m = m;
    map.r1.reserve(std::size_t(m) * m);
    map.r2.reserve(std::size_t(m) * m);
    for (int a = 0; a < m; ++a) {
        map.r1.insert(map.r1.end(), r1[a].begin(), r1[a].end());
        map.r2.insert(map.r2.end(), r2[a].begin(), r2[a].end());
    }
    return map;
}

std::uint64_t YBMap::fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(m));
    for (Element v : r1) mix(static_cast<std::uint64_t>(v) + 1);
    mix(0x9e3779b97f4a7c15ull);
    for (Element v : r2) mix(static_cast<std::uint64_t>(v) + 1);
    return h;
}

bool check_yang_baxter(const YBMap& map, std::array<Element, 3>* witness) {
    const int m = map.m;
    auto r = [&map](Element a, Element b) { return map.apply(a, b); };
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b)
            for (Element c = 0; c < m; ++c) {
                // (R x Id)(Id x R)(R x Id), rightmost applied first
                auto [l1, l2] = r(a, b);
                auto [l3, l4] = r(l2, c);
                auto [l5, l6] = r(l1, l3);
                // (Id x R)(R x Id)(Id x R)
                auto [q1, q2] = r(b, c);
                auto [q3, q4] = r(a, q1);
                auto [q5, q6] = r(q4, q2);
                if (l5 != q3 || l6 != q5 || l4 != q6) {
                    if (witness) *witness = {a, b, c};
                    return false;
                }
            }
    return true;
}

bool check_property_i(const YBMap& map) {
    const int m = map.m;
    std::vector<int> cls(m, 0);
    int classes = 1;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(m);
        for (Element y = 0; y < m; ++y) {
            std::vector<int> sig;
            sig.reserve(2 * m + 1);
            sig.push_back(cls[y]);
            for (Element x = 0; x < m; ++x) {
                sig.push_back(map.r2_at(x, y));
                sig.push_back(cls[map.r1_at(x, y)]);
            }
            auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
            (void)inserted;
            next[y] = it->second;
        }
        int next_classes = static_cast<int>(ids.size());
        cls = std::move(next);
        if (next_classes == classes) break;
        classes = next_classes;
    }
    for (Element a = 0; a < m; ++a)
        for (Element y = 0; y < m; ++y)
            if (cls[map.r1_at(a, y)] != cls[y]) return false;
    return true;
}

bool check_property_i_bounded(const YBMap& map, int max_degree) {
    const int m = map.m;
    // phi_y on X^n: tuple part of d^l_{n+1,n+1}(x_1..x_n, y)
    std::vector<Element> t, out;
    for (int n = 1; n <= max_degree; ++n) {
        i64 count = 1;
        for (int k = 0; k < n; ++k) count *= m;
        std::vector<std::vector<Element>> phi(m);
        for (Element y = 0; y < m; ++y) {
            auto& tab = phi[y];
            tab.resize(static_cast<std::size_t>(count) * n);
            t.assign(n, 0);
            for (i64 code = 0; code < count; ++code) {
                Element c = y;
                for (int j = n - 1; j >= 0; --j) {
                    tab[static_cast<std::size_t>(code) * n + j] = map.r2_at(t[j], c);
                    c = map.r1_at(t[j], c);
                }
                for (int j = n - 1; j >= 0; --j) {  // next tuple
                    if (++t[j] < m) break;
                    t[j] = 0;
                }
            }
        }
        for (Element a = 0; a < m; ++a)
            for (Element y = 0; y < m; ++y)
                if (phi[y] != phi[map.r1_at(a, y)]) return false;
    }
    return true;
}

AxiomReport inspect(const YBMap& map) {
    const int m = map.m;
    AxiomReport rep;
    std::array<Element, 3> w{};
    rep.ybe = check_yang_baxter(map, &w);
    if (!rep.ybe)
        rep.first_failure = "yang-baxter fails at (a,b,c)=(" + std::to_string(w[0]) + "," +
                            std::to_string(w[1]) + "," + std::to_string(w[2]) + ")";

    {
        std::vector<char> seen(std::size_t(m) * m, 0);
        rep.r_bijective = true;
        for (Element a = 0; a < m && rep.r_bijective; ++a)
            for (Element b = 0; b < m; ++b) {
                auto [c, d] = map.apply(a, b);
                auto& slot = seen[std::size_t(c) * m + d];
                if (slot) {
                    rep.r_bijective = false;
                    if (rep.first_failure.empty())
                        rep.first_failure = "R is not a bijection: " + pair_str(c, d) +
                                            " is hit twice, second preimage " + pair_str(a, b);
                    break;
                }
                slot = 1;
            }
    }

    rep.left_invertible = true;
    for (Element a = 0; a < m; ++a) {
        std::vector<Element> row(m);
        for (Element b = 0; b < m; ++b) row[b] = map.r1_at(a, b);
        if (!is_permutation_table(row, m)) {
            rep.left_invertible = false;
            if (rep.first_failure.empty())
                rep.first_failure =
                    "R1(" + std::to_string(a) + ",.) is not a bijection (left-invertibility)";
            break;
        }
    }

    rep.right_invertible = true;
    for (Element b = 0; b < m; ++b) {
        std::vector<Element> col(m);
        for (Element a = 0; a < m; ++a) col[a] = map.r2_at(a, b);
        if (!is_permutation_table(col, m)) {
            rep.right_invertible = false;
            if (rep.first_failure.empty())
                rep.first_failure =
                    "R2(.," + std::to_string(b) + ") is not a bijection (right-invertibility)";
            break;
        }
    }

    rep.diagonal = true;
    for (Element a = 0; a < m; ++a) {
        int fixed = 0;
        for (Element b = 0; b < m; ++b)
            if (map.is_fixed_pair(a, b)) ++fixed;
        if (fixed != 1) {
            rep.diagonal = false;
            if (rep.first_failure.empty())
                rep.first_failure = "diagonal condition fails: a=" + std::to_string(a) + " has " +
                                    std::to_string(fixed) + " fixed pairs, expected 1";
            break;
        }
    }

    rep.property_i = check_property_i(map);
    return rep;
}

CertifyResult CertifyResult::of(const YBMap& map) {
    CertifyResult res;
    res.axioms = inspect(map);
    if (res.axioms.is_biquandle()) res.biquandle = Biquandle(map, res.axioms);
    return res;
}

Biquandle require_biquandle(const YBMap& map) {
    CertifyResult res = certify(map);
    if (!res.biquandle)
        throw InputError("not a biquandle: " + res.axioms.first_failure);
    return *std::move(res.biquandle);
}

Biquandle make_cyclic(int m) {
    if (m < 1) throw InputError("cyclic biquandle needs m >= 1");
    YBMap map;
    map.m = m;
    map.r1.resize(std::size_t(m) * m);
    map.r2.resize(std::size_t(m) * m);
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) {
            map.r1[std::size_t(a) * m + b] = static_cast<Element>((b + 1) % m);
            map.r2[std::size_t(a) * m + b] = static_cast<Element>(mod_ll(a - 1, m));
        }
    CertifyResult res = certify(map);
    if (!res.biquandle)
        throw InternalError("cyclic biquandle failed certification: " + res.axioms.first_failure);
    return *std::move(res.biquandle);
}

Biquandle make_alexander(int m, long long s, long long t) {
    if (m < 1) throw InputError("alexander biquandle needs m >= 1");
    const long long sm = mod_ll(s, m), tm = mod_ll(t, m);
    if (std::gcd(sm, static_cast<long long>(m)) != 1)
        throw InputError("alexander parameter s=" + std::to_string(s) + " is not a unit mod " +
                         std::to_string(m));
    if (std::gcd(tm, static_cast<long long>(m)) != 1)
        throw InputError("alexander parameter t=" + std::to_string(t) + " is not a unit mod " +
                         std::to_string(m));
    if (mod_ll((1 - sm) * (1 - tm), m) != 0)
        throw InputError("alexander parameters are incompatible: (1-s)(1-t) != 0 mod " +
                         std::to_string(m));
    YBMap map;
    map.m = m;
    map.r1.resize(std::size_t(m) * m);
    map.r2.resize(std::size_t(m) * m);
    for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
            map.r1[std::size_t(x) * m + y] = static_cast<Element>(mod_ll((1 - sm) * x + sm * y, m));
            map.r2[std::size_t(x) * m + y] = static_cast<Element>(mod_ll(tm * x + (1 - tm) * y, m));
        }
    CertifyResult res = certify(map);
    if (!res.biquandle)
        throw InternalError("alexander biquandle failed certification: " +
                            res.axioms.first_failure);
    return *std::move(res.biquandle);
}

int Presentation::trivial_count() const {
    int k = 0;
    for (const auto& r : relations) k += r.trivial;
    return k;
}

Presentation structure_group_presentation(const Biquandle& b) {
    const YBMap& map = b.map();
    Presentation p;
    p.generator_count = map.m;
    p.relations.reserve(std::size_t(map.m) * map.m);
    for (Element a = 0; a < map.m; ++a)
        for (Element y = 0; y < map.m; ++y) {
            Presentation::Relation rel;
            rel.lhs = {a, y};
            rel.rhs = {map.r1_at(a, y), map.r2_at(a, y)};
            rel.trivial = rel.lhs == rel.rhs;
            p.relations.push_back(std::move(rel));
        }
    return p;
}

AbelianGroup abelianization(const Presentation& p) {
    SparseIntMatrix rel(static_cast<i64>(p.relations.size()), p.generator_count);
    for (i64 r = 0; r < static_cast<i64>(p.relations.size()); ++r) {
        std::vector<long long> exp(p.generator_count, 0);
        for (int g : p.relations[static_cast<std::size_t>(r)].lhs) ++exp[g];
        for (int g : p.relations[static_cast<std::size_t>(r)].rhs) --exp[g];
        for (int g = 0; g < p.generator_count; ++g)
            if (exp[g] != 0) rel.set(r, g, exp[g]);
    }
    SmithForm sf = smith_normal_form(rel);
    return AbelianGroup::make(p.generator_count - sf.rank(), sf.nontrivial_factors());
}

}  // namespace ybhom
