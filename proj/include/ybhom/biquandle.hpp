#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ybhom/errors.hpp"
#include "ybhom/smith.hpp"

namespace ybhom {

using Element = std::int32_t;  // canonical elements 0..m-1

//! A set-theoretic map R(a,b) = (r1(a,b), r2(a,b)) on {0..m-1}^2 given by two
//! m x m tables, row index = first argument. No axioms are assumed; run
//! inspect()/certify() to find out what the map actually is.
struct YBMap {
    int m = 0;
    std::vector<Element> r1, r2;  // row-major, size m*m

    Element r1_at(Element a, Element b) const { return r1[std::size_t(a) * m + b]; }
    Element r2_at(Element a, Element b) const { return r2[std::size_t(a) * m + b]; }
    std::pair<Element, Element> apply(Element a, Element b) const {
        return {r1_at(a, b), r2_at(a, b)};
    }
    bool is_fixed_pair(Element a, Element b) const {
        return r1_at(a, b) == a && r2_at(a, b) == b;
    }

    //! Validates dimensions and entry ranges; throws InputError.
    static YBMap from_tables(int m, const std::vector<std::vector<Element>>& r1,
                             const std::vector<std::vector<Element>>& r2);

    //! Stable content hash used as cache key.
    std::uint64_t fingerprint() const;

    bool operator==(const YBMap&) const = default;
};

struct AxiomReport {
    bool ybe = false;               // hexagon on all m^3 triples
    bool r_bijective = false;       // R permutes X x X
    bool left_invertible = false;   // R1(a,.) bijective for each a
    bool right_invertible = false;  // R2(.,b) bijective for each b
    bool diagonal = false;          // exactly one fixed b per a
    bool property_i = false;        // all-degree action property (informational)
    std::string first_failure;      // witness of the first failed axiom, empty if none

    bool is_yb_operator() const { return ybe && r_bijective; }
    bool is_biquandle() const {
        return ybe && r_bijective && left_invertible && right_invertible && diagonal;
    }
};

//! Runs every axiom check and records verdicts plus a first-failure witness.
AxiomReport inspect(const YBMap& map);

//! Hexagon equation checked by explicit composition on every triple.
//! On failure `witness` (if non-null) receives the offending (a,b,c).
bool check_yang_baxter(const YBMap& map, std::array<Element, 3>* witness = nullptr);

//! All-degree form of the action property: the coarsest equivalence with
//! y ~ y' => R2(x,y)=R2(x,y') and R1(x,y) ~ R1(x,y') for all x must relate
//! y to R1(a,y) for all a,y. Stabilizes in at most m refinement rounds.
bool check_property_i(const YBMap& map);

//! Degree-bounded cross-validation of check_property_i: compares the chain
//! action phi_y on X^n pointwise for n = 1..max_degree.
bool check_property_i_bounded(const YBMap& map, int max_degree = 4);

//! A certified biquandle: all five axioms verified at construction.
class Biquandle {
public:
    const YBMap& map() const { return map_; }
    const AxiomReport& axioms() const { return axioms_; }
    int m() const { return map_.m; }

    friend struct CertifyResult;
    friend Biquandle make_cyclic(int m);
    friend Biquandle make_alexander(int m, long long s, long long t);

private:
    Biquandle(YBMap map, AxiomReport axioms)
        : map_(std::move(map)), axioms_(std::move(axioms)) {}
    YBMap map_;
    AxiomReport axioms_;
};

struct CertifyResult {
    std::optional<Biquandle> biquandle;  // engaged iff all axioms passed
    AxiomReport axioms;

    static CertifyResult of(const YBMap& map);
};

//! certify() per the module contract: Biquandle or a diagnostic naming the
//! first failing axiom with its witness.
inline CertifyResult certify(const YBMap& map) { return CertifyResult::of(map); }

//! certify() that throws InputError with the diagnostic instead.
Biquandle require_biquandle(const YBMap& map);

//! Cyclic biquandle C_m: R(a,b) = (b+1, a-1) mod m.
Biquandle make_cyclic(int m);

//! Alexander biquandle on Z_m: R(x,y) = ((1-s)x+sy, tx+(1-t)y) mod m.
//! Requires s,t units mod m and (1-s)(1-t) = 0 mod m.
Biquandle make_alexander(int m, long long s, long long t);

struct Presentation {
    struct Relation {
        std::vector<int> lhs, rhs;  // words in generator indices
        bool trivial = false;       // lhs == rhs
    };
    int generator_count = 0;
    std::vector<Relation> relations;  // all m^2 relations, (a,b) ascending

    int trivial_count() const;
};

//! Structure group presentation: generators x_0..x_{m-1}, relations
//! x_a x_b = x_{R1(a,b)} x_{R2(a,b)}.
Presentation structure_group_presentation(const Biquandle& b);

//! Abelianization via Smith normal form of the exponent-difference matrix
//! (one row per relation, one column per generator).
AbelianGroup abelianization(const Presentation& p);

}  // namespace ybhom
