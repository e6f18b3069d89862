#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ybhom/sparse.hpp"

namespace ybhom {

//! Unimodular transcripts of an elimination: U*M*V is zero outside `pivots`.
//! U is rows x rows, V is cols x cols (stored by columns). Only kept on
//! request; on 15k-column matrices they are the dominant memory cost.
struct SmithTransforms {
    struct Pivot {
        i64 row, col;
        Int value;  // signed diagonal value at (row, col)
    };
    std::vector<std::vector<Int>> u_rows;  // U by rows
    std::vector<std::vector<Int>> v_cols;  // V by columns
    std::vector<Pivot> pivots;
};

struct SmithForm {
    std::vector<Int> invariant_factors;  // d_1 | d_2 | ... | d_r, all >= 1
    std::optional<SmithTransforms> transforms;

    i64 rank() const { return static_cast<i64>(invariant_factors.size()); }
    std::vector<Int> nontrivial_factors() const;  // the d_i > 1
};

struct SmithOptions {
    bool with_transforms = false;
    Budget budget;
};

//! Invariant factors of M over Z, canonical divisibility chain. Runs a
//! checked-int64 elimination first and transparently promotes the whole
//! computation to arbitrary precision on overflow. Pivot rule: nonzero entry
//! minimizing (|value|, Markowitz fill count), ties by lowest (row, col).
SmithForm smith_normal_form(const SparseIntMatrix& m, const SmithOptions& opts = {});

//! Exact rank over Z_p (p prime, p < 2^31).
i64 rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const Budget& budget = {});

//! Exact rank over Q: certified by agreement of ranks modulo three distinct
//! primes >= min_prime (callers pass something > 2m to stay away from small
//! torsion); disagreement falls back to all-integer elimination.
i64 rank_over_q(const SparseIntMatrix& m, std::uint32_t min_prime = 97, const Budget& budget = {});

//! Some x with Mx = b over Z, or nullopt. Solved through SNF transcripts.
std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& m, std::span<const Int> b,
                                              const Budget& budget = {});

//! Some x with Mx = b over Q, or nullopt. Dense exact elimination.
std::optional<std::vector<Rational>> solve_rational(const SparseIntMatrix& m,
                                                    std::span<const Rational> b);

//! Z-basis of { x : Mx = 0 } (a saturated submodule, read off the SNF
//! column transform).
std::vector<std::vector<Int>> kernel_basis(const SparseIntMatrix& m, const Budget& budget = {});

//! Finitely generated abelian group in canonical form.
struct AbelianGroup {
    i64 free_rank = 0;
    std::vector<Int> torsion;  // factors > 1, each dividing the next

    bool operator==(const AbelianGroup& o) const = default;
    //! Canonicalizes an arbitrary factor multiset into the divisibility chain.
    static AbelianGroup make(i64 free_rank, std::vector<Int> factors);
    std::string to_string() const;  // "0", "Z", "Z^9+Z_3", ...
};

//! H = ker(d_n) / im(d_next) for a verified pair d_n * d_next = 0.
//! Optional precomputed Smith forms avoid recomputation.
AbelianGroup homology_from_boundaries(const SparseIntMatrix& d_n, const SparseIntMatrix& d_next,
                                      const SmithForm* sf_n = nullptr,
                                      const SmithForm* sf_next = nullptr,
                                      const Budget& budget = {});

}  // namespace ybhom
