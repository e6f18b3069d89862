#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ybhom/homology.hpp"

namespace ybhom {

struct CheckResult {
    std::string check;
    int m = 0, n = 0;
    std::optional<Variant> variant;
    bool pass = false;
    std::string expected, got;
};

//! Betti ranks over Q for one (m, n): expects m^(n-1), m^(n-1)-(m-1)^(n-1),
//! (m-1)^(n-1) for YB/D/NYB, via prime-certified ranks.
CheckResult verify_betti(Engine& eng, int m, int n);

//! Every invariant factor of H_n (all variants) divides m when m is odd,
//! 2m when m is even.
CheckResult verify_torsion_bound(Engine& eng, int m, int n);

//! Compares the computed H_n^NYB(C_m; Z) with the conjectured value; reports
//! match/mismatch for this computed cell only.
CheckResult verify_conjecture(Engine& eng, int m, int n);

//! Free rank and torsion multiset of H_n^YB equal the direct sum of the D
//! and NYB parts.
CheckResult verify_splitting(Engine& eng, int m, int n);

//! delta^n(f.y) = delta^n(f).y on the full dual basis and all y. Requires
//! property (I); throws InputError for maps that fail it.
CheckResult verify_equivariance(Engine& eng, const YBMap& map, int n);

//! cocycle_basis facts for one (m, n): every F_i integrally closed
//! (delta F_i = 0) and the m^(n-1) classes rationally independent modulo
//! coboundaries (rank augmentation test).
CheckResult verify_cocycle_basis(Engine& eng, int m, int n);

//! Golden data: expected integral homology of cyclic biquandles C_2..C_5 in
//! degrees 1..5 for all three variants (60 cells).
struct TableCell {
    int m, n;
    Variant variant;
    AbelianGroup expected;
};
const std::vector<TableCell>& reference_table();

struct TableRun {
    struct Row {
        TableCell cell;
        AbelianGroup got;
        bool match;
        std::string error;  // set when the cell computation itself failed
    };
    std::vector<Row> rows;  // canonical order: m, n, variant
    int matches = 0;
    bool all_match() const { return matches == static_cast<int>(rows.size()); }
};

//! Recomputes the golden table (optionally a subset of m values) with
//! cell-level parallelism; row order is canonical regardless of scheduling.
TableRun run_reference_table(Engine& eng, const std::vector<int>& subset_m = {}, int threads = 1);

//! Runs f(0..count-1) on `threads` workers; rethrows the first exception.
void parallel_for(i64 count, int threads, const std::function<void(i64)>& f);

}  // namespace ybhom
