#pragma once

#include <span>
#include <string>
#include <vector>

#include "ybhom/biquandle.hpp"
#include "ybhom/sparse.hpp"

namespace ybhom {

enum class Variant { yb, d, nyb };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);  // "yb"/"d"/"nyb", throws InputError

//! Mixed-radix codes for n-tuples over {0..m-1}: code = sum x_k * m^(n-k),
//! i.e. x_1 is the most significant digit. Bijection [0, m^n) <-> X^n.
struct TupleCodec {
    int m = 0, n = 0;
    i64 count = 1;  // m^n

    TupleCodec(int m, int n, i64 limit = 1'000'000'000);
    i64 encode(std::span<const Element> t) const;
    void decode(i64 code, std::span<Element> out) const;
};

//! Left face d^l_{i,n+1}: threads x_i leftward through R, then keeps the R2
//! component of the final pair. i = 1 deletes the first coordinate.
void face_left(const YBMap& map, int i, std::span<const Element> in, std::span<Element> out);

//! Right face d^r_{i,n+1}: threads x_i rightward through R, then keeps the R1
//! component of the final pair. i = n+1 deletes the last coordinate.
void face_right(const YBMap& map, int i, std::span<const Element> in, std::span<Element> out);

//! True iff some adjacent pair of the tuple is a fixed point of R.
bool is_degenerate(const YBMap& map, std::span<const Element> t);

//! Ordered generator set of C_n for one variant: every tuple for YB,
//! degenerate tuples for D (empty when n < 2), the complement for NYB.
//! Codes ascend; `position` maps code -> index in `generators` or -1.
struct ChainBasis {
    int m = 0, n = 0;
    Variant variant = Variant::yb;
    std::vector<i64> generators;
    std::vector<std::int32_t> position;  // size m^n

    static ChainBasis make(const YBMap& map, int n, Variant variant, const Budget& budget = {});
    i64 size() const { return static_cast<i64>(generators.size()); }
};

//! Matrix of the boundary from the degree-n basis to the degree-(n-1) basis
//! of the chosen variant, columns indexed by source generators in basis
//! order. Signed face coincidences are accumulated per column and frozen in
//! sorted sparse layout. For D the closure of the degenerate subcomplex is
//! asserted; for NYB image terms landing on degenerate tuples are dropped.
//! Variants D/NYB require the diagonal condition and throw InputError
//! otherwise.
SparseIntMatrix boundary_matrix(const YBMap& map, int n, Variant variant,
                                const Budget& budget = {});

namespace testing {
//! Deterministically perturbs face_right while alive (fault-injection hook
//! for the golden-table diff path).
class FaceFaultGuard {
public:
    FaceFaultGuard();
    ~FaceFaultGuard();
    FaceFaultGuard(const FaceFaultGuard&) = delete;
    FaceFaultGuard& operator=(const FaceFaultGuard&) = delete;
};
}  // namespace testing

}  // namespace ybhom
