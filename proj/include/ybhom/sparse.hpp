#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ybhom/numbers.hpp"

namespace ybhom {

//! Exact sparse integer matrix, column-major, rows sorted within a column.
//! Zero entries are never stored. Immutable once assembled (the builders in
//! this codebase freeze columns in canonical sorted order).
class SparseIntMatrix {
public:
    using Entry = std::pair<i64, Int>;  // (row, value), value != 0

    SparseIntMatrix() = default;
    SparseIntMatrix(i64 rows, i64 cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}

    i64 rows() const { return rows_; }
    i64 cols() const { return static_cast<i64>(cols_.size()); }
    i64 nnz() const;

    const std::vector<Entry>& column(i64 c) const { return cols_[static_cast<std::size_t>(c)]; }
    Int at(i64 r, i64 c) const;

    //! Inserts or overwrites one entry; setting 0 erases. Build/test helper,
    //! linear in the column length.
    void set(i64 r, i64 c, Int v);

    //! Adopts a column that is already sorted by row with no zero values.
    void adopt_column(i64 c, std::vector<Entry> entries);

    SparseIntMatrix transposed() const;

    template <typename F>
    void for_each(F&& f) const {  // f(row, col, const Int&)
        for (i64 c = 0; c < cols(); ++c)
            for (const auto& [r, v] : cols_[static_cast<std::size_t>(c)]) f(r, c, v);
    }

    bool operator==(const SparseIntMatrix& o) const = default;

private:
    i64 rows_ = 0;
    std::vector<std::vector<Entry>> cols_;
};

//! True iff a*b is the zero matrix; never materializes the product.
bool product_is_zero(const SparseIntMatrix& a, const SparseIntMatrix& b);

//! Dense matrix-vector product M*x.
std::vector<Int> mat_vec(const SparseIntMatrix& m, std::span<const Int> x);
std::vector<Rational> mat_vec(const SparseIntMatrix& m, std::span<const Rational> x);

//! SMS sparse text format: "<rows> <cols> M", then 1-based "i j v" triples,
//! terminated by "0 0 0".
void write_sms(const SparseIntMatrix& m, std::ostream& out);
SparseIntMatrix read_sms(std::istream& in);

}  // namespace ybhom
