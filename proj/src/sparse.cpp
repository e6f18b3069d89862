#include "ybhom/sparse.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ybhom/errors.hpp"

namespace ybhom {

i64 SparseIntMatrix::nnz() const {
    i64 n = 0;
    for (const auto& c : cols_) n += static_cast<i64>(c.size());
    return n;
}

Int SparseIntMatrix::at(i64 r, i64 c) const {
    const auto& col = cols_[static_cast<std::size_t>(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, i64 row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return Int(0);
}

void SparseIntMatrix::set(i64 r, i64 c, Int v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols())
        throw InputError("matrix index out of range");
    auto& col = cols_[static_cast<std::size_t>(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, i64 row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (v == 0)
            col.erase(it);
        else
            it->second = std::move(v);
    } else if (v != 0) {
        col.emplace(it, r, std::move(v));
    }
}

void SparseIntMatrix::adopt_column(i64 c, std::vector<Entry> entries) {
    cols_[static_cast<std::size_t>(c)] = std::move(entries);
}

SparseIntMatrix SparseIntMatrix::transposed() const {
    SparseIntMatrix t(cols(), rows_);
    std::vector<i64> counts(static_cast<std::size_t>(rows_), 0);
    for_each([&](i64 r, i64, const Int&) { ++counts[static_cast<std::size_t>(r)]; });
    for (i64 r = 0; r < rows_; ++r)
        t.cols_[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(counts[static_cast<std::size_t>(r)]));
    // column-major traversal ascends in (col, row), so each target column
    // stays sorted by its row index (= source col) without a sort pass
    for (i64 c = 0; c < cols(); ++c)
        for (const auto& [r, v] : cols_[static_cast<std::size_t>(c)])
            t.cols_[static_cast<std::size_t>(r)].emplace_back(c, v);
    return t;
}

bool product_is_zero(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols() != b.rows())
        throw InputError("dimension mismatch in product check: " + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()));
    std::vector<Int> acc(static_cast<std::size_t>(a.rows()));
    std::vector<i64> touched;
    for (i64 c = 0; c < b.cols(); ++c) {
        touched.clear();
        for (const auto& [k, w] : b.column(c)) {
            for (const auto& [r, v] : a.column(k)) {
                auto& slot = acc[static_cast<std::size_t>(r)];
                if (slot == 0) touched.push_back(r);
                slot += v * w;
            }
        }
        bool zero = true;
        for (i64 r : touched) {
            if (acc[static_cast<std::size_t>(r)] != 0) zero = false;
            acc[static_cast<std::size_t>(r)] = 0;
        }
        if (!zero) return false;
    }
    return true;
}

std::vector<Int> mat_vec(const SparseIntMatrix& m, std::span<const Int> x) {
    if (static_cast<i64>(x.size()) != m.cols()) throw InputError("apply: dimension mismatch");
    std::vector<Int> y(static_cast<std::size_t>(m.rows()));
    for (i64 c = 0; c < m.cols(); ++c) {
        if (x[static_cast<std::size_t>(c)] == 0) continue;
        for (const auto& [r, v] : m.column(c)) y[static_cast<std::size_t>(r)] += v * x[static_cast<std::size_t>(c)];
    }
    return y;
}

std::vector<Rational> mat_vec(const SparseIntMatrix& m, std::span<const Rational> x) {
    if (static_cast<i64>(x.size()) != m.cols()) throw InputError("apply: dimension mismatch");
    std::vector<Rational> y(static_cast<std::size_t>(m.rows()));
    for (i64 c = 0; c < m.cols(); ++c) {
        if (x[static_cast<std::size_t>(c)] == 0) continue;
        for (const auto& [r, v] : m.column(c))
            y[static_cast<std::size_t>(r)] += Rational(v) * x[static_cast<std::size_t>(c)];
    }
    return y;
}

void write_sms(const SparseIntMatrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << " M\n";
    m.for_each([&](i64 r, i64 c, const Int& v) { out << r + 1 << ' ' << c + 1 << ' ' << v << '\n'; });
    out << "0 0 0\n";
}

SparseIntMatrix read_sms(std::istream& in) {
    i64 rows = 0, cols = 0;
    std::string marker;
    if (!(in >> rows >> cols >> marker) || marker != "M")
        throw InputError("bad SMS header, expected \"<rows> <cols> M\"");
    if (rows < 0 || cols < 0) throw InputError("bad SMS dimensions");
    SparseIntMatrix m(rows, cols);
    i64 r, c;
    Int v;
    for (;;) {
        if (!(in >> r >> c >> v)) throw InputError("truncated SMS stream (missing 0 0 0)");
        if (r == 0 && c == 0) {
            if (v != 0) throw InputError("bad SMS terminator");
            break;
        }
        if (r < 1 || r > rows || c < 1 || c > cols) throw InputError("SMS entry out of range");
        m.set(r - 1, c - 1, std::move(v));
    }
    return m;
}

}  // namespace ybhom
