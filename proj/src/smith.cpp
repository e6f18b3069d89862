#include "ybhom/smith.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <type_traits>

namespace ybhom {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::msb;

// Signals the checked-int64 elimination to restart in arbitrary precision.
struct Overflow {};

template <class V>
struct Ops;

template <>
struct Ops<long long> {
    static unsigned long long uabs(long long x) {
        return x >= 0 ? static_cast<unsigned long long>(x)
                      : ~static_cast<unsigned long long>(x) + 1ull;
    }
    static long long from_int(const Int& x) {
        if (x < std::numeric_limits<long long>::min() || x > std::numeric_limits<long long>::max())
            throw Overflow{};
        return static_cast<long long>(x);
    }
    static Int to_int(long long x) { return Int(x); }
    static long long sub_mul(long long a, long long q, long long b) {  // a - q*b
        long long t, r;
        if (__builtin_mul_overflow(q, b, &t) || __builtin_sub_overflow(a, t, &r)) throw Overflow{};
        return r;
    }
    static bool divides(long long d, long long x) {
        if (d == 1 || d == -1) return true;
        return x % d == 0;
    }
    static long long quot_exact(long long x, long long d) {
        if (d == -1 && x == std::numeric_limits<long long>::min()) throw Overflow{};
        return x / d;
    }
    static long long quot_nearest(long long x, long long d) {
        if (d == -1 && x == std::numeric_limits<long long>::min()) throw Overflow{};
        long long q = x / d, r = x % d;
        if (2 * uabs(r) > uabs(d)) q += ((r > 0) == (d > 0)) ? 1 : -1;
        return q;
    }
    static bool abs_less(long long a, long long b) { return uabs(a) < uabs(b); }
    static bool is_one_abs(long long a) { return a == 1 || a == -1; }
};

template <>
struct Ops<Int> {
    static Int from_int(const Int& x) { return x; }
    static Int to_int(const Int& x) { return x; }
    static Int sub_mul(const Int& a, const Int& q, const Int& b) { return a - q * b; }
    static bool divides(const Int& d, const Int& x) { return x % d == 0; }
    static Int quot_exact(const Int& x, const Int& d) { return x / d; }
    static Int quot_nearest(const Int& x, const Int& d) {
        Int q = x / d, r = x % d;
        if (2 * abs(r) > abs(d)) q += ((r > 0) == (d > 0)) ? 1 : -1;
        return q;
    }
    static bool abs_less(const Int& a, const Int& b) { return abs(a) < abs(b); }
    static bool is_one_abs(const Int& a) { return a == 1 || a == -1; }
};

class Deadline {
public:
    explicit Deadline(i64 wall_ms)
        : enabled_(wall_ms > 0),
          end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(wall_ms)) {}
    void poll() {
        if (!enabled_ || ++ticks_ % 32 != 0) return;
        if (std::chrono::steady_clock::now() > end_)
            throw BudgetError("elimination exceeded the wall-clock budget");
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point end_;
    std::uint64_t ticks_ = 0;
};

//! Row-major sparse elimination over Z with unimodular row/column operations.
//! Pivot rule: the nonzero entry minimizing (|value|, Markowitz fill count),
//! ties broken by lowest (row, col).
template <class V>
class SnfEngine {
public:
    SnfEngine(const SparseIntMatrix& m, bool transforms, const Budget& budget)
        : nrows_(m.rows()),
          ncols_(m.cols()),
          budget_(budget),
          want_tf_(transforms),
          rows_(static_cast<std::size_t>(m.rows())),
          col_rows_(static_cast<std::size_t>(m.cols())),
          row_nnz_(static_cast<std::size_t>(m.rows()), 0),
          col_nnz_(static_cast<std::size_t>(m.cols()), 0),
          row_done_(static_cast<std::size_t>(m.rows()), 0),
          col_done_(static_cast<std::size_t>(m.cols()), 0) {
        if (want_tf_ && nrows_ * nrows_ + ncols_ * ncols_ > budget_.max_entries)
            throw BudgetError("transform transcripts for a " + std::to_string(nrows_) + "x" +
                              std::to_string(ncols_) + " matrix exceed the entry budget");
        m.for_each([this](i64 r, i64 c, const Int& v) {
            V val = Ops<V>::from_int(v);
            check_bits(val);
            rows_[static_cast<std::size_t>(r)].emplace_back(c, std::move(val));
            col_rows_[static_cast<std::size_t>(c)].push_back(r);
            ++row_nnz_[static_cast<std::size_t>(r)];
            ++col_nnz_[static_cast<std::size_t>(c)];
            ++live_;
        });
        check_entries();
        if (want_tf_) {
            u_.assign(static_cast<std::size_t>(nrows_), {});
            for (i64 i = 0; i < nrows_; ++i) {
                u_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(nrows_), V{});
                u_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = V{1};
            }
            v_.assign(static_cast<std::size_t>(ncols_), {});
            for (i64 j = 0; j < ncols_; ++j) {
                v_[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(ncols_), V{});
                v_[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = V{1};
            }
        }
    }

    void run() {
        Deadline deadline(budget_.wall_ms);
        i64 pr = 0, pc = 0;
        while (find_pivot(pr, pc)) {
            deadline.poll();
            const V piv = *entry_at(pr, pc);

            // one reduction op if the pivot does not yet divide its column/row
            i64 bad = -1;
            V bad_val{};
            for_valid_col_rows(pc, [&](i64 r, const V& val) {
                if (bad < 0 && r != pr && !Ops<V>::divides(piv, val)) {
                    bad = r;
                    bad_val = val;
                }
            });
            if (bad >= 0) {
                row_axpy(bad, pr, Ops<V>::quot_nearest(bad_val, piv));
                continue;
            }
            for (const auto& [c, val] : rows_[static_cast<std::size_t>(pr)])
                if (c != pc && !Ops<V>::divides(piv, val)) {
                    bad = c;
                    bad_val = val;
                    break;
                }
            if (bad >= 0) {
                col_axpy(bad, pc, Ops<V>::quot_nearest(bad_val, piv));
                continue;
            }

            // isolate: clear the column by row ops, then the row by col ops
            std::vector<i64> to_clear;
            for_valid_col_rows(pc, [&](i64 r, const V&) {
                if (r != pr) to_clear.push_back(r);
            });
            for (i64 r : to_clear) {
                row_axpy(r, pr, Ops<V>::quot_exact(*entry_at(r, pc), piv));
                deadline.poll();
            }
            std::vector<std::pair<i64, V>> row_snapshot;
            for (const auto& [c, val] : rows_[static_cast<std::size_t>(pr)])
                if (c != pc) row_snapshot.emplace_back(c, val);
            for (const auto& [c, val] : row_snapshot)
                col_axpy(c, pc, Ops<V>::quot_exact(val, piv));

            pivots_.push_back({pr, pc, Ops<V>::to_int(piv)});
            row_done_[static_cast<std::size_t>(pr)] = 1;
            col_done_[static_cast<std::size_t>(pc)] = 1;
        }
    }

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        d.reserve(pivots_.size());
        for (const auto& p : pivots_) d.push_back(abs(p.value));
        return d;
    }

    SmithTransforms take_transforms() {
        SmithTransforms tf;
        tf.pivots = std::move(pivots_);
        tf.u_rows.resize(u_.size());
        for (std::size_t i = 0; i < u_.size(); ++i) {
            tf.u_rows[i].reserve(u_[i].size());
            for (auto& x : u_[i]) tf.u_rows[i].push_back(Ops<V>::to_int(x));
        }
        tf.v_cols.resize(v_.size());
        for (std::size_t j = 0; j < v_.size(); ++j) {
            tf.v_cols[j].reserve(v_[j].size());
            for (auto& x : v_[j]) tf.v_cols[j].push_back(Ops<V>::to_int(x));
        }
        return tf;
    }

    std::vector<SmithTransforms::Pivot> pivots_;

private:
    using Entry = std::pair<i64, V>;

    void check_bits(const V& val) {
        if constexpr (std::is_same_v<V, Int>) {
            if (val != 0 && static_cast<i64>(msb(abs(val))) + 1 > budget_.max_bits)
                throw BudgetError("entry magnitude exceeded the bit-size budget");
        } else {
            (void)val;
        }
    }
    void check_entries() const {
        if (live_ > budget_.max_entries)
            throw BudgetError("stored entries exceeded the budget (" + std::to_string(live_) +
                              " > " + std::to_string(budget_.max_entries) + ")");
    }

    V* entry_at(i64 r, i64 c) {
        auto& row = rows_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, i64 col) { return e.first < col; });
        if (it != row.end() && it->first == c) return &it->second;
        return nullptr;
    }

    //! Visits valid (row, value) pairs of a column in ascending row order,
    //! compacting stale and duplicate ids.
    template <typename F>
    void for_valid_col_rows(i64 c, F&& f) {
        auto& ids = col_rows_[static_cast<std::size_t>(c)];
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::size_t keep = 0;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            i64 r = ids[k];
            if (row_done_[static_cast<std::size_t>(r)]) continue;
            V* e = entry_at(r, c);
            if (!e) continue;
            ids[keep++] = r;
            f(r, *e);
        }
        ids.resize(keep);
    }

    // row_dst -= q * row_src
    void row_axpy(i64 dst, i64 src, V q) {
        if (q == V{}) return;
        auto& d = rows_[static_cast<std::size_t>(dst)];
        auto& s = rows_[static_cast<std::size_t>(src)];
        std::vector<Entry> out;
        out.reserve(d.size() + s.size());
        std::size_t i = 0, j = 0;
        while (i < d.size() || j < s.size()) {
            if (j == s.size() || (i < d.size() && d[i].first < s[j].first)) {
                out.push_back(std::move(d[i++]));
            } else if (i == d.size() || s[j].first < d[i].first) {
                V nv = Ops<V>::sub_mul(V{}, q, s[j].second);
                check_bits(nv);
                if (!(nv == V{})) {
                    ++col_nnz_[static_cast<std::size_t>(s[j].first)];
                    col_rows_[static_cast<std::size_t>(s[j].first)].push_back(dst);
                    ++live_;
                    out.emplace_back(s[j].first, std::move(nv));
                }
                ++j;
            } else {
                V nv = Ops<V>::sub_mul(d[i].second, q, s[j].second);
                check_bits(nv);
                if (nv == V{}) {
                    --col_nnz_[static_cast<std::size_t>(d[i].first)];
                    --live_;
                } else {
                    out.emplace_back(d[i].first, std::move(nv));
                }
                ++i;
                ++j;
            }
        }
        row_nnz_[static_cast<std::size_t>(dst)] = static_cast<i64>(out.size());
        d = std::move(out);
        check_entries();
        if (want_tf_) {
            auto& ud = u_[static_cast<std::size_t>(dst)];
            auto& us = u_[static_cast<std::size_t>(src)];
            for (std::size_t k = 0; k < ud.size(); ++k)
                ud[k] = Ops<V>::sub_mul(ud[k], q, us[k]);
        }
    }

    // col_dst -= q * col_src
    void col_axpy(i64 dst, i64 src, V q) {
        if (q == V{}) return;
        std::vector<std::pair<i64, V>> src_entries;
        for_valid_col_rows(src, [&](i64 r, const V& val) { src_entries.emplace_back(r, val); });
        for (auto& [r, sval] : src_entries) {
            auto& row = rows_[static_cast<std::size_t>(r)];
            auto it = std::lower_bound(row.begin(), row.end(), dst,
                                       [](const Entry& e, i64 col) { return e.first < col; });
            if (it != row.end() && it->first == dst) {
                V nv = Ops<V>::sub_mul(it->second, q, sval);
                check_bits(nv);
                if (nv == V{}) {
                    row.erase(it);
                    --row_nnz_[static_cast<std::size_t>(r)];
                    --col_nnz_[static_cast<std::size_t>(dst)];
                    --live_;
                } else {
                    it->second = std::move(nv);
                }
            } else {
                V nv = Ops<V>::sub_mul(V{}, q, sval);
                check_bits(nv);
                if (!(nv == V{})) {
                    row.emplace(it, dst, std::move(nv));
                    ++row_nnz_[static_cast<std::size_t>(r)];
                    ++col_nnz_[static_cast<std::size_t>(dst)];
                    col_rows_[static_cast<std::size_t>(dst)].push_back(r);
                    ++live_;
                }
            }
        }
        check_entries();
        if (want_tf_) {
            auto& vd = v_[static_cast<std::size_t>(dst)];
            auto& vs = v_[static_cast<std::size_t>(src)];
            for (std::size_t k = 0; k < vd.size(); ++k)
                vd[k] = Ops<V>::sub_mul(vd[k], q, vs[k]);
        }
    }

    bool find_pivot(i64& pr, i64& pc) {
        bool found = false;
        V best_abs{};
        i64 best_cost = 0;
        for (i64 r = 0; r < nrows_; ++r) {
            if (row_done_[static_cast<std::size_t>(r)]) continue;
            for (const auto& [c, val] : rows_[static_cast<std::size_t>(r)]) {
                i64 cost = (row_nnz_[static_cast<std::size_t>(r)] - 1) *
                           (col_nnz_[static_cast<std::size_t>(c)] - 1);
                if (!found || Ops<V>::abs_less(val, best_abs) ||
                    (!Ops<V>::abs_less(best_abs, val) && cost < best_cost)) {
                    // lowest (row, col) wins remaining ties: the scan order
                    // visits (row, col) ascending, so strict improvement only
                    found = true;
                    best_abs = val < V{} ? Ops<V>::sub_mul(V{}, V{1}, val) : val;
                    best_cost = cost;
                    pr = r;
                    pc = c;
                }
            }
        }
        return found;
    }

    i64 nrows_, ncols_;
    Budget budget_;
    bool want_tf_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<i64>> col_rows_;
    std::vector<i64> row_nnz_, col_nnz_;
    std::vector<char> row_done_, col_done_;
    i64 live_ = 0;
    std::vector<std::vector<V>> u_, v_;
};

//! SNF of a diagonal multiset: redistribute so each factor divides the next.
std::vector<Int> canonical_chain(std::vector<Int> diag) {
    std::size_t ones = 0;
    std::vector<Int> nt;
    for (auto& d : diag) {
        if (d == 1)
            ++ones;
        else
            nt.push_back(std::move(d));
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < nt.size(); ++i)
            for (std::size_t j = i + 1; j < nt.size(); ++j)
                if (nt[j] % nt[i] != 0) {
                    Int g = gcd(nt[i], nt[j]);
                    Int l = nt[i] / g * nt[j];
                    nt[i] = std::move(g);
                    nt[j] = std::move(l);
                    changed = true;
                }
    }
    std::sort(nt.begin(), nt.end());
    std::size_t lead = 0;  // gcd steps can demote factors to 1
    while (lead < nt.size() && nt[lead] == 1) ++lead;
    std::vector<Int> out(ones + lead, Int(1));
    out.insert(out.end(), nt.begin() + static_cast<std::ptrdiff_t>(lead), nt.end());
    return out;
}

template <class V>
SmithForm run_snf(const SparseIntMatrix& m, const SmithOptions& opts) {
    SnfEngine<V> eng(m, opts.with_transforms, opts.budget);
    eng.run();
    SmithForm sf;
    sf.invariant_factors = canonical_chain(eng.diagonal());
    if (opts.with_transforms) sf.transforms = eng.take_transforms();
    return sf;
}

}  // namespace

std::vector<Int> SmithForm::nontrivial_factors() const {
    std::vector<Int> out;
    for (const Int& d : invariant_factors)
        if (d > 1) out.push_back(d);
    return out;
}

SmithForm smith_normal_form(const SparseIntMatrix& m, const SmithOptions& opts) {
    try {
        return run_snf<long long>(m, opts);
    } catch (const Overflow&) {
        return run_snf<Int>(m, opts);  // promote and redo from the input
    }
}

namespace {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

//! Row-reduction mod p with (column count, row count) pivoting; rank only.
//! Pivot columns come from a lazy bucket queue keyed by live count: stale
//! bucket entries are skipped on pop, so count updates never pay for lookup.
class ModPElim {
public:
    ModPElim(const SparseIntMatrix& m, std::uint32_t p, const Budget& budget)
        : p_(p),
          budget_(budget),
          rows_(static_cast<std::size_t>(m.rows())),
          col_rows_(static_cast<std::size_t>(m.cols())),
          row_nnz_(static_cast<std::size_t>(m.rows()), 0),
          col_nnz_(static_cast<std::size_t>(m.cols()), 0),
          row_done_(static_cast<std::size_t>(m.rows()), 0),
          buckets_(static_cast<std::size_t>(m.rows()) + 2) {
        m.for_each([this](i64 r, i64 c, const Int& v) {
            std::uint32_t val = static_cast<std::uint32_t>(static_cast<Int>(((v % p_) + p_) % p_));
            if (val == 0) return;
            rows_[static_cast<std::size_t>(r)].emplace_back(c, val);
            col_rows_[static_cast<std::size_t>(c)].push_back(r);
            ++row_nnz_[static_cast<std::size_t>(r)];
            ++col_nnz_[static_cast<std::size_t>(c)];
            ++live_;
        });
        for (i64 c = 0; c < static_cast<i64>(col_rows_.size()); ++c) push_col(c);
    }

    i64 run() {
        Deadline deadline(budget_.wall_ms);
        i64 rank = 0;
        std::vector<i64> members;
        for (;;) {
            deadline.poll();
            i64 c = pop_min_col();
            if (c < 0) break;
            members.clear();
            compact_col(c, members);
            if (members.empty()) continue;
            i64 pr = members.front();
            for (i64 r : members)
                if (row_nnz_[static_cast<std::size_t>(r)] < row_nnz_[static_cast<std::size_t>(pr)] ||
                    (row_nnz_[static_cast<std::size_t>(r)] == row_nnz_[static_cast<std::size_t>(pr)] && r < pr))
                    pr = r;
            std::uint32_t piv = value_at(pr, c);
            std::uint32_t inv = mod_inverse(piv, p_);
            for (i64 r : members) {
                if (r == pr) continue;
                std::uint64_t factor = static_cast<std::uint64_t>(value_at(r, c)) * inv % p_;
                row_axpy(r, pr, static_cast<std::uint32_t>(factor));
                deadline.poll();
            }
            // retire the pivot row from the active submatrix
            row_done_[static_cast<std::size_t>(pr)] = 1;
            for (const auto& [cc, val] : rows_[static_cast<std::size_t>(pr)]) {
                (void)val;
                bump_col(cc, -1);
            }
            live_ -= row_nnz_[static_cast<std::size_t>(pr)];
            rows_[static_cast<std::size_t>(pr)].clear();
            rows_[static_cast<std::size_t>(pr)].shrink_to_fit();
            row_nnz_[static_cast<std::size_t>(pr)] = 0;
            ++rank;
        }
        return rank;
    }

private:
    using Entry = std::pair<i64, std::uint32_t>;

    void push_col(i64 c) {
        i64 cnt = col_nnz_[static_cast<std::size_t>(c)];
        if (cnt <= 0) return;
        buckets_[static_cast<std::size_t>(cnt)].push_back(c);
        min_bucket_ = std::min(min_bucket_, cnt);
    }
    void bump_col(i64 c, i64 delta) {
        col_nnz_[static_cast<std::size_t>(c)] += delta;
        push_col(c);  // no-op once the count reaches zero
    }
    i64 pop_min_col() {
        while (min_bucket_ < static_cast<i64>(buckets_.size())) {
            auto& bucket = buckets_[static_cast<std::size_t>(min_bucket_)];
            if (bucket.empty()) {
                ++min_bucket_;
                continue;
            }
            i64 c = bucket.back();
            bucket.pop_back();
            if (col_nnz_[static_cast<std::size_t>(c)] == min_bucket_) return c;  // else stale
        }
        return -1;
    }

    std::uint32_t value_at(i64 r, i64 c) const {
        const auto& row = rows_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, i64 col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : 0;
    }

    void compact_col(i64 c, std::vector<i64>& members) {
        auto& ids = col_rows_[static_cast<std::size_t>(c)];
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::size_t keep = 0;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            i64 r = ids[k];
            if (row_done_[static_cast<std::size_t>(r)] || value_at(r, c) == 0) continue;
            ids[keep++] = r;
            members.push_back(r);
        }
        ids.resize(keep);
        if (static_cast<i64>(keep) != col_nnz_[static_cast<std::size_t>(c)]) {
            col_nnz_[static_cast<std::size_t>(c)] = static_cast<i64>(keep);
            push_col(c);
        }
    }

    // row_dst -= f * row_src (mod p)
    void row_axpy(i64 dst, i64 src, std::uint32_t f) {
        if (f == 0) return;
        const std::uint64_t neg = p_ - f;
        auto& d = rows_[static_cast<std::size_t>(dst)];
        auto& s = rows_[static_cast<std::size_t>(src)];
        scratch_.clear();
        scratch_.reserve(d.size() + s.size());
        std::size_t i = 0, j = 0;
        while (i < d.size() || j < s.size()) {
            if (j == s.size() || (i < d.size() && d[i].first < s[j].first)) {
                scratch_.push_back(d[i++]);
            } else if (i == d.size() || s[j].first < d[i].first) {
                std::uint32_t nv = static_cast<std::uint32_t>(neg * s[j].second % p_);
                if (nv != 0) {
                    bump_col(s[j].first, +1);
                    col_rows_[static_cast<std::size_t>(s[j].first)].push_back(dst);
                    ++live_;
                    scratch_.emplace_back(s[j].first, nv);
                }
                ++j;
            } else {
                std::uint32_t nv =
                    static_cast<std::uint32_t>((d[i].second + neg * s[j].second) % p_);
                if (nv == 0) {
                    bump_col(d[i].first, -1);
                    --live_;
                } else {
                    scratch_.emplace_back(d[i].first, nv);
                }
                ++i;
                ++j;
            }
        }
        row_nnz_[static_cast<std::size_t>(dst)] = static_cast<i64>(scratch_.size());
        d.swap(scratch_);
        if (live_ > budget_.max_entries)
            throw BudgetError("stored entries exceeded the budget during mod-p elimination");
    }

    std::uint32_t p_;
    Budget budget_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<i64>> col_rows_;
    std::vector<i64> row_nnz_, col_nnz_;
    std::vector<char> row_done_;
    std::vector<std::vector<i64>> buckets_;
    i64 min_bucket_ = 0;
    i64 live_ = 0;
    std::vector<Entry> scratch_;
};

}  // namespace

i64 rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const Budget& budget) {
    if (p < 2 || p >= (1u << 31)) throw InputError("rank_mod_p needs a prime in [2, 2^31)");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return ModPElim(m, p, budget).run();
}

i64 rank_over_q(const SparseIntMatrix& m, std::uint32_t min_prime, const Budget& budget) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::uint32_t p1 = next_prime_at_least(std::max(min_prime, 97u));
    std::uint32_t p2 = next_prime_at_least(p1 + 1);
    std::uint32_t p3 = next_prime_at_least(p2 + 1);
    i64 r1 = rank_mod_p(m, p1, budget);
    i64 r2 = rank_mod_p(m, p2, budget);
    i64 r3 = rank_mod_p(m, p3, budget);
    if (r1 == r2 && r2 == r3) return r1;
    // disagreement: some chosen prime divides an invariant factor
    SmithOptions opts;
    opts.budget = budget;
    return smith_normal_form(m, opts).rank();
}

std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& m, std::span<const Int> b,
                                              const Budget& budget) {
    if (static_cast<i64>(b.size()) != m.rows()) throw InputError("solve: dimension mismatch");
    SmithOptions opts;
    opts.with_transforms = true;
    opts.budget = budget;
    SmithForm sf = smith_normal_form(m, opts);
    const auto& tf = *sf.transforms;

    std::vector<Int> ub(static_cast<std::size_t>(m.rows()));
    for (i64 i = 0; i < m.rows(); ++i) {
        Int acc = 0;
        const auto& urow = tf.u_rows[static_cast<std::size_t>(i)];
        for (i64 k = 0; k < m.rows(); ++k)
            if (urow[static_cast<std::size_t>(k)] != 0 && b[static_cast<std::size_t>(k)] != 0)
                acc += urow[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
        ub[static_cast<std::size_t>(i)] = std::move(acc);
    }

    std::vector<char> pivot_row(static_cast<std::size_t>(m.rows()), 0);
    std::vector<Int> y(static_cast<std::size_t>(m.cols()));
    for (const auto& piv : tf.pivots) {
        pivot_row[static_cast<std::size_t>(piv.row)] = 1;
        Int& rhs = ub[static_cast<std::size_t>(piv.row)];
        if (rhs % piv.value != 0) return std::nullopt;
        y[static_cast<std::size_t>(piv.col)] = rhs / piv.value;
    }
    for (i64 i = 0; i < m.rows(); ++i)
        if (!pivot_row[static_cast<std::size_t>(i)] && ub[static_cast<std::size_t>(i)] != 0)
            return std::nullopt;

    std::vector<Int> x(static_cast<std::size_t>(m.cols()));
    for (i64 c = 0; c < m.cols(); ++c) {
        if (y[static_cast<std::size_t>(c)] == 0) continue;
        const auto& vcol = tf.v_cols[static_cast<std::size_t>(c)];
        for (i64 i = 0; i < m.cols(); ++i)
            if (vcol[static_cast<std::size_t>(i)] != 0)
                x[static_cast<std::size_t>(i)] +=
                    vcol[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(c)];
    }
    if (mat_vec(m, x) != std::vector<Int>(b.begin(), b.end()))
        throw InternalError("integer solve verification failed");
    return x;
}

std::optional<std::vector<Rational>> solve_rational(const SparseIntMatrix& m,
                                                    std::span<const Rational> b) {
    if (static_cast<i64>(b.size()) != m.rows()) throw InputError("solve: dimension mismatch");
    if (m.rows() * std::max<i64>(m.cols(), 1) > 4'000'000)
        throw BudgetError("dense rational solve refused for this size");
    const i64 rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows));
    for (i64 r = 0; r < rows; ++r)
        a[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(cols) + 1, Rational(0));
    m.for_each([&](i64 r, i64 c, const Int& v) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = Rational(v);
    });
    for (i64 r = 0; r < rows; ++r) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)] = b[static_cast<std::size_t>(r)];

    std::vector<i64> pivot_col_of_row;
    i64 lead = 0;
    for (i64 r = 0; r < rows && lead < cols; ++r) {
        i64 pr = -1;
        for (i64 c = lead; c < cols && pr < 0; ++c)
            for (i64 rr = r; rr < rows; ++rr)
                if (a[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)] != 0) {
                    pr = rr;
                    lead = c;
                    break;
                }
        if (pr < 0) break;
        std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(pr)]);
        Rational inv = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(lead)];
        for (i64 c = lead; c <= cols; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /= inv;
        for (i64 rr = 0; rr < rows; ++rr) {
            if (rr == r) continue;
            Rational f = a[static_cast<std::size_t>(rr)][static_cast<std::size_t>(lead)];
            if (f == 0) continue;
            for (i64 c = lead; c <= cols; ++c)
                a[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)] -=
                    f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        pivot_col_of_row.push_back(lead);
        ++lead;
    }
    for (i64 r = static_cast<i64>(pivot_col_of_row.size()); r < rows; ++r)
        if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)] != 0) return std::nullopt;

    std::vector<Rational> x(static_cast<std::size_t>(cols), Rational(0));
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
        i64 pc = pivot_col_of_row[r];
        Rational rhs = a[r][static_cast<std::size_t>(cols)];
        for (i64 c = pc + 1; c < cols; ++c)
            if (x[static_cast<std::size_t>(c)] != 0)
                rhs -= a[r][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(pc)] = rhs;
    }
    if (mat_vec(m, x) != std::vector<Rational>(b.begin(), b.end()))
        throw InternalError("rational solve verification failed");
    return x;
}

std::vector<std::vector<Int>> kernel_basis(const SparseIntMatrix& m, const Budget& budget) {
    SmithOptions opts;
    opts.with_transforms = true;
    opts.budget = budget;
    SmithForm sf = smith_normal_form(m, opts);
    const auto& tf = *sf.transforms;
    std::vector<char> pivot_col(static_cast<std::size_t>(m.cols()), 0);
    for (const auto& piv : tf.pivots) pivot_col[static_cast<std::size_t>(piv.col)] = 1;
    std::vector<std::vector<Int>> basis;
    for (i64 c = 0; c < m.cols(); ++c) {
        if (pivot_col[static_cast<std::size_t>(c)]) continue;
        std::vector<Int> k = tf.v_cols[static_cast<std::size_t>(c)];
        for (const Int& v : mat_vec(m, k))
            if (v != 0) throw InternalError("kernel basis verification failed");
        basis.push_back(std::move(k));
    }
    return basis;
}

AbelianGroup AbelianGroup::make(i64 free_rank, std::vector<Int> factors) {
    AbelianGroup g;
    g.free_rank = free_rank;
    for (const Int& d : canonical_chain(std::move(factors)))
        if (d > 1) g.torsion.push_back(d);
    return g;
}

std::string AbelianGroup::to_string() const {
    std::string out;
    if (free_rank == 1)
        out = "Z";
    else if (free_rank > 1)
        out = "Z^" + std::to_string(free_rank);
    for (const Int& d : torsion) {
        if (!out.empty()) out += "+";
        out += "Z_" + d.str();
    }
    return out.empty() ? "0" : out;
}

AbelianGroup homology_from_boundaries(const SparseIntMatrix& d_n, const SparseIntMatrix& d_next,
                                      const SmithForm* sf_n, const SmithForm* sf_next,
                                      const Budget& budget) {
    if (d_n.cols() != d_next.rows())
        throw InputError("boundary degrees do not chain: cols(d_n) != rows(d_next)");
    if (!product_is_zero(d_n, d_next))
        throw InternalError("composite boundary is nonzero (face-map bug)");
    SmithOptions opts;
    opts.budget = budget;
    SmithForm local_n, local_next;
    if (!sf_n) {
        local_n = smith_normal_form(d_n, opts);
        sf_n = &local_n;
    }
    if (!sf_next) {
        local_next = smith_normal_form(d_next, opts);
        sf_next = &local_next;
    }
    return AbelianGroup::make(d_n.cols() - sf_n->rank() - sf_next->rank(),
                              sf_next->nontrivial_factors());
}

}  // namespace ybhom
