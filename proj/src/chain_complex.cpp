#include "ybhom/chain_complex.hpp"

#include <algorithm>
#include <atomic>

namespace ybhom {

namespace {
std::atomic<bool> g_face_fault{false};
}

namespace testing {
FaceFaultGuard::FaceFaultGuard() { g_face_fault.store(true); }
FaceFaultGuard::~FaceFaultGuard() { g_face_fault.store(false); }
}  // namespace testing

const char* to_string(Variant v) {
    switch (v) {
        case Variant::yb: return "yb";
        case Variant::d: return "d";
        case Variant::nyb: return "nyb";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "yb" || s == "YB") return Variant::yb;
    if (s == "d" || s == "D") return Variant::d;
    if (s == "nyb" || s == "NYB") return Variant::nyb;
    throw InputError("unknown variant \"" + s + "\" (expected yb, d or nyb)");
}

TupleCodec::TupleCodec(int m_, int n_, i64 limit) : m(m_), n(n_) {
    if (m < 1 || n < 0) throw InputError("bad tuple codec parameters");
    count = checked_pow(m, n, limit);
}

i64 TupleCodec::encode(std::span<const Element> t) const {
    i64 code = 0;
    for (Element x : t) code = code * m + x;
    return code;
}

void TupleCodec::decode(i64 code, std::span<Element> out) const {
    for (int k = n - 1; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = static_cast<Element>(code % m);
        code /= m;
    }
}

void face_left(const YBMap& map, int i, std::span<const Element> in, std::span<Element> out) {
    const int n = static_cast<int>(in.size()) - 1;
    if (i < 1 || i > n + 1) throw InputError("face index out of range");
    Element c = in[static_cast<std::size_t>(i - 1)];
    for (int j = i - 1; j >= 1; --j) {
        out[static_cast<std::size_t>(j - 1)] = map.r2_at(in[static_cast<std::size_t>(j - 1)], c);
        c = map.r1_at(in[static_cast<std::size_t>(j - 1)], c);
    }
    for (int k = i; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] = in[static_cast<std::size_t>(k)];
}

void face_right(const YBMap& map, int i, std::span<const Element> in, std::span<Element> out) {
    const int n = static_cast<int>(in.size()) - 1;
    if (i < 1 || i > n + 1) throw InputError("face index out of range");
    Element c = in[static_cast<std::size_t>(i - 1)];
    for (int j = i + 1; j <= n + 1; ++j) {
        out[static_cast<std::size_t>(j - 2)] = map.r1_at(c, in[static_cast<std::size_t>(j - 1)]);
        c = map.r2_at(c, in[static_cast<std::size_t>(j - 1)]);
    }
    for (int k = 1; k < i; ++k) out[static_cast<std::size_t>(k - 1)] = in[static_cast<std::size_t>(k - 1)];
    if (g_face_fault.load(std::memory_order_relaxed) && n >= 1)
        out[0] = static_cast<Element>((out[0] + 1) % map.m);
}

bool is_degenerate(const YBMap& map, std::span<const Element> t) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (map.is_fixed_pair(t[i], t[i + 1])) return true;
    return false;
}

ChainBasis ChainBasis::make(const YBMap& map, int n, Variant variant, const Budget& budget) {
    if (n < 0) throw InputError("negative degree");
    ChainBasis basis;
    basis.m = map.m;
    basis.n = n;
    basis.variant = variant;
    TupleCodec codec(map.m, n, budget.max_entries);
    basis.position.assign(static_cast<std::size_t>(codec.count), -1);
    if (n == 0) return basis;  // C_0 = 0 in every variant
    std::vector<Element> t(static_cast<std::size_t>(n));
    for (i64 code = 0; code < codec.count; ++code) {
        bool take = true;
        if (variant != Variant::yb) {
            codec.decode(code, t);
            bool degen = n >= 2 && is_degenerate(map, t);
            take = (variant == Variant::d) ? (n >= 2 && degen) : !degen;
        }
        if (take) {
            basis.position[static_cast<std::size_t>(code)] =
                static_cast<std::int32_t>(basis.generators.size());
            basis.generators.push_back(code);
        }
    }
    if (variant == Variant::d && n < 2) {
        basis.generators.clear();
        std::fill(basis.position.begin(), basis.position.end(), -1);
    }
    return basis;
}

SparseIntMatrix boundary_matrix(const YBMap& map, int n, Variant variant, const Budget& budget) {
    if (n < 1) throw InputError("boundary degree must be >= 1");
    if (variant != Variant::yb) {
        // D/NYB need well-defined fixed pairs: the diagonal condition
        for (Element a = 0; a < map.m; ++a) {
            int fixed = 0;
            for (Element b = 0; b < map.m; ++b)
                if (map.is_fixed_pair(a, b)) ++fixed;
            if (fixed != 1)
                throw InputError(
                    "degenerate/normalized complexes need the diagonal condition, which fails at "
                    "a=" + std::to_string(a));
        }
    }
    ChainBasis src = ChainBasis::make(map, n, variant, budget);
    ChainBasis tgt = ChainBasis::make(map, n - 1, variant, budget);
    SparseIntMatrix out(tgt.size(), src.size());
    if (n == 1) return out;  // C_0 = 0

    TupleCodec src_codec(map.m, n, budget.max_entries);
    TupleCodec tgt_codec(map.m, n - 1, budget.max_entries);
    std::vector<Element> t(static_cast<std::size_t>(n)), face(static_cast<std::size_t>(n - 1));
    std::vector<std::pair<i64, long long>> acc;  // (target code, coefficient)
    i64 total_nnz = 0;
    for (i64 j = 0; j < src.size(); ++j) {
        src_codec.decode(src.generators[static_cast<std::size_t>(j)], t);
        acc.clear();
        for (int i = 1; i <= n; ++i) {
            const long long sign = (i % 2 == 1) ? 1 : -1;
            face_left(map, i, t, face);
            acc.emplace_back(tgt_codec.encode(face), sign);
            face_right(map, i, t, face);
            acc.emplace_back(tgt_codec.encode(face), -sign);
        }
        std::sort(acc.begin(), acc.end());
        std::vector<SparseIntMatrix::Entry> col;
        for (std::size_t k = 0; k < acc.size();) {
            i64 code = acc[k].first;
            long long coeff = 0;
            while (k < acc.size() && acc[k].first == code) coeff += acc[k++].second;
            if (coeff == 0) continue;
            std::int32_t pos = tgt.position[static_cast<std::size_t>(code)];
            if (pos < 0) {
                if (variant == Variant::d)
                    throw InternalError(
                        "degenerate subcomplex is not closed under the boundary (face-map bug)");
                continue;  // NYB: quotient map drops degenerate targets
            }
            col.emplace_back(pos, Int(coeff));
        }
        std::sort(col.begin(), col.end(),
                  [](const SparseIntMatrix::Entry& a, const SparseIntMatrix::Entry& b) {
                      return a.first < b.first;
                  });
        total_nnz += static_cast<i64>(col.size());
        if (total_nnz > budget.max_entries)
            throw BudgetError("boundary matrix exceeded the entry budget");
        out.adopt_column(j, std::move(col));
    }
    return out;
}

}  // namespace ybhom
