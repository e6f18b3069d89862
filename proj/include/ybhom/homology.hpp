#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "ybhom/cochain.hpp"
#include "ybhom/smith.hpp"

namespace ybhom {

enum class CoeffRing { z, q, zp };

struct Coefficients {
    CoeffRing ring = CoeffRing::z;
    std::uint32_t p = 0;  // set for zp

    static Coefficients Z() { return {CoeffRing::z, 0}; }
    static Coefficients Q() { return {CoeffRing::q, 0}; }
    static Coefficients Zp(std::uint32_t p) { return {CoeffRing::zp, p}; }
    static Coefficients parse(const std::string& s);  // "z", "q", "zp:<p>"
    std::string to_string() const;
    bool operator==(const Coefficients&) const = default;
};

struct HomologyReport {
    int m = 0, n = 0;
    Variant variant = Variant::yb;
    Coefficients coeff;
    AbelianGroup group;  // field coefficients: free_rank = dimension, no torsion
    double elapsed_ms = 0.0;
    std::array<std::array<i64, 2>, 2> matrix_dims{};  // [d_n, d_next] as {rows, cols}
};

//! Shared computation front end: boundary/Smith/rank caches keyed by
//! (map fingerprint, degree, variant), each slot populated exactly once
//! (call_once), safe under concurrent cell computations.
class Engine {
public:
    explicit Engine(Budget budget = {}) : budget_(budget) {}

    const Budget& budget() const { return budget_; }

    std::shared_ptr<const SparseIntMatrix> boundary(const YBMap& map, int n, Variant v);
    //! delta^n as a matrix: transpose of d_{n+1}.
    std::shared_ptr<const SparseIntMatrix> coboundary(const YBMap& map, int n, Variant v);

    std::shared_ptr<const SmithForm> smith_of_boundary(const YBMap& map, int n, Variant v);
    std::shared_ptr<const SmithForm> smith_of_coboundary(const YBMap& map, int n, Variant v);
    i64 rank_q_of_boundary(const YBMap& map, int n, Variant v);
    i64 rank_p_of_boundary(const YBMap& map, int n, Variant v, std::uint32_t p);

    //! H_n of the chosen variant and coefficients. Asserts d_n * d_{n+1} = 0.
    HomologyReport homology(const YBMap& map, int n, Variant v, Coefficients coeff);

    //! H^n computed from transposed boundaries; over Z the result is
    //! cross-checked against Free(H_n) + Tor(H_{n-1}) and a mismatch is a
    //! hard InternalError.
    HomologyReport cohomology(const YBMap& map, int n, Variant v, Coefficients coeff);

    //! Witness g with delta^{n-1} g = h, over Z or Q, or nullopt. Throws
    //! InputError if h is not a cocycle of the YB complex.
    std::optional<Cochain> is_coboundary(const YBMap& map, int n, const Cochain& h, Ring ring);

    //! Integral spanning set of ker(delta^n) in the YB complex.
    std::vector<Cochain> cocycle_kernel_basis(const YBMap& map, int n);

private:
    struct MatrixKey {
        std::uint64_t fp;
        int n;
        Variant v;
        bool transposed;
        auto operator<=>(const MatrixKey&) const = default;
    };
    struct RankKey {
        std::uint64_t fp;
        int n;
        Variant v;
        std::uint32_t p;  // 0 = rational
        auto operator<=>(const RankKey&) const = default;
    };

    template <typename K, typename V>
    struct Cache {
        struct Slot {
            std::once_flag once;
            std::shared_ptr<const V> value;
        };
        std::mutex mu;
        std::map<K, std::shared_ptr<Slot>> slots;

        template <typename F>
        std::shared_ptr<const V> get(const K& key, F&& build) {
            std::shared_ptr<Slot> s;
            {
                std::lock_guard<std::mutex> lock(mu);
                auto& ref = slots[key];
                if (!ref) ref = std::make_shared<Slot>();
                s = ref;
            }
            std::call_once(s->once, [&] { s->value = std::make_shared<const V>(build()); });
            return s->value;
        }
    };

    void assert_complex(const YBMap& map, int n, Variant v);  // d_n * d_{n+1} = 0, once

    Budget budget_;
    Cache<MatrixKey, SparseIntMatrix> matrices_;
    Cache<MatrixKey, SmithForm> smiths_;
    Cache<RankKey, i64> ranks_;
    Cache<MatrixKey, bool> dd_checked_;
};

}  // namespace ybhom
