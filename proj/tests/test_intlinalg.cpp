#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "ybhom/chain_complex.hpp"
#include "ybhom/smith.hpp"

using namespace ybhom;

namespace {

SparseIntMatrix dense(std::vector<std::vector<long long>> rows) {
    i64 r = static_cast<i64>(rows.size());
    i64 c = r ? static_cast<i64>(rows[0].size()) : 0;
    SparseIntMatrix m(r, c);
    for (i64 i = 0; i < r; ++i)
        for (i64 j = 0; j < c; ++j)
            if (rows[std::size_t(i)][std::size_t(j)] != 0)
                m.set(i, j, rows[std::size_t(i)][std::size_t(j)]);
    return m;
}

std::vector<Int> ints(std::initializer_list<long long> xs) {
    std::vector<Int> out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

SparseIntMatrix random_sparse(std::mt19937& rng, i64 rows, i64 cols, double density) {
    SparseIntMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<long long> val(-9, 9);
    for (i64 r = 0; r < rows; ++r)
        for (i64 c = 0; c < cols; ++c)
            if (coin(rng) < density) {
                long long v = val(rng);
                if (v != 0) m.set(r, c, v);
            }
    return m;
}

SparseIntMatrix permuted(const SparseIntMatrix& m, std::mt19937& rng) {
    std::vector<i64> rp(static_cast<std::size_t>(m.rows())), cp(static_cast<std::size_t>(m.cols()));
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    SparseIntMatrix out(m.rows(), m.cols());
    m.for_each([&](i64 r, i64 c, const Int& v) {
        out.set(rp[std::size_t(r)], cp[std::size_t(c)], v);
    });
    return out;
}

}  // namespace

TEST_CASE("smith normal form: pinned small cases") {
    SmithForm sf = smith_normal_form(dense({{2, 4}, {6, 8}}));
    CHECK(sf.invariant_factors == ints({2, 4}));

    SmithForm zero = smith_normal_form(SparseIntMatrix(3, 2));
    CHECK(zero.invariant_factors.empty());
    CHECK(zero.rank() == 0);

    SparseIntMatrix d2 = boundary_matrix(make_cyclic(2).map(), 2, Variant::yb);
    SmithForm sfd = smith_normal_form(d2);
    CHECK(sfd.rank() == 1);
    CHECK(sfd.invariant_factors == ints({2}));

    // divisibility repair across separate diagonal positions
    SmithForm sfg = smith_normal_form(dense({{2, 0}, {0, 3}}));
    CHECK(sfg.invariant_factors == ints({1, 6}));
}

TEST_CASE("ranks over fields") {
    SparseIntMatrix id4 = dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(rank_mod_p(id4, 101) == 4);
    CHECK(rank_over_q(id4) == 4);

    SparseIntMatrix d2 = boundary_matrix(make_cyclic(2).map(), 2, Variant::yb);
    CHECK(rank_over_q(d2) == 1);
    SparseIntMatrix d3 = boundary_matrix(make_cyclic(2).map(), 3, Variant::yb);
    CHECK(rank_over_q(d3) == 1);  // forced by the rank chain 2 = 4 - 1 - rank

    // mod-p rank can drop exactly where p divides an invariant factor
    SparseIntMatrix two = dense({{2}});
    CHECK(rank_mod_p(two, 2) == 0);
    CHECK(rank_mod_p(two, 3) == 1);
    CHECK(rank_over_q(two) == 1);
}

TEST_CASE("solve over Z and Q") {
    SparseIntMatrix m2 = dense({{2}});
    auto x = solve_integer(m2, ints({4}));
    REQUIRE(x.has_value());
    CHECK(*x == ints({2}));
    CHECK_FALSE(solve_integer(m2, ints({3})).has_value());
    std::vector<Rational> b{Rational(3)};
    auto xq = solve_rational(m2, b);
    REQUIRE(xq.has_value());
    CHECK((*xq)[0] == Rational(3, 2));

    SparseIntMatrix d2 = boundary_matrix(make_cyclic(2).map(), 2, Variant::yb);
    auto w = solve_integer(d2, ints({2, -2}));
    REQUIRE(w.has_value());
    CHECK(mat_vec(d2, *w) == ints({2, -2}));

    // inconsistent rectangular system over Q
    SparseIntMatrix incon = dense({{1, 1}, {1, 1}});
    std::vector<Rational> bad{Rational(0), Rational(1)};
    CHECK_FALSE(solve_rational(incon, bad).has_value());
}

TEST_CASE("kernel basis spans the integral kernel") {
    SparseIntMatrix m = dense({{1, 2, 3}, {2, 4, 6}});
    auto basis = kernel_basis(m);
    CHECK(basis.size() == 2);  // rank 1 of 3 columns
    for (const auto& k : basis)
        for (const Int& v : mat_vec(m, k)) CHECK(v == 0);
}

TEST_CASE("homology assembly from verified boundary pairs") {
    SparseIntMatrix d1(0, 2);
    SparseIntMatrix d2 = boundary_matrix(make_cyclic(2).map(), 2, Variant::yb);
    AbelianGroup h1 = homology_from_boundaries(d1, d2);
    CHECK(h1 == AbelianGroup{1, {Int(2)}});

    SparseIntMatrix za(0, 3), zb(3, 0);
    CHECK(homology_from_boundaries(za, zb) == AbelianGroup{3, {}});

    const YBMap c3 = make_cyclic(3).map();
    AbelianGroup h2 =
        homology_from_boundaries(boundary_matrix(c3, 2, Variant::yb), boundary_matrix(c3, 3, Variant::yb));
    CHECK(h2 == AbelianGroup{3, {}});

    SparseIntMatrix not_chained = dense({{1}});
    CHECK_THROWS_AS(homology_from_boundaries(not_chained, not_chained), InternalError);
}

TEST_CASE("property: invariant factors are permutation invariant") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        SparseIntMatrix m = random_sparse(rng, 6, 7, 0.4);
        SmithForm base = smith_normal_form(m);
        for (int rep = 0; rep < 3; ++rep) {
            SparseIntMatrix p = permuted(m, rng);
            CHECK(smith_normal_form(p).invariant_factors == base.invariant_factors);
        }
    }
}

TEST_CASE("property: rational rank equals the number of invariant factors") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        SparseIntMatrix m = random_sparse(rng, 7, 5, 0.5);
        CHECK(rank_over_q(m) == smith_normal_form(m).rank());
    }
}

TEST_CASE("property: solve round-trips on random systems") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long long> val(-5, 5);
    for (int trial = 0; trial < 25; ++trial) {
        SparseIntMatrix m = random_sparse(rng, 6, 6, 0.4);
        std::vector<Int> x0(6);
        for (auto& v : x0) v = val(rng);
        std::vector<Int> b = mat_vec(m, x0);
        auto x = solve_integer(m, b);
        REQUIRE(x.has_value());
        CHECK(mat_vec(m, *x) == b);
    }
}

TEST_CASE("property: smith chain is canonical and groups renormalize to themselves") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        SparseIntMatrix m = random_sparse(rng, 6, 6, 0.5);
        SmithForm sf = smith_normal_form(m);
        for (std::size_t i = 0; i + 1 < sf.invariant_factors.size(); ++i)
            CHECK(sf.invariant_factors[i + 1] % sf.invariant_factors[i] == 0);
        AbelianGroup g = AbelianGroup::make(3, sf.nontrivial_factors());
        CHECK(AbelianGroup::make(g.free_rank, g.torsion) == g);
    }
}

TEST_CASE("group formatting") {
    CHECK(AbelianGroup{0, {}}.to_string() == "0");
    CHECK(AbelianGroup{1, {}}.to_string() == "Z");
    CHECK((AbelianGroup::make(9, {Int(3)})).to_string() == "Z^9+Z_3");
    CHECK((AbelianGroup::make(0, {Int(2), Int(4)})).to_string() == "Z_2+Z_4");
    CHECK((AbelianGroup::make(0, {Int(2), Int(3)})).to_string() == "Z_6");
}

TEST_CASE("budgets stop runaway computations instead of truncating") {
    Budget tiny;
    tiny.max_entries = 3;
    SmithOptions opts;
    opts.budget = tiny;
    SparseIntMatrix m = dense({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    CHECK_THROWS_AS(smith_normal_form(m, opts), BudgetError);

    Budget small_bits;
    small_bits.max_bits = 8;
    SmithOptions opts2;
    opts2.budget = small_bits;
    SparseIntMatrix big(1, 1);
    big.set(0, 0, Int("123456789123456789123456789"));
    CHECK_THROWS_AS(smith_normal_form(big, opts2), BudgetError);
}

TEST_CASE("transforms certify the decomposition used by the solver") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        SparseIntMatrix m = random_sparse(rng, 5, 4, 0.5);
        SmithOptions opts;
        opts.with_transforms = true;
        SmithForm sf = smith_normal_form(m, opts);
        REQUIRE(sf.transforms.has_value());
        const auto& tf = *sf.transforms;
        // U*M*V must vanish away from the recorded pivots
        std::vector<std::vector<Int>> umv(5, std::vector<Int>(4));
        for (i64 i = 0; i < 5; ++i)
            for (i64 j = 0; j < 4; ++j) {
                Int acc = 0;
                for (i64 k = 0; k < 5; ++k)
                    for (i64 l = 0; l < 4; ++l)
                        acc += tf.u_rows[std::size_t(i)][std::size_t(k)] * m.at(k, l) *
                               tf.v_cols[std::size_t(j)][std::size_t(l)];
                umv[std::size_t(i)][std::size_t(j)] = acc;
            }
        i64 nonzero = 0;
        for (const auto& piv : tf.pivots) {
            CHECK(umv[std::size_t(piv.row)][std::size_t(piv.col)] == piv.value);
            ++nonzero;
        }
        i64 total = 0;
        for (const auto& row : umv)
            for (const Int& v : row) total += (v != 0);
        CHECK(total == nonzero);
    }
}
