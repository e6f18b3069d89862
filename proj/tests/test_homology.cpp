#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "ybhom/json_io.hpp"
#include "ybhom/verify.hpp"

using namespace ybhom;

namespace {

YBMap identity_map(int m) {
    YBMap map;
    map.m = m;
    map.r1.resize(std::size_t(m) * m);
    map.r2.resize(std::size_t(m) * m);
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) {
            map.r1[std::size_t(a) * m + b] = a;
            map.r2[std::size_t(a) * m + b] = b;
        }
    return map;
}

AbelianGroup group_of(Engine& eng, int m, int n, Variant v) {
    return eng.homology(make_cyclic(m).map(), n, v, Coefficients::Z()).group;
}

}  // namespace

TEST_CASE("integral homology matches the golden cyclic values") {
    Engine eng;
    CHECK(group_of(eng, 3, 3, Variant::yb) == AbelianGroup{9, {Int(3)}});
    CHECK(group_of(eng, 4, 2, Variant::nyb) == AbelianGroup{3, {}});
    CHECK(group_of(eng, 2, 2, Variant::d) == AbelianGroup{1, {}});
    CHECK(group_of(eng, 2, 1, Variant::yb) == AbelianGroup{1, {Int(2)}});

    // the one-element biquandle: single orbit, zero boundary
    for (int n = 1; n <= 5; ++n) {
        CHECK(group_of(eng, 1, n, Variant::yb) == AbelianGroup{1, {}});
        AbelianGroup d = group_of(eng, 1, n, Variant::d);
        AbelianGroup nyb = group_of(eng, 1, n, Variant::nyb);
        CHECK(d == (n >= 2 ? AbelianGroup{1, {}} : AbelianGroup{0, {}}));
        CHECK(nyb == (n == 1 ? AbelianGroup{1, {}} : AbelianGroup{0, {}}));
        CHECK(d.free_rank + nyb.free_rank == 1);
    }

    // NYB row of the order-2 cyclic biquandle
    for (int n = 1; n <= 5; ++n) {
        AbelianGroup g = group_of(eng, 2, n, Variant::nyb);
        if (n % 2 == 1)
            CHECK(g == AbelianGroup{1, {Int(2)}});
        else
            CHECK(g == AbelianGroup{1, {}});
    }
}

TEST_CASE("integral homology of an Alexander biquandle (independent oracle values)") {
    // frozen from a dense Smith-normal-form computation of the same complexes
    Engine eng;
    const YBMap a = make_alexander(4, 3, 3).map();
    auto g = [&](int n, Variant v) { return eng.homology(a, n, v, Coefficients::Z()).group; };
    CHECK(g(1, Variant::yb) == AbelianGroup{2, {Int(2)}});
    CHECK(g(1, Variant::d) == AbelianGroup{0, {}});
    CHECK(g(1, Variant::nyb) == AbelianGroup{2, {Int(2)}});
    CHECK(g(2, Variant::yb) == AbelianGroup{6, {Int(2)}});
    CHECK(g(2, Variant::d) == AbelianGroup{2, {}});
    CHECK(g(2, Variant::nyb) == AbelianGroup{4, {Int(2)}});
    CHECK(g(3, Variant::yb) == AbelianGroup{20, {Int(2), Int(2), Int(2), Int(4)}});
    CHECK(g(3, Variant::d) == AbelianGroup{10, {Int(2), Int(2)}});
    CHECK(g(3, Variant::nyb) == AbelianGroup{10, {Int(2), Int(4)}});
}

TEST_CASE("field coefficients report dimensions") {
    Engine eng;
    const YBMap c3 = make_cyclic(3).map();
    HomologyReport q = eng.homology(c3, 3, Variant::yb, Coefficients::Q());
    CHECK(q.group.free_rank == 9);
    CHECK(q.group.torsion.empty());
    // mod 3 the Z_3 summand of H_3 contributes one extra dimension
    HomologyReport z3 = eng.homology(c3, 3, Variant::yb, Coefficients::Zp(3));
    CHECK(z3.group.free_rank == 10);
    HomologyReport z5 = eng.homology(c3, 3, Variant::yb, Coefficients::Zp(5));
    CHECK(z5.group.free_rank == 9);
    CHECK_THROWS_AS(eng.homology(c3, 3, Variant::yb, Coefficients::parse("zp:6")), InputError);
}

TEST_CASE("cohomology from transposes with the UCT cross-check") {
    Engine eng;
    const YBMap c2 = make_cyclic(2).map();
    HomologyReport h = eng.cohomology(c2, 2, Variant::yb, Coefficients::Z());
    CHECK(h.group == AbelianGroup::make(2, {Int(2)}));  // Free(H_2) + Tor(H_1)

    for (int m = 2; m <= 5; ++m) {
        HomologyReport r = eng.cohomology(make_cyclic(m).map(), 1, Variant::yb, Coefficients::Q());
        CHECK(r.group.free_rank == 1);
    }
    HomologyReport big = eng.cohomology(make_cyclic(5).map(), 4, Variant::yb, Coefficients::Q());
    CHECK(big.group.free_rank == 125);
}

TEST_CASE("homology rejects non-operators and bad degrees") {
    Engine eng;
    YBMap broken;
    broken.m = 2;
    broken.r1 = {0, 1, 1, 0};  // r1 = a+b breaks the hexagon
    broken.r2 = {0, 1, 0, 1};
    CHECK_THROWS_AS(eng.homology(broken, 2, Variant::yb, Coefficients::Z()), InputError);
    CHECK_THROWS_AS(eng.homology(make_cyclic(2).map(), 0, Variant::yb, Coefficients::Z()),
                    InputError);
}

TEST_CASE("betti verifier") {
    Engine eng;
    CheckResult r54 = verify_betti(eng, 5, 4);
    CHECK(r54.pass);
    CHECK(r54.got == "125/61/64");
    CheckResult r31 = verify_betti(eng, 3, 1);
    CHECK(r31.pass);
    CHECK(r31.got == "1/0/1");
    CheckResult r45 = verify_betti(eng, 4, 5);
    CHECK(r45.pass);
    CHECK(r45.got == "256/175/81");
}

TEST_CASE("torsion bound verifier") {
    Engine eng;
    CHECK(verify_torsion_bound(eng, 3, 3).pass);
    CHECK(verify_torsion_bound(eng, 2, 5).pass);
    for (int m = 2; m <= 4; ++m) CHECK(verify_torsion_bound(eng, m, 2).pass);
}

TEST_CASE("conjecture verifier reports per computed cell") {
    Engine eng;
    CheckResult c33 = verify_conjecture(eng, 3, 3);
    CHECK(c33.pass);
    CHECK(c33.got == "Z^4+Z_3");
    CHECK(verify_conjecture(eng, 2, 4).pass);
    CHECK(verify_conjecture(eng, 3, 4).pass);
}

TEST_CASE("splitting verifier") {
    Engine eng;
    CHECK(verify_splitting(eng, 3, 3).pass);
    for (int m = 2; m <= 4; ++m) CHECK(verify_splitting(eng, m, 1).pass);
    CHECK(verify_splitting(eng, 2, 4).pass);
}

TEST_CASE("equivariance verifier and its precondition") {
    Engine eng;
    for (int m = 2; m <= 4; ++m)
        for (int n = 1; n <= 3; ++n) CHECK(verify_equivariance(eng, make_cyclic(m).map(), n).pass);
    CHECK(verify_equivariance(eng, make_alexander(4, 3, 3).map(), 2).pass);
    CHECK_THROWS_AS(verify_equivariance(eng, identity_map(2), 2), InputError);
}

TEST_CASE("cocycle basis verifier") {
    Engine eng;
    for (int m = 2; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n) CHECK(verify_cocycle_basis(eng, m, n).pass);
}

TEST_CASE("coboundary membership witnesses") {
    Engine eng;
    const YBMap c2 = make_cyclic(2).map();

    Cochain zero(2, 2, Ring::Z);
    auto w0 = eng.is_coboundary(c2, 2, zero, Ring::Z);
    REQUIRE(w0.has_value());
    CHECK(w0->is_zero());

    // F_1 = e_0 + e_1 generates free rank in degree 1; C^0 = 0
    Cochain f1(2, 1, Ring::Q);
    f1.set(0, 1);
    f1.set(1, 1);
    CHECK_FALSE(eng.is_coboundary(c2, 1, f1, Ring::Q).has_value());

    // e_(0,0) is a cocycle generating free rank: no witness over Z
    Cochain e00(2, 2, Ring::Z);
    e00.set(0, 1);
    CHECK_FALSE(eng.is_coboundary(c2, 2, e00, Ring::Z).has_value());

    // non-cocycles are rejected outright (delta of e_(0,1) is nonzero)
    Cochain e01(2, 2, Ring::Z);
    e01.set(1, 1);
    CHECK_THROWS_AS(eng.is_coboundary(c2, 2, e01, Ring::Z), InputError);

    // m (f.y - f) is an integral coboundary for integral cocycles (desk scale)
    for (int m = 2; m <= 3; ++m) {
        const YBMap map = make_cyclic(m).map();
        for (int n = 2; n <= 3; ++n)
            for (const Cochain& f : eng.cocycle_kernel_basis(map, n))
                for (Element y = 0; y < m; ++y) {
                    Cochain g = act_on_cochain(map, f, y);
                    g -= f;
                    Cochain mg = g.scaled(m);
                    auto w = eng.is_coboundary(map, n, mg, Ring::Z);
                    CHECK(w.has_value());
                }
    }
}

TEST_CASE("difference operator identities for the shift action") {
    Engine eng;
    for (int m = 2; m <= 3; ++m) {
        const YBMap map = make_cyclic(m).map();
        for (int n = 2; n <= 3; ++n) {
            const int sign = (n % 2 == 0) ? 1 : -1;
            for (const Cochain& f : eng.cocycle_kernel_basis(map, n))
                for (Element y = 0; y < m; ++y) {
                    Cochain target = delta_y(map, f, y);
                    Cochain shift = act_on_cochain(map, f, y);
                    shift -= f;
                    target -= shift.scaled(sign);
                    CHECK(eng.is_coboundary(map, n, target, Ring::Z).has_value());
                }
        }
    }
    // orbit-constant cocycles: the action fixes them, so Delta_y vanishes in cohomology
    for (int m = 2; m <= 3; ++m) {
        const YBMap map = make_cyclic(m).map();
        for (int n = 2; n <= 3; ++n)
            for (const Cochain& fz : cocycle_basis(m, n)) {
                Cochain f(m, n, Ring::Q);
                for (const auto& [code, v] : fz.values()) f.set(code, v);
                for (Element y = 0; y < m; ++y)
                    CHECK(eng.is_coboundary(map, n, delta_y(map, f, y), Ring::Q).has_value());
            }
    }
}

TEST_CASE("averaged action fixes cocycle classes rationally") {
    Engine eng;
    for (int m = 2; m <= 3; ++m) {
        const YBMap map = make_cyclic(m).map();
        for (int n = 2; n <= 3; ++n)
            for (const Cochain& f : eng.cocycle_kernel_basis(map, n)) {
                Cochain avg(m, n, Ring::Q);
                for (Element y = 0; y < m; ++y) {
                    Cochain fy = act_on_cochain(map, f, y);
                    for (const auto& [code, v] : fy.values()) avg.add(code, v / m);
                }
                for (const auto& [code, v] : f.values()) avg.add(code, -v);
                CHECK(eng.is_coboundary(map, n, avg, Ring::Q).has_value());
            }
    }
}

TEST_CASE("reference table data and runner") {
    CHECK(reference_table().size() == 60);
    Engine eng;
    TableRun run = run_reference_table(eng, {2}, 2);
    CHECK(run.rows.size() == 15);
    CHECK(run.all_match());
}

TEST_CASE("report serialization carries the documented fields") {
    Engine eng;
    HomologyReport r = eng.homology(make_cyclic(3).map(), 3, Variant::yb, Coefficients::Z());
    OrderedJson j = to_json(r);
    CHECK(j["m"] == 3);
    CHECK(j["n"] == 3);
    CHECK(j["variant"] == "yb");
    CHECK(j["coeff"] == "z");
    CHECK(j["free_rank"] == 9);
    CHECK(j["torsion"].size() == 1);
    CHECK(j["torsion"][0] == 3);
    CHECK(j.contains("elapsed_ms"));
    CHECK(j["matrix_dims"].size() == 2);

    Cochain f(2, 2, Ring::Q);
    f.set(1, Rational(1, 2));
    f.set(3, -2);
    OrderedJson jc = to_json(f);
    CHECK(jc["ring"] == "Q");
    CHECK(jc["values"]["1"] == "1/2");
    CHECK(jc["values"]["3"] == -2);
}

TEST_CASE("engine caches stay consistent under concurrent table runs") {
    Engine eng;
    TableRun a = run_reference_table(eng, {2, 3}, 4);
    TableRun b = run_reference_table(eng, {2, 3}, 1);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].match);
        CHECK(a.rows[i].got == b.rows[i].got);
    }
}
