#pragma once

#include <map>
#include <vector>

#include "ybhom/chain_complex.hpp"

namespace ybhom {

enum class Ring { Z, Q };

//! Sparse A-valued function on n-tuples (A = Z or Q), keyed by tuple code.
//! Ring Z enforces integral values on insertion.
class Cochain {
public:
    Cochain(int m, int n, Ring ring) : m_(m), n_(n), ring_(ring) {}

    int m() const { return m_; }
    int n() const { return n_; }
    Ring ring() const { return ring_; }
    const std::map<i64, Rational>& values() const { return values_; }

    Rational at(i64 code) const;
    void add(i64 code, const Rational& v);  // accumulate, dropping zeros
    void set(i64 code, const Rational& v);

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain scaled(const Rational& k) const;  // ring Q result unless k integral
    bool is_zero() const { return values_.empty(); }
    bool operator==(const Cochain& o) const;

    std::vector<Rational> to_dense() const;     // length m^n
    std::vector<Int> to_int_dense() const;      // requires ring Z
    static Cochain from_dense(int m, int n, Ring ring, std::span<const Rational> v);
    static Cochain from_int_dense(int m, int n, std::span<const Int> v);

private:
    int m_, n_;
    Ring ring_;
    std::map<i64, Rational> values_;
};

//! Right action of an element: (f.y)(x_1..x_n) = f(d^l_{n+1,n+1}(x_1..x_n,y)).
Cochain act_on_cochain(const YBMap& map, const Cochain& f, Element y);

//! Cyclic averaging projector: (f.P)(x) = (1/m) sum_i f(x_1-i,..,x_n-i).
//! Rejects ring Z input (division by m).
Cochain averaging_projector(int m, const Cochain& f);

//! Indicator of the diagonal-shift orbit of `rep` (integral cochain).
Cochain orbit_cocycle(int m, int n, std::span<const Element> rep);

//! One orbit cocycle per diagonal orbit, representatives canonicalized by
//! x_n = 0 in ascending code order; exactly m^(n-1) cochains.
std::vector<Cochain> cocycle_basis(int m, int n);

//! Shift-difference operator behind the torsion annihilation bound:
//!   Delta_y f = sum_i (-1)^i (f_y o d^r_{i,n} - f_{y+1} o d^r_{i,n}),
//! where f_y(x_1..x_{n-1}) = f(x_1..x_{n-1}, y) and y+1 is the cyclic
//! successor. Zero for n = 1 (C_0 = 0 convention).
Cochain delta_y(const YBMap& map, const Cochain& f, Element y);

//! Coboundary of f computed by pulling back along the faces of degree n+1;
//! pass the boundary matrix d_{n+1} of the YB complex as delta.
Cochain apply_transpose(const SparseIntMatrix& d_next, const Cochain& f);

}  // namespace ybhom
