#include "ybhom/cochain.hpp"

#include <algorithm>

namespace ybhom {

namespace {
void require_integral(const Rational& v) {
    if (boost::multiprecision::denominator(v) != 1)
        throw InputError("ring Z cochain cannot hold the non-integral value " + v.str());
}
}  // namespace

Rational Cochain::at(i64 code) const {
    auto it = values_.find(code);
    return it == values_.end() ? Rational(0) : it->second;
}

void Cochain::add(i64 code, const Rational& v) {
    if (v == 0) return;
    if (ring_ == Ring::Z) require_integral(v);
    auto [it, inserted] = values_.emplace(code, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) values_.erase(it);
    }
}

void Cochain::set(i64 code, const Rational& v) {
    if (ring_ == Ring::Z) require_integral(v);
    if (v == 0)
        values_.erase(code);
    else
        values_[code] = v;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    for (const auto& [code, v] : o.values_) add(code, v);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    for (const auto& [code, v] : o.values_) add(code, -v);
    return *this;
}

Cochain Cochain::scaled(const Rational& k) const {
    bool integral = boost::multiprecision::denominator(k) == 1;
    Cochain out(m_, n_, ring_ == Ring::Z && integral ? Ring::Z : Ring::Q);
    if (k == 0) return out;
    for (const auto& [code, v] : values_) out.set(code, v * k);
    return out;
}

bool Cochain::operator==(const Cochain& o) const {
    return m_ == o.m_ && n_ == o.n_ && values_ == o.values_;
}

std::vector<Rational> Cochain::to_dense() const {
    TupleCodec codec(m_, n_);
    std::vector<Rational> out(static_cast<std::size_t>(codec.count), Rational(0));
    for (const auto& [code, v] : values_) out[static_cast<std::size_t>(code)] = v;
    return out;
}

std::vector<Int> Cochain::to_int_dense() const {
    if (ring_ != Ring::Z) throw InputError("integral dense form needs a ring Z cochain");
    TupleCodec codec(m_, n_);
    std::vector<Int> out(static_cast<std::size_t>(codec.count));
    for (const auto& [code, v] : values_) out[static_cast<std::size_t>(code)] = boost::multiprecision::numerator(v);
    return out;
}

Cochain Cochain::from_dense(int m, int n, Ring ring, std::span<const Rational> v) {
    Cochain out(m, n, ring);
    for (std::size_t i = 0; i < v.size(); ++i) out.set(static_cast<i64>(i), v[i]);
    return out;
}

Cochain Cochain::from_int_dense(int m, int n, std::span<const Int> v) {
    Cochain out(m, n, Ring::Z);
    for (std::size_t i = 0; i < v.size(); ++i) out.set(static_cast<i64>(i), Rational(v[i]));
    return out;
}

Cochain act_on_cochain(const YBMap& map, const Cochain& f, Element y) {
    const int m = f.m(), n = f.n();
    if (map.m != m) throw InputError("cochain and map disagree on the set size");
    TupleCodec codec(m, n);
    Cochain out(m, n, f.ring());
    if (f.is_zero()) return out;
    std::vector<Element> t(static_cast<std::size_t>(n)), img(static_cast<std::size_t>(n));
    for (i64 code = 0; code < codec.count; ++code) {
        codec.decode(code, t);
        // phi_y: tuple part of d^l_{n+1,n+1}(t, y)
        Element c = y;
        for (int j = n - 1; j >= 0; --j) {
            img[static_cast<std::size_t>(j)] = map.r2_at(t[static_cast<std::size_t>(j)], c);
            c = map.r1_at(t[static_cast<std::size_t>(j)], c);
        }
        Rational v = f.at(codec.encode(img));
        if (v != 0) out.set(code, v);
    }
    return out;
}

Cochain averaging_projector(int m, const Cochain& f) {
    if (f.ring() != Ring::Q)
        throw InputError("the averaging projector divides by m and needs ring Q");
    if (f.m() != m) throw InputError("cochain and projector disagree on the set size");
    const int n = f.n();
    TupleCodec codec(m, n);
    Cochain out(m, n, Ring::Q);
    std::vector<Element> t(static_cast<std::size_t>(n));
    const Rational inv_m = Rational(1, m);
    for (const auto& [code, v] : f.values()) {
        codec.decode(code, t);
        Rational share = v * inv_m;
        for (int i = 0; i < m; ++i) {
            // deposit at x = s + i*diag so that x - i*diag = s
            std::vector<Element> shifted(t);
            for (auto& x : shifted) x = static_cast<Element>((x + i) % m);
            out.add(codec.encode(shifted), share);
        }
    }
    return out;
}

Cochain orbit_cocycle(int m, int n, std::span<const Element> rep) {
    if (static_cast<int>(rep.size()) != n) throw InputError("representative has the wrong arity");
    for (Element x : rep)
        if (x < 0 || x >= m) throw InputError("representative entry out of range");
    TupleCodec codec(m, n);
    Cochain out(m, n, Ring::Z);
    std::vector<Element> t(rep.begin(), rep.end());
    for (int i = 0; i < m; ++i) {
        std::vector<Element> shifted(t);
        for (auto& x : shifted) x = static_cast<Element>(((x - i) % m + m) % m);
        out.set(codec.encode(shifted), 1);
    }
    return out;
}

std::vector<Cochain> cocycle_basis(int m, int n) {
    if (n < 1) throw InputError("cocycle basis needs degree n >= 1");
    TupleCodec reps(m, n - 1);
    std::vector<Cochain> out;
    out.reserve(static_cast<std::size_t>(reps.count));
    std::vector<Element> rep(static_cast<std::size_t>(n), 0);
    for (i64 head = 0; head < reps.count; ++head) {
        if (n > 1) reps.decode(head, std::span<Element>(rep.data(), static_cast<std::size_t>(n - 1)));
        rep[static_cast<std::size_t>(n - 1)] = 0;  // canonical representative: last coordinate 0
        out.push_back(orbit_cocycle(m, n, rep));
    }
    return out;
}

Cochain delta_y(const YBMap& map, const Cochain& f, Element y) {
    const int m = f.m(), n = f.n();
    if (map.m != m) throw InputError("cochain and map disagree on the set size");
    Cochain out(m, n, f.ring());
    if (n < 2) return out;  // C_0 = 0 convention
    const Element y_next = static_cast<Element>((y + 1) % m);
    TupleCodec codec(m, n);
    std::vector<Element> t(static_cast<std::size_t>(n)), face(static_cast<std::size_t>(n - 1)),
        lifted(static_cast<std::size_t>(n));
    for (i64 code = 0; code < codec.count; ++code) {
        codec.decode(code, t);
        Rational v(0);
        for (int i = 1; i <= n; ++i) {
            const int sign = (i % 2 == 1) ? -1 : 1;  // (-1)^i
            face_right(map, i, t, face);
            std::copy(face.begin(), face.end(), lifted.begin());
            lifted[static_cast<std::size_t>(n - 1)] = y;
            Rational term = f.at(codec.encode(lifted));
            lifted[static_cast<std::size_t>(n - 1)] = y_next;
            term -= f.at(codec.encode(lifted));
            v += sign * term;
        }
        if (v != 0) out.set(code, v);
    }
    return out;
}

Cochain apply_transpose(const SparseIntMatrix& d_next, const Cochain& f) {
    // (delta^n f)(t) = f(boundary t): column t of d_{n+1} pairs with f
    std::vector<Rational> dense = f.to_dense();
    if (static_cast<i64>(dense.size()) != d_next.rows())
        throw InputError("cochain degree does not match the boundary matrix");
    Cochain out(f.m(), f.n() + 1, f.ring());
    for (i64 c = 0; c < d_next.cols(); ++c) {
        Rational acc(0);
        for (const auto& [r, v] : d_next.column(c))
            acc += Rational(v) * dense[static_cast<std::size_t>(r)];
        if (acc != 0) out.set(c, acc);
    }
    return out;
}

}  // namespace ybhom
