#ifndef INSEP_FF_POLY_GCD_HPP
#define INSEP_FF_POLY_GCD_HPP

#include <utility>
#include <vector>

#include "insep/ff/poly.hpp"

namespace insep::ff {

namespace detail {

inline int top_variable(const MultiPoly& a, const MultiPoly& b) {
    for (std::size_t v = a.nvars(); v-- > 0;)
        if (a.involves(v) || b.involves(v)) return int(v);
    return -1;
}

inline bool univariate_in(const MultiPoly& a, std::size_t v) {
    for (const auto& t : a.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (i != v && t.m.e[i]) return false;
    return true;
}

inline MultiPoly leading_coeff_in(const MultiPoly& a, std::size_t v) { return a.coeffs_in(v).back(); }

/// Pseudo-remainder of `a` by `b` as polynomials in `v`, up to a unit factor.
inline MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t v) {
    const unsigned db = b.degree_in(v);
    const MultiPoly lcb = leading_coeff_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const unsigned da = a.degree_in(v);
        MultiPoly lca = leading_coeff_in(a, v);
        a = a * lcb - (lca * b).shift(Monomial::var(v, da - db));
    }
    return a;
}

inline MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b);

inline MultiPoly content_in(const MultiPoly& a, std::size_t v) {
    MultiPoly g = a.zero_like();
    for (const auto& c : a.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd_rec(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline MultiPoly primitive_part_in(const MultiPoly& a, std::size_t v) {
    if (a.is_zero()) return a;
    return exact_div(a, content_in(a, v));
}

inline MultiPoly univariate_gcd(MultiPoly a, MultiPoly b) {
    while (!b.is_zero()) {
        auto r = divide(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return a.one_like();
    if (a.size() == 1 && b.size() == 1) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = std::min(a.lm().e[i], b.lm().e[i]);
        return MultiPoly::term(a.context(), a.nvars(), m, Fp::one(a.context()), a.order());
    }
    const int top = top_variable(a, b);
    const auto v = std::size_t(top);
    if (univariate_in(a, v) && univariate_in(b, v)) return univariate_gcd(a, b);
    if (!a.involves(v)) return gcd_rec(a, content_in(b, v));
    if (!b.involves(v)) return gcd_rec(content_in(a, v), b);

    const MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly x = exact_div(a, ca), y = exact_div(b, cb);
    if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
    while (!y.is_zero()) {
        MultiPoly r = pseudo_remainder(x, y, v);
        x = std::move(y);
        y = r.is_zero() ? r : primitive_part_in(r, v);
    }
    return (gcd_rec(ca, cb) * primitive_part_in(x, v)).monic();
}

}  // namespace detail

/// Monic greatest common divisor over F_p[x_1..x_n]; content/primitive-part
/// recursion on the highest variable present.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    if (a.is_zero() && b.is_zero()) throw BothZero("gcd(0, 0) is undefined");
    return detail::gcd_rec(a, b);
}

/// True iff every exponent of every term is divisible by p.
inline bool is_p_power_poly(const MultiPoly& f) {
    const unsigned p = f.context().p;
    for (const auto& t : f.terms())
        for (std::size_t i = 0; i < f.nvars(); ++i)
            if (t.m.e[i] % p) return false;
    return true;
}

/// The unique G with G^p = f. Coefficients are Frobenius-fixed in F_p.
inline MultiPoly p_root_poly(const MultiPoly& f) {
    if (!is_p_power_poly(f)) throw NotAPower("polynomial is not a p-th power");
    const unsigned p = f.context().p;
    std::vector<MultiPoly::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < f.nvars(); ++i) m.e[i] = static_cast<std::uint16_t>(t.m.e[i] / p);
        out.push_back({m, t.c});
    }
    return MultiPoly::from_terms(f.context(), f.nvars(), std::move(out), f.order());
}

}  // namespace insep::ff

#endif  // INSEP_FF_POLY_GCD_HPP
