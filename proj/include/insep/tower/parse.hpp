#ifndef INSEP_TOWER_PARSE_HPP
#define INSEP_TOWER_PARSE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "insep/ff/expr.hpp"
#include "insep/tower/field_tower.hpp"

namespace insep::tower {

namespace detail {

struct TowerEnv {
    const FieldTower& K;
    std::size_t line;

    TowerElement constant(std::int64_t v) const { return K.from_int(v); }
    TowerElement one() const { return K.one(); }
    TowerElement symbol(const std::string& s, std::size_t col) const {
        const auto& base = K.base_names();
        std::size_t i = ff::index_of(base, s);
        if (i < base.size()) return K.param(i);
        std::size_t l = K.layer_index(s);
        if (l != TowerData::npos) return K.generator(l);
        throw ParseError("unknown identifier '" + s + "'", line, col);
    }
    TowerElement divide(const TowerElement& a, const TowerElement& b, std::size_t col) const {
        if (b.is_zero()) throw ParseError("division by zero", line, col);
        return a / b;
    }
};

/// Dense univariate polynomial over a tower, used for minimal polynomials.
struct UniPoly {
    FieldTower K;
    std::vector<TowerElement> c;  // low degree first, trimmed

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    UniPoly operator+(const UniPoly& o) const {
        UniPoly r = *this;
        if (r.c.size() < o.c.size()) r.c.resize(o.c.size(), K.zero());
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        UniPoly r{K, {}};
        if (c.empty() || o.c.empty()) return r;
        r.c.assign(c.size() + o.c.size() - 1, K.zero());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
};

struct UniPolyEnv {
    TowerEnv inner;
    const std::string& var;

    UniPoly lift(TowerElement e) const {
        UniPoly r{inner.K, {std::move(e)}};
        r.trim();
        return r;
    }
    UniPoly constant(std::int64_t v) const { return lift(inner.constant(v)); }
    UniPoly one() const { return lift(inner.one()); }
    UniPoly symbol(const std::string& s, std::size_t col) const {
        if (s == var) return UniPoly{inner.K, {inner.K.zero(), inner.K.one()}};
        return lift(inner.symbol(s, col));
    }
    UniPoly divide(const UniPoly& a, const UniPoly& b, std::size_t col) const {
        if (b.c.size() != 1) throw ParseError("only division by nonzero field elements is allowed", inner.line, col);
        UniPoly r = a;
        TowerElement inv = b.c[0].inverse();
        for (auto& x : r.c) x *= inv;
        return r;
    }
};

}  // namespace detail

using detail::UniPoly;

/// Parses an element written in the base parameters and layer generators.
inline TowerElement parse_element(const FieldTower& K, std::string_view text, std::size_t line = 1,
                                  std::size_t column_offset = 1) {
    return ff::evaluate<TowerElement>(ff::parse_expression(text, line, column_offset), detail::TowerEnv{K, line});
}

/// Parses a polynomial in `var` with coefficients in K.
inline UniPoly parse_univariate(const FieldTower& K, const std::string& var, std::string_view text,
                                std::size_t line = 1, std::size_t column_offset = 1) {
    return ff::evaluate<UniPoly>(ff::parse_expression(text, line, column_offset),
                                 detail::UniPolyEnv{detail::TowerEnv{K, line}, var});
}

/// Monic coefficients c_0..c_{deg-1} of a minimal polynomial given as text.
inline std::vector<TowerElement> minimal_polynomial_coeffs(const FieldTower& K, const std::string& var,
                                                           std::string_view text, std::size_t line = 1,
                                                           std::size_t column_offset = 1) {
    UniPoly f = parse_univariate(K, var, text, line, column_offset);
    if (f.c.size() < 3) throw MalformedLayer("minimal polynomial of '" + var + "' must have degree >= 2");
    TowerElement inv = f.c.back().inverse();
    f.c.pop_back();
    for (auto& x : f.c) x *= inv;
    return f.c;
}

}  // namespace insep::tower

#endif  // INSEP_TOWER_PARSE_HPP
