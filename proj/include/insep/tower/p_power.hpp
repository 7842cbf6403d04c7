#ifndef INSEP_TOWER_P_POWER_HPP
#define INSEP_TOWER_P_POWER_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "insep/errors.hpp"
#include "insep/kaehler/differentials.hpp"
#include "insep/linalg.hpp"
#include "insep/tower/field_tower.hpp"

namespace insep::tower {

inline bool is_p_power_tower(const TowerElement& a) { return kaehler::differential_is_zero(a); }

namespace detail {

/// Solves z^p = a over the rational base k0. Each coordinate equation is
/// split along the p-basis of k0 over k0^p, which makes the system in the
/// unknowns c_i^p overdetermined but of full column rank.
inline std::optional<TowerElement> try_p_root(const TowerElement& a) {
    const FieldTower& K = a.tower();
    const std::size_t N = K.degree();
    const std::uint32_t p = K.characteristic();
    const RatFunc zero = K.data().zero();

    std::vector<std::vector<Coords>> col_parts(N);  // col_parts[i][j] = p-components of coord j of b_i^p
    for (std::size_t i = 0; i < N; ++i) {
        const TowerElement bp = K.basis(i).pow(p);
        for (const auto& c : bp.coords()) col_parts[i].push_back(c.p_components());
    }
    const std::size_t ncomp = col_parts[0][0].size();

    std::vector<std::vector<RatFunc>> rows;
    std::vector<RatFunc> rhs;
    for (std::size_t j = 0; j < N; ++j) {
        const Coords target = a.coords()[j].p_components();
        for (std::size_t alpha = 0; alpha < ncomp; ++alpha) {
            std::vector<RatFunc> row(N, zero);
            bool nonzero = !target[alpha].is_zero();
            for (std::size_t i = 0; i < N; ++i) {
                row[i] = col_parts[i][j][alpha];
                nonzero = nonzero || !row[i].is_zero();
            }
            if (!nonzero) continue;
            rows.push_back(std::move(row));
            rhs.push_back(target[alpha]);
        }
    }
    if (rows.empty()) return K.zero();
    auto sol = solve_linear(std::move(rows), std::move(rhs), N, zero);
    using S = LinearSolution<RatFunc>::Status;
    if (sol.status == S::Inconsistent) return std::nullopt;
    if (sol.status == S::Underdetermined)
        throw UnsupportedPresentation("Frobenius images of the monomial basis are dependent over the rational base");
    Coords root;
    root.reserve(N);
    for (const auto& d : sol.x) {
        if (!d.is_p_power()) return std::nullopt;
        root.push_back(d.p_root());
    }
    TowerElement r = K.from_coords(std::move(root));
    if (!(r.pow(p) == a)) throw InternalInvariantViolation("p-th root failed to verify");
    return r;
}

}  // namespace detail

inline TowerElement p_root_tower(const TowerElement& a) {
    auto r = detail::try_p_root(a);
    if (!r) throw NotAPower(a.to_string() + " is not a p-th power");
    return *r;
}

struct PowerExponent {
    unsigned exponent = 0;
    /// a = root^(p^exponent).
    TowerElement root;
};

/// Largest m <= bound with a in K^(p^m), together with the corresponding root.
inline PowerExponent max_p_power_exponent_with_root(const TowerElement& a, unsigned bound) {
    if (a.is_zero()) throw DivByZero("p-power exponent of zero");
    PowerExponent out{0, a};
    while (out.exponent < bound) {
        auto r = detail::try_p_root(out.root);
        if (!r) break;
        out.root = *r;
        ++out.exponent;
    }
    return out;
}

inline unsigned max_p_power_exponent(const TowerElement& a, unsigned bound) {
    return max_p_power_exponent_with_root(a, bound).exponent;
}

/// What a caller asks to adjoin.
struct LayerSpec {
    LayerKind kind = LayerKind::Transcendental;
    std::string name;
    /// Algebraic: c_0..c_{deg-1} of the monic minimal polynomial.
    std::vector<TowerElement> coeffs;
    /// InseparableRoot: radicand and exponent.
    std::optional<TowerElement> radicand;
    unsigned exponent = 0;
};

inline void check_layer_name(const FieldTower& K, const std::string& name) {
    if (name.empty()) throw MalformedLayer("layer name must not be empty");
    const auto& base = K.base_names();
    if (K.layer_index(name) != detail::TowerData::npos || std::find(base.begin(), base.end(), name) != base.end())
        throw MalformedLayer("generator '" + name + "' already exists");
}

inline FieldTower tower_extend(const FieldTower& K, const LayerSpec& layer) {
    check_layer_name(K, layer.name);
    switch (layer.kind) {
        case LayerKind::Transcendental: return K.extend_transcendental(layer.name);
        case LayerKind::Algebraic: return K.extend_algebraic_unchecked(layer.name, layer.coeffs);
        case LayerKind::InseparableRoot: {
            if (!layer.radicand) throw MalformedLayer("root layer '" + layer.name + "' needs a radicand");
            const TowerElement a = K.embed(*layer.radicand);
            if (a.is_zero() || is_p_power_tower(a))
                throw NotAPowerViolation("radicand " + a.to_string() + " of layer '" + layer.name +
                                         "' is a p-th power in the field below");
            return K.extend_root_unchecked(layer.name, a, layer.exponent);
        }
    }
    throw MalformedLayer("unknown layer kind");
}

inline FieldTower adjoin_p_root(const FieldTower& K, const TowerElement& a, unsigned e,
                                const std::string& name) {
    LayerSpec s;
    s.kind = LayerKind::InseparableRoot;
    s.name = name;
    s.radicand = a;
    s.exponent = e;
    return tower_extend(K, s);
}

}  // namespace insep::tower

#endif  // INSEP_TOWER_P_POWER_HPP
