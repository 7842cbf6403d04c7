#ifndef INSEP_KAEHLER_DIFFERENTIALS_HPP
#define INSEP_KAEHLER_DIFFERENTIALS_HPP

#include <string>
#include <vector>

#include "insep/errors.hpp"
#include "insep/linalg.hpp"
#include "insep/tower/field_tower.hpp"

namespace insep::kaehler {

using tower::Coords;
using tower::FieldTower;
using tower::LayerKind;
using tower::TowerElement;

/// Field the differentials are taken relative to.
enum class Reference { Base, PrimeField };

/// Omega_{K/k} = (free module on the generators) / (rows of `matrix`).
struct JacobianPresentation {
    std::vector<std::string> generators;
    std::vector<std::string> relations;
    std::vector<std::vector<TowerElement>> matrix;
};

namespace detail {

/// A differential generator: either a leaf parameter (t_i or transcendental
/// y_j) or the j-th algebraic layer.
struct Gen {
    bool leaf;
    std::size_t index;
    std::string name;
};

inline std::vector<Gen> generators(const FieldTower& K, Reference ref) {
    std::vector<Gen> out;
    const auto& d = K.data();
    if (ref == Reference::PrimeField)
        for (std::size_t i = 0; i < K.nparams(); ++i) out.push_back({true, i, K.base_names()[i]});
    std::size_t j = 0;
    for (std::size_t l = 0; l < K.layers().size(); ++l) {
        const auto& L = K.layers()[l];
        if (L.kind == LayerKind::Transcendental)
            out.push_back({true, d.leaf_of[l], L.name});
        else
            out.push_back({false, ++j, L.name});
    }
    return out;
}

/// Partial derivative of coordinates `c` at level j with respect to `g`,
/// treating the element as its reduced polynomial representative.
inline Coords partial(const FieldTower& K, std::size_t level, const Coords& c, const Gen& g) {
    const auto& d = K.data();
    Coords out(c.size(), d.zero());
    if (g.leaf) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out[i] = c[i].derivative(g.index);
        return out;
    }
    if (g.index > level) return out;
    const std::size_t stride = d.block[g.index - 1], deg = d.alg_layer(g.index).degree;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        const std::size_t e = (i / stride) % deg;
        if (e == 0) continue;
        out[i - stride] = c[i] * ff::RatFunc::from_int(d.leaf, std::int64_t(e));
    }
    return out;
}

inline TowerElement pad(const FieldTower& K, Coords c) {
    c.resize(K.degree(), K.data().zero());
    return K.from_coords(std::move(c));
}

}  // namespace detail

inline JacobianPresentation jacobian(const FieldTower& K, Reference ref) {
    JacobianPresentation J;
    const auto gens = detail::generators(K, ref);
    for (const auto& g : gens) J.generators.push_back("d" + g.name);
    const auto& d = K.data();
    for (std::size_t j = 1; j <= d.nalg(); ++j) {
        const auto& L = d.alg_layer(j);
        const std::size_t blk = d.block[j - 1];
        J.relations.push_back(L.name);
        std::vector<TowerElement> row;
        for (const auto& g : gens) {
            // Relation y^deg + sum c_k y^k viewed at level j.
            Coords r(d.block[j], d.zero());
            if (!g.leaf && g.index == j) {
                if (L.degree % K.characteristic() != 0)
                    r[(L.degree - 1) * blk] = ff::RatFunc::from_int(d.leaf, L.degree);
                for (std::size_t k = 1; k < L.degree; ++k)
                    for (std::size_t i = 0; i < blk; ++i)
                        if (!L.coeffs[k][i].is_zero())
                            r[(k - 1) * blk + i] =
                                r[(k - 1) * blk + i] + L.coeffs[k][i] * ff::RatFunc::from_int(d.leaf, std::int64_t(k));
            } else {
                for (std::size_t k = 0; k < L.degree; ++k) {
                    Coords ck(L.coeffs[k].begin(), L.coeffs[k].begin() + blk);
                    Coords dk = detail::partial(K, j - 1, ck, g);
                    std::copy(dk.begin(), dk.end(), r.begin() + k * blk);
                }
            }
            row.push_back(detail::pad(K, std::move(r)));
        }
        J.matrix.push_back(std::move(row));
    }
    return J;
}

inline std::size_t relative_jacobian_rank(const FieldTower& K, Reference ref) {
    const auto J = jacobian(K, ref);
    return matrix_rank(J.matrix, J.generators.size());
}

inline std::size_t pdeg(const FieldTower& K, Reference ref) {
    const auto J = jacobian(K, ref);
    return J.generators.size() - matrix_rank(J.matrix, J.generators.size());
}

inline std::size_t trdeg(const FieldTower& K, Reference ref) {
    return K.transcendental_count() + (ref == Reference::PrimeField ? K.nparams() : 0);
}

inline std::size_t schroer_predicted_edim(const FieldTower& K, Reference ref) {
    const std::size_t pd = pdeg(K, ref), td = trdeg(K, ref);
    if (pd < td)
        throw InternalInvariantViolation("p-degree " + std::to_string(pd) + " below transcendence degree " +
                                         std::to_string(td));
    return pd - td;
}

/// Coordinates of da on the generators of the given reference.
inline std::vector<TowerElement> differential(const TowerElement& a, Reference ref) {
    const auto& K = a.tower();
    std::vector<TowerElement> out;
    for (const auto& g : detail::generators(K, ref))
        out.push_back(K.from_coords(detail::partial(K, K.data().nalg(), a.coords(), g)));
    return out;
}

/// da = 0 in Omega_{K/F_p}, equivalently a in K^p.
inline bool differential_is_zero(const TowerElement& a) {
    const auto J = jacobian(a.tower(), Reference::PrimeField);
    EchelonBasis<TowerElement> span(J.generators.size());
    for (const auto& row : J.matrix) span.insert(row);
    return span.in_span(differential(a, Reference::PrimeField));
}

}  // namespace insep::kaehler

#endif  // INSEP_KAEHLER_DIFFERENTIALS_HPP
