#ifndef INSEP_TESTS_SUPPORT_TOWERS_HPP
#define INSEP_TESTS_SUPPORT_TOWERS_HPP

#include <ostream>
#include <random>
#include <set>
#include <string>

#include "insep/tower/p_power.hpp"
#include "insep/tower/parse.hpp"
#include "support/random.hpp"

namespace insep::tower {
inline void PrintTo(const TowerElement& e, std::ostream* os) { *os << e.to_string(); }
inline void PrintTo(const FieldTower& K, std::ostream* os) { *os << K.describe(); }
}  // namespace insep::tower

namespace testing_support {

using insep::tower::FieldTower;
using insep::tower::LayerKind;
using insep::tower::TowerElement;

inline FieldTower with_alg(const FieldTower& K, const std::string& name, const std::string& minpoly) {
    insep::tower::LayerSpec s;
    s.kind = LayerKind::Algebraic;
    s.name = name;
    s.coeffs = insep::tower::minimal_polynomial_coeffs(K, name, minpoly);
    return insep::tower::tower_extend(K, s);
}

inline FieldTower with_root(const FieldTower& K, const std::string& name, const std::string& radicand,
                            unsigned e = 1) {
    return insep::tower::adjoin_p_root(K, insep::tower::parse_element(K, radicand), e, name);
}

inline FieldTower with_trans(const FieldTower& K, const std::string& name) {
    insep::tower::LayerSpec s;
    s.name = name;
    return insep::tower::tower_extend(K, s);
}

inline TowerElement el(const FieldTower& K, const std::string& text) {
    return insep::tower::parse_element(K, text);
}

/// Random element built from a few basis monomials with small coefficients.
inline TowerElement random_element(std::mt19937_64& rng, const FieldTower& K, unsigned max_terms = 3,
                                   unsigned max_deg = 1) {
    TowerElement x = K.zero();
    const unsigned n = uniform(rng, 1, max_terms);
    for (unsigned i = 0; i < n; ++i) {
        auto c = random_ratfunc(rng, K.characteristic(), K.leaf_context().nparams, max_deg, false);
        x += K.basis(uniform(rng, 0, unsigned(K.degree() - 1))) * K.from_leaf(c);
    }
    return x;
}

struct RandomTowerOptions {
    std::vector<unsigned> primes{2, 3, 5};
    unsigned max_base = 2;
    unsigned min_layers = 1;
    unsigned max_layers = 3;
    /// Upper bound on [K : k0] * p^d, which sizes the later root systems.
    std::size_t budget = 32;
};

/// Random tower whose algebraic layers are irreducible by construction.
/// Separable layers are u^q - (w + c) with w a parameter no earlier layer
/// mentions (Eisenstein at w + c); root layers are checked on adjunction.
inline FieldTower random_tower(std::mt19937_64& rng, const RandomTowerOptions& opt = {}) {
    const unsigned p = opt.primes[uniform(rng, 0, unsigned(opt.primes.size() - 1))];
    const unsigned d = uniform(rng, 1, opt.max_base);
    std::vector<std::string> base;
    for (unsigned i = 0; i < d; ++i) base.push_back("t" + std::to_string(i + 1));
    FieldTower K = FieldTower::rational(p, base);
    std::size_t pd = 1;
    for (unsigned i = 0; i < d; ++i) pd *= p;

    std::set<std::size_t> used;  // leaf parameters some layer mentions
    auto mark = [&](const TowerElement& a) {
        for (const auto& c : a.coords())
            for (std::size_t q = 0; q < c.context().nparams; ++q)
                if (c.num().involves(q) || c.den().involves(q)) used.insert(q);
    };
    const unsigned nlayers = uniform(rng, opt.min_layers, opt.max_layers);
    unsigned serial = 0;
    // Layers that do not fit the budget are redrawn a bounded number of times.
    for (unsigned tries = 0; K.layers().size() < nlayers && tries < 4 * nlayers; ++tries) {
        const std::string name = "u" + std::to_string(++serial);
        const unsigned kind = uniform(rng, 0, 2);
        if (kind == 0) {
            K = with_trans(K, "y" + std::to_string(serial));
            continue;
        }
        if (kind == 1) {
            const unsigned q = p == 2 ? 3 : 2;
            if (K.degree() * q * pd > opt.budget) continue;
            std::vector<std::size_t> free;
            for (std::size_t w = 0; w < K.leaf_context().nparams; ++w)
                if (!used.count(w)) free.push_back(w);
            if (free.empty()) continue;
            const std::size_t w = free[uniform(rng, 0, unsigned(free.size() - 1))];
            const TowerElement a = K.from_leaf(insep::ff::RatFunc::param(K.leaf_context(), w)) +
                                   K.from_int(uniform(rng, 0, p - 1));
            std::vector<TowerElement> coeffs(q, K.zero());
            coeffs[0] = -a;
            mark(a);
            insep::tower::LayerSpec s;
            s.kind = LayerKind::Algebraic;
            s.name = name;
            s.coeffs = coeffs;
            K = insep::tower::tower_extend(K, s);
            continue;
        }
        const unsigned e = uniform(rng, 1, 2);
        std::size_t deg = e == 1 ? p : p * p;
        if (K.degree() * deg * pd > opt.budget) {
            deg = p;
            if (K.degree() * deg * pd > opt.budget) continue;
        }
        const unsigned ee = deg == p ? 1 : 2;
        for (int attempt = 0; attempt < 8; ++attempt) {
            TowerElement a = K.zero();
            if (uniform(rng, 0, 1)) {
                a = K.param(uniform(rng, 0, d - 1));
                if (uniform(rng, 0, 1)) a *= random_element(rng, K, 1, 1);
            } else {
                a = random_element(rng, K, 2, 1);
            }
            if (a.is_zero() || insep::tower::is_p_power_tower(a)) continue;
            mark(a);
            K = insep::tower::adjoin_p_root(K, a, ee, name);
            break;
        }
    }
    return K;
}

}  // namespace testing_support

#endif
