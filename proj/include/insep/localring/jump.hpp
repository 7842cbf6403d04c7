#ifndef INSEP_LOCALRING_JUMP_HPP
#define INSEP_LOCALRING_JUMP_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "insep/artin/base_change.hpp"
#include "insep/kaehler/differentials.hpp"
#include "insep/localring/point.hpp"
#include "insep/tower/parse.hpp"

namespace insep::localring {

/// Point of A^n after the base change k = F_p(t) -> k' = F_p(s) with
/// t_i = s_i^(p^e_i).
struct BaseChangedPoint {
    Ideal ideal;
    ClosedPoint point;
    std::vector<std::string> base_names;
    std::vector<unsigned> exponents;
};

namespace detail {

using UniPoly = tower::UniPoly;

inline std::vector<std::string> changed_names(const std::vector<std::string>& base, const std::vector<unsigned>& e,
                                              const std::vector<std::string>& vars) {
    std::vector<std::string> out = base;
    const bool single = base.size() == 1;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!e[i]) continue;
        std::string n = single ? "s" : "s" + std::to_string(i + 1);
        auto taken = [&](const std::string& c) {
            return std::find(vars.begin(), vars.end(), c) != vars.end() ||
                   std::find(out.begin(), out.end(), c) != out.end();
        };
        while (taken(n)) n += "_";
        out[i] = n;
    }
    return out;
}

inline UniPoly monic(UniPoly f) {
    const TowerElement inv = f.c.back().inverse();
    for (auto& x : f.c) x *= inv;
    return f;
}

inline UniPoly power(const UniPoly& f, std::size_t a) {
    UniPoly r{f.K, {f.K.one()}};
    for (std::size_t i = 0; i < a; ++i) r = r * f;
    return r;
}

/// g with g^(p^b) = f, if every coefficient allows it.
inline std::optional<UniPoly> frobenius_root(const UniPoly& f, unsigned b) {
    std::size_t q = 1;
    for (unsigned i = 0; i < b; ++i) q *= f.K.characteristic();
    UniPoly g{f.K, {}};
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].is_zero()) continue;
        if (i % q) return std::nullopt;
    }
    for (std::size_t i = 0; i < f.c.size(); i += q) {
        TowerElement x = f.c[i];
        try {
            for (unsigned k = 0; k < b && !x.is_zero(); ++k) x = tower::p_root_tower(x);
        } catch (const NotAPower&) {
            return std::nullopt;
        }
        g.c.push_back(x);
    }
    g.trim();
    return g;
}

/// Monic g with g^c = f for c prime to p, solved top coefficient first.
inline std::optional<UniPoly> coprime_root(const UniPoly& f, std::size_t c) {
    const std::size_t n = f.c.size() - 1;
    if (n % c) return std::nullopt;
    const std::size_t m = n / c;
    const FieldTower& K = f.K;
    UniPoly g{K, std::vector<TowerElement>(m + 1, K.zero())};
    g.c[m] = K.one();
    const TowerElement cinv = K.from_int(std::int64_t(c)).inverse();
    for (std::size_t k = 1; k <= m; ++k) {
        UniPoly partial = g;
        partial.trim();
        UniPoly pw = power(partial, c);
        const std::size_t at = n - k;
        const TowerElement have = at < pw.c.size() ? pw.c[at] : K.zero();
        g.c[m - k] = (f.c[at] - have) * cinv;
    }
    g.trim();
    if (!(power(g, c).c == f.c)) return std::nullopt;
    return g;
}

/// Monic f = g^a over a field with a maximal. For the minimal polynomial of
/// a point over a purely inseparable base change f is a power of an
/// irreducible polynomial, so g is that irreducible factor.
inline UniPoly reduce_power(const UniPoly& f) {
    const std::size_t n = f.c.size() - 1;
    const std::uint32_t p = f.K.characteristic();
    for (std::size_t a = n; a > 1; --a) {
        if (n % a) continue;
        std::size_t c = a;
        unsigned b = 0;
        while (c % p == 0) {
            c /= p;
            ++b;
        }
        auto h = frobenius_root(f, b);
        if (!h) continue;
        auto g = c == 1 ? h : coprime_root(*h, c);
        if (g) return *g;
    }
    return f;
}

/// Polynomial in the point variables representing a residue field element,
/// with algebraic layer j of kappa' standing for variable layer_var[j].
inline Poly<RatFunc> pull_back(const TowerElement& x, const std::vector<std::size_t>& layer_var, std::size_t n) {
    return x.to_poly().permute(layer_var, n);
}

}  // namespace detail

/// Rewrites I and the point over k' = k(t_i^(1/p^e_i)). The new point is the
/// radical of P k'[x]: variable by variable, the image of u_j over the
/// residue field built so far is a power of the minimal polynomial, whose
/// lift becomes the new generator.
inline BaseChangedPoint base_change_point(const Ideal& I, const ClosedPoint& P, const std::vector<unsigned>& e) {
    const std::size_t d = P.base_names().size();
    const std::size_t n = P.nvars();
    if (e.size() != d)
        throw ArityMismatch("expected " + std::to_string(d) + " exponents, got " + std::to_string(e.size()));
    detail::check_contained(I, P);
    const auto p = P.generators().front().context().p;
    std::vector<unsigned> factors(d, 1);
    for (std::size_t i = 0; i < d; ++i)
        for (unsigned k = 0; k < e[i]; ++k) factors[i] *= p;
    auto subst = [&](const RatFunc& c) { return c.scale_exponents(factors); };
    auto map = [&](const Poly<RatFunc>& f) { return f.map_coefficients(subst, f.context()); };

    BaseChangedPoint out;
    out.exponents = e;
    out.base_names = detail::changed_names(P.base_names(), e, P.var_names());
    for (const auto& f : I.generators) out.ideal.generators.push_back(map(f));

    // kappa' over F_p(s), built one main variable at a time.
    FieldTower K = FieldTower::rational(p, out.base_names);
    std::vector<TowerElement> values(n);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> layer_var;
    std::vector<Poly<RatFunc>> gens;
    try {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t x = P.main_variables()[i];
            const auto cs = map(P.generators()[i]).coeffs_in(x);
            detail::UniPoly f{K, {}};
            for (const auto& ci : cs) f.c.push_back(evaluate(ci, K, values));
            f.trim();
            const detail::UniPoly g = detail::reduce_power(detail::monic(f));
            const std::size_t deg = g.c.size() - 1;
            // Lift: x^deg + sum lift(g_k) x^k.
            Poly<RatFunc> lifted = Poly<RatFunc>::variable(cs[0].context(), n, x).pow(unsigned(deg));
            for (std::size_t k = 0; k < deg; ++k)
                lifted += detail::pull_back(g.c[k], layer_var, n) * Poly<RatFunc>::variable(cs[0].context(), n, x).pow(unsigned(k));
            gens.push_back(lifted);
            if (deg == 1) {
                values[x] = -g.c[0];
            } else {
                tower::LayerSpec L;
                L.kind = tower::LayerKind::Algebraic;
                L.name = P.var_names()[x];
                for (std::size_t k = 0; k < deg; ++k) L.coeffs.push_back(g.c[k]);
                K = tower::tower_extend(K, L);
                for (std::size_t v = 0; v < n; ++v)
                    if (done[v]) values[v] = K.embed(values[v]);
                values[x] = K.generator(K.layers().size() - 1);
                layer_var.push_back(x);
            }
            done[x] = true;
        }
    } catch (const ZeroDivisorDetected& err) {
        throw TriangularizationFailed(std::string("pulled-back generators do not triangularize: ") + err.what());
    }
    out.point = ClosedPoint(std::move(gens), P.var_names(), out.base_names);
    return out;
}

struct JumpReport {
    std::size_t edim_before = 0, edim_after = 0;
    long ejump = 0;
    long ecodim_before = 0, ecodim_after = 0;
    int krull_dim = 0;
    /// edim(kappa (x)_k k').
    std::size_t bound_lemma = 0;
    /// pdeg(kappa/k) - trdeg(kappa/k).
    std::size_t bound_theorem = 0;
    std::size_t base_dim = 0;  // d = trdeg(k/F_p)
    bool nonnegative = false;       // 0 <= ejump
    bool within_lemma = false;      // ejump <= bound_lemma
    bool lemma_within_theorem = false;  // bound_lemma <= bound_theorem
    bool corollary_edim = false;    // edim_after <= edim_before + d
    bool corollary_ecodim = false;  // ecodim_after <= d
    std::string point_after;

    bool all_satisfied() const {
        return nonnegative && within_lemma && lemma_within_theorem && corollary_edim && corollary_ecodim;
    }
    /// The inequalities whose hypotheses hold: the corollary ones only when
    /// the point is regular before base change.
    bool bounds_hold() const {
        return nonnegative && within_lemma && lemma_within_theorem &&
               (ecodim_before != 0 || (corollary_edim && corollary_ecodim));
    }
};

inline artin::InseparableExtensionSpec spec_for_exponents(const FieldTower& kappa, const std::vector<unsigned>& e) {
    artin::InseparableExtensionSpec s;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) s.entries.push_back({RatFunc::param(kappa.base_context(), i), e[i]});
    return s;
}

inline JumpReport ejump_at_point(const Ideal& I, const ClosedPoint& P, const std::vector<unsigned>& e) {
    JumpReport r;
    r.base_dim = P.base_names().size();
    r.edim_before = edim_at_point(I, P);
    r.krull_dim = krull_dim(I);
    const BaseChangedPoint B = base_change_point(I, P, e);
    r.edim_after = edim_at_point(B.ideal, B.point);
    r.point_after = B.point.to_string();
    r.ejump = long(r.edim_after) - long(r.edim_before);
    r.ecodim_before = long(r.edim_before) - r.krull_dim;
    r.ecodim_after = long(r.edim_after) - r.krull_dim;

    const ResidueField R = residue_field(P);
    const auto spec = spec_for_exponents(R.kappa, e);
    r.bound_lemma = spec.entries.empty() ? 0 : artin::ejump_field(R.kappa, spec);
    r.bound_theorem = kaehler::schroer_predicted_edim(R.kappa, kaehler::Reference::Base);

    r.nonnegative = r.ejump >= 0;
    r.within_lemma = r.ejump <= long(r.bound_lemma);
    r.lemma_within_theorem = r.bound_lemma <= r.bound_theorem;
    r.corollary_edim = r.edim_after <= r.edim_before + r.base_dim;
    r.corollary_ecodim = r.ecodim_after <= long(r.base_dim);
    return r;
}

/// ejump_at_point that raises BoundViolated naming the first failed
/// inequality. The corollary inequalities are enforced when the point is
/// regular before base change, which is the corollary's hypothesis.
inline JumpReport verify_bounds(const Ideal& I, const ClosedPoint& P, const std::vector<unsigned>& e) {
    JumpReport r = ejump_at_point(I, P, e);
    auto fail = [&](const std::string& what) {
        throw BoundViolated(what + " fails at " + P.to_string() + " (ejump " + std::to_string(r.ejump) +
                            ", edim(kappa (x) k') " + std::to_string(r.bound_lemma) + ", pdeg - trdeg " +
                            std::to_string(r.bound_theorem) + ")");
    };
    if (!r.nonnegative) fail("0 <= ejump");
    if (!r.within_lemma) fail("ejump <= edim(kappa (x) k')");
    if (!r.lemma_within_theorem) fail("edim(kappa (x) k') <= pdeg - trdeg");
    if (r.ecodim_before == 0) {
        if (!r.corollary_edim) fail("edim_after <= edim_before + d");
        if (!r.corollary_ecodim) fail("ecodim_after <= d");
    }
    return r;
}

struct StabilityReport {
    std::size_t variable = 0;
    std::vector<long> jumps;  // exponent 1, 2, ...
    bool stable() const {
        return std::adjacent_find(jumps.begin(), jumps.end(), std::not_equal_to<>()) == jumps.end();
    }
};

inline StabilityReport verify_height_one_stability(const Ideal& I, const ClosedPoint& P, std::size_t var,
                                                   unsigned n_max) {
    if (n_max < 2) throw InvalidSpec("height-one stability needs n_max >= 2");
    if (var >= P.base_names().size()) throw ArityMismatch("no base variable with index " + std::to_string(var));
    StabilityReport s;
    s.variable = var;
    for (unsigned n = 1; n <= n_max; ++n) {
        std::vector<unsigned> e(P.base_names().size(), 0);
        e[var] = n;
        s.jumps.push_back(ejump_at_point(I, P, e).ejump);
    }
    return s;
}

}  // namespace insep::localring

#endif  // INSEP_LOCALRING_JUMP_HPP
