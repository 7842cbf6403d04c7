#ifndef INSEP_ARTIN_BASE_CHANGE_HPP
#define INSEP_ARTIN_BASE_CHANGE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "insep/errors.hpp"
#include "insep/kaehler/differentials.hpp"
#include "insep/linalg.hpp"
#include "insep/tower/p_power.hpp"

namespace insep::artin {

using ff::RatFunc;
using tower::FieldTower;
using tower::TowerElement;

/// k' = k(a_1^(1/p^n_1), ..., a_r^(1/p^n_r)) with every a_i in k.
struct InseparableExtensionSpec {
    struct Entry {
        RatFunc radicand;
        unsigned exponent = 1;
    };
    std::vector<Entry> entries;

    std::size_t size() const { return entries.size(); }

    /// Total degree: prod p^n_i.
    std::size_t degree(std::uint32_t p) const {
        std::size_t d = 1;
        for (const auto& e : entries)
            for (unsigned i = 0; i < e.exponent; ++i) d *= p;
        return d;
    }

    /// All exponents 1 with the base variables as radicands: k' = k^(1/p).
    static InseparableExtensionSpec height_one(const FieldTower& K) {
        InseparableExtensionSpec s;
        for (std::size_t i = 0; i < K.nparams(); ++i) s.entries.push_back({RatFunc::param(K.base_context(), i), 1});
        return s;
    }

    InseparableExtensionSpec with_exponent(unsigned n) const {
        InseparableExtensionSpec s = *this;
        for (auto& e : s.entries) e.exponent = n;
        return s;
    }
};

/// Polynomial in z_1..z_r with coefficients in K: elements of
/// K[z]/(z_i^(p^n_i) - a_i) before reduction.
class ZPoly {
public:
    using Exps = std::vector<unsigned>;

    ZPoly() = default;
    ZPoly(FieldTower K, std::size_t nvars) : K_(std::move(K)), nvars_(nvars) {}

    static ZPoly constant(const TowerElement& c, std::size_t nvars) {
        ZPoly r(c.tower(), nvars);
        r.add_term(Exps(nvars, 0), c);
        return r;
    }
    static ZPoly variable(const FieldTower& K, std::size_t nvars, std::size_t i, unsigned power = 1) {
        ZPoly r(K, nvars);
        Exps e(nvars, 0);
        e[i] = power;
        r.add_term(e, K.one());
        return r;
    }

    const FieldTower& tower() const { return K_; }
    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }

    struct HighFirst {
        bool operator()(const Exps& a, const Exps& b) const {
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        }
    };
    using Terms = std::map<Exps, TowerElement, HighFirst>;
    const Terms& terms() const { return terms_; }

    void add_term(const Exps& e, const TowerElement& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    ZPoly operator+(const ZPoly& o) const {
        ZPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    ZPoly operator-(const ZPoly& o) const {
        ZPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    ZPoly operator*(const ZPoly& o) const {
        ZPoly r(K_, nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exps e(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    /// Frobenius: (sum c z^e)^(p^k) = sum c^(p^k) z^(p^k e).
    ZPoly frobenius(unsigned k) const {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) q *= K_.characteristic();
        ZPoly r(K_, nvars_);
        for (const auto& [e, c] : terms_) {
            Exps f = e;
            for (auto& x : f) x = static_cast<unsigned>(x * q);
            r.add_term(f, c.pow(q));
        }
        return r;
    }

    std::string to_string(const std::vector<std::string>& znames) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = nvars_; i-- > 0;) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += znames[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            std::string coef = c.to_string();
            const bool compound = coef.find(' ') != std::string::npos;
            if (!out.empty()) out += " + ";
            if (mono.empty())
                out += coef;
            else if (c.is_one())
                out += mono;
            else
                out += (compound ? "(" + coef + ")" : coef) + "*" + mono;
        }
        return out;
    }

private:
    FieldTower K_;
    std::size_t nvars_ = 0;
    Terms terms_;
};

struct Nilpotent {
    /// Nilpotency index is p^order.
    unsigned order = 1;
    std::size_t entry = 0;
    ZPoly expression;
    std::string text;
};

/// K (x)_k k' presented as residue_field[eps_1..eps_s]/(eps_i^(p^order_i)).
struct TruncatedStructure {
    FieldTower base_field;
    FieldTower residue_field;
    std::vector<Nilpotent> nilpotents;
    std::size_t total_extension_degree = 1;
    /// Entry processing order actually used.
    std::vector<std::size_t> order;
    /// Per entry (in spec order): m = min(n, max{k : a in L^(p^k)}).
    std::vector<unsigned> root_exponents;
    std::vector<std::string> znames;

    std::size_t edim() const { return nilpotents.size(); }
    std::size_t residue_degree() const { return residue_field.degree() / base_field.degree(); }
};

namespace detail {

inline std::string fresh_name(const FieldTower& K, const std::string& stem, std::size_t i) {
    std::string name = stem + std::to_string(i);
    const auto& base = K.base_names();
    while (K.layer_index(name) != tower::detail::TowerData::npos ||
           std::find(base.begin(), base.end(), name) != base.end())
        name += "_";
    return name;
}

inline std::vector<std::string> znames(const FieldTower& K, std::size_t r) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(fresh_name(K, "z", i + 1));
    return out;
}

inline void validate(const FieldTower& K, const InseparableExtensionSpec& spec) {
    if (spec.entries.empty()) throw InvalidSpec("extension spec needs at least one entry");
    // [k':k] = prod p^n_i iff the radicands are p-independent in k, that is
    // iff their differentials are independent in Omega_{k/F_p}.
    FieldTower k = FieldTower::rational(K.characteristic(), K.base_names());
    EchelonBasis<TowerElement> diffs(k.nparams());
    std::size_t i = 0;
    for (const auto& e : spec.entries) {
        ++i;
        if (!(e.radicand.context() == K.base_context()))
            throw InvalidSpec("radicand " + std::to_string(i) + " is not an element of the base field");
        if (e.radicand.is_zero()) throw InvalidSpec("radicand " + std::to_string(i) + " is zero");
        if (e.exponent < 1) throw InvalidSpec("exponent of entry " + std::to_string(i) + " must be >= 1");
        if (!diffs.insert(kaehler::differential(k.from_base(e.radicand), kaehler::Reference::PrimeField)))
            throw InvalidSpec("radicand " + e.radicand.to_string(K.base_names()) +
                              " is p-dependent on the preceding entries; [k':k] would drop");
    }
}

/// Residue field L of K (x) k' with Z_i -> zbar_i, as generated entry by entry.
struct PointData {
    FieldTower L;
    std::vector<unsigned> m, e;         // root exponent and layer exponent per entry
    std::vector<TowerElement> root;     // r_i in L_{i-1}, r_i^(p^m_i) = a_i
    std::vector<std::size_t> layer;     // index of the new layer of L, or npos
    std::vector<TowerElement> value;    // zbar_i in the final L
};

inline PointData build_point(const FieldTower& K, const InseparableExtensionSpec& spec,
                             const std::vector<std::size_t>& order, const std::vector<std::string>& zn) {
    PointData P;
    const std::size_t r = spec.size();
    P.L = K;
    P.m.assign(r, 0);
    P.e.assign(r, 0);
    P.root.assign(r, TowerElement());
    P.layer.assign(r, tower::detail::TowerData::npos);
    for (std::size_t i : order) {
        const auto& en = spec.entries[i];
        auto pe = tower::max_p_power_exponent_with_root(P.L.from_base(en.radicand), en.exponent);
        P.m[i] = pe.exponent;
        P.root[i] = pe.root;
        if (pe.exponent < en.exponent) {
            P.e[i] = en.exponent - pe.exponent;
            std::string name = fresh_name(P.L, "w", i + 1);
            (void)zn;
            P.L = tower::adjoin_p_root(P.L, pe.root, P.e[i], name);
            P.layer[i] = P.L.layers().size() - 1;
        }
    }
    P.value.assign(r, TowerElement());
    for (std::size_t i = 0; i < r; ++i) {
        P.root[i] = P.L.embed(P.root[i]);
        P.value[i] = P.layer[i] == tower::detail::TowerData::npos ? P.root[i] : P.L.generator(P.layer[i]);
    }
    return P;
}

/// Polynomial representative in K[z] of an element of L, with each adjoined
/// layer generator replaced by its z variable. Sets `inexact` if a layer in
/// `inexact_layers` occurs.
inline ZPoly lift(const PointData& P, const FieldTower& K, const TowerElement& x, std::size_t r,
                  const std::vector<bool>& inexact_layer, bool* inexact = nullptr) {
    const auto& d = P.L.data();
    const std::size_t NK = K.degree();
    // Adjoined layers in order of the algebraic layers of L above K.
    std::vector<std::size_t> var_of;  // per adjoined algebraic layer: z index
    std::vector<unsigned> deg;
    std::vector<bool> bad;
    for (std::size_t j = K.data().nalg() + 1; j <= d.nalg(); ++j) {
        const std::size_t li = d.alg[j - 1];
        std::size_t z = r;
        for (std::size_t i = 0; i < r; ++i)
            if (P.layer[i] == li) z = i;
        var_of.push_back(z);
        deg.push_back(d.alg_layer(j).degree);
        bad.push_back(z < r && inexact_layer[z]);
    }
    ZPoly out(K, r);
    const auto& c = x.coords();
    for (std::size_t hi = 0; hi < c.size() / NK; ++hi) {
        tower::Coords kc(c.begin() + hi * NK, c.begin() + (hi + 1) * NK);
        if (tower::detail::TowerData::all_zero(kc)) continue;
        // Coordinates of L live at L's leaf arity; K may have fewer parameters.
        for (auto& v : kc) v = v.restrict(K.leaf_context().nparams);
        ZPoly::Exps ex(r, 0);
        std::size_t rest = hi;
        for (std::size_t k = 0; k < var_of.size(); ++k) {
            const unsigned digit = static_cast<unsigned>(rest % deg[k]);
            rest /= deg[k];
            if (digit && bad[k] && inexact) *inexact = true;
            ex[var_of[k]] += digit;
        }
        out.add_term(ex, K.from_coords(std::move(kc)));
    }
    return out;
}

/// Coordinates in n/n^2 (basis v_1..v_r) of h in n, where n = (v_i) and
/// v_i = Z_i^(p^e_i) - lift(r_i). The quotients of the division by the
/// triangular set, taken mod n, are the coordinates.
inline std::vector<TowerElement> cotangent_coords(const PointData& P, const FieldTower& K, ZPoly h,
                                                  const std::vector<ZPoly>& lifts) {
    const std::size_t r = lifts.size();
    const std::uint32_t p = K.characteristic();
    std::vector<unsigned> bound(r);
    for (std::size_t i = 0; i < r; ++i) {
        bound[i] = 1;
        for (unsigned k = 0; k < P.e[i]; ++k) bound[i] *= p;
    }
    auto residue = [&](const ZPoly::Exps& ex) {
        TowerElement v = P.L.one();
        for (std::size_t i = 0; i < r; ++i)
            if (ex[i]) v *= P.value[i].pow(ex[i]);
        return v;
    };
    std::vector<TowerElement> coords(r, P.L.zero());
    ZPoly::Terms work = h.terms();
    while (!work.empty()) {
        auto it = std::prev(work.end());
        ZPoly::Exps ex = it->first;
        TowerElement c = it->second;
        work.erase(it);
        std::size_t j = r;
        for (std::size_t i = r; i-- > 0;)
            if (ex[i] >= bound[i]) {
                j = i;
                break;
            }
        if (j == r) throw InternalInvariantViolation("cotangent reduction left a nonzero residue");
        ex[j] -= bound[j];
        coords[j] += P.L.embed(c) * residue(ex);
        for (const auto& [e2, c2] : lifts[j].terms()) {
            ZPoly::Exps f(r);
            for (std::size_t i = 0; i < r; ++i) f[i] = ex[i] + e2[i];
            TowerElement add = c * c2;
            auto jt = work.find(f);
            if (jt == work.end()) {
                if (!add.is_zero()) work.emplace(f, add);
            } else {
                jt->second += add;
                if (jt->second.is_zero()) work.erase(jt);
            }
        }
    }
    return coords;
}

/// edim of K (x)_k k' as r - rank of the images of z_i^(p^n_i) - a_i in n/n^2.
inline std::size_t exact_edim(const PointData& P, const FieldTower& K, const InseparableExtensionSpec& spec) {
    const std::size_t r = spec.size();
    const std::vector<bool> none(r, false);
    std::vector<ZPoly> lifts;
    for (std::size_t i = 0; i < r; ++i) lifts.push_back(lift(P, K, P.root[i], r, none));
    std::vector<std::vector<TowerElement>> rows;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<TowerElement> row(r, P.L.zero());
        if (P.m[i] == 0) {
            row[i] = P.L.one();
        } else {
            ZPoly h = lifts[i].frobenius(P.m[i]) - ZPoly::constant(K.from_base(spec.entries[i].radicand), r);
            row = cotangent_coords(P, K, h, lifts);
        }
        rows.push_back(std::move(row));
    }
    return r - matrix_rank(rows, r);
}

}  // namespace detail

/// Number of nilpotent generators of K (x)_k k', that is dim of m/m^2 over
/// the residue field.
inline std::size_t edim_of_base_change(const FieldTower& K, const InseparableExtensionSpec& spec) {
    detail::validate(K, spec);
    std::vector<std::size_t> order(spec.size());
    std::iota(order.begin(), order.end(), 0);
    const auto zn = detail::znames(K, spec.size());
    return detail::exact_edim(detail::build_point(K, spec, order, zn), K, spec);
}

/// For a field K the embedding jump over k'/k is edim(K (x)_k k').
inline std::size_t ejump_field(const FieldTower& K, const InseparableExtensionSpec& spec) {
    return edim_of_base_change(K, spec);
}

/// Iterates the single-radicand structure lemma over the spec entries. The
/// lift of the residue field into K[z]/(z_i^(p^n_i) - a_i) is multiplicative
/// only on layers from entries with m = 0 or m >= n; entry orders that would
/// lift a root through another layer are skipped.
inline TruncatedStructure base_change_structure(const FieldTower& K, const InseparableExtensionSpec& spec) {
    detail::validate(K, spec);
    const std::size_t r = spec.size();
    const auto zn = detail::znames(K, r);
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::size_t expected = std::size_t(-1);
    do {
        detail::PointData P = detail::build_point(K, spec, order, zn);
        if (expected == std::size_t(-1)) expected = detail::exact_edim(P, K, spec);
        std::vector<bool> inexact(r, false);
        for (std::size_t i = 0; i < r; ++i) inexact[i] = P.m[i] >= 1 && P.e[i] >= 1;
        TruncatedStructure S;
        S.base_field = K;
        S.residue_field = P.L;
        S.total_extension_degree = spec.degree(K.characteristic());
        S.order = order;
        S.root_exponents = P.m;
        S.znames = zn;
        bool ok = true;
        for (std::size_t i : order) {
            if (P.m[i] == 0) continue;
            bool bad = false;
            ZPoly lr = detail::lift(P, K, P.root[i], r, inexact, &bad);
            if (bad) {
                ok = false;
                break;
            }
            Nilpotent eps;
            eps.entry = i;
            eps.order = std::min(P.m[i], spec.entries[i].exponent);
            unsigned zpow = 1;
            for (unsigned k = 0; k < P.e[i]; ++k) zpow *= K.characteristic();
            eps.expression = lr - ZPoly::variable(K, r, i, zpow);
            eps.text = eps.expression.to_string(zn);
            S.nilpotents.push_back(std::move(eps));
        }
        if (!ok) continue;
        if (S.edim() != expected)
            throw InternalInvariantViolation("structure has " + std::to_string(S.edim()) +
                                             " nilpotents but the cotangent space has dimension " +
                                             std::to_string(expected));
        return S;
    } while (std::next_permutation(order.begin(), order.end()));
    throw UnsupportedPresentation("no entry order gives a multiplicative lift of the residue field");
}

}  // namespace insep::artin

#endif  // INSEP_ARTIN_BASE_CHANGE_HPP
