#ifndef INSEP_TOWER_FIELD_TOWER_HPP
#define INSEP_TOWER_FIELD_TOWER_HPP

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "insep/errors.hpp"
#include "insep/ff/poly.hpp"
#include "insep/ff/ratfunc.hpp"

namespace insep::tower {

using ff::RatFunc;
using ff::RatFuncContext;
using Coords = std::vector<RatFunc>;

enum class LayerKind { Transcendental, Algebraic, InseparableRoot };

inline const char* to_string(LayerKind k) {
    switch (k) {
        case LayerKind::Transcendental: return "trans";
        case LayerKind::Algebraic: return "alg";
        case LayerKind::InseparableRoot: return "root";
    }
    return "?";
}

/// One generator of the tower. Transcendental generators become parameters of
/// the rational base k0 = F_p(t, y); algebraic ones are stored by the monic
/// minimal polynomial y^deg + sum_{i<deg} coeffs[i] y^i, coefficients living
/// in the field below (coordinate vectors of that level).
struct Layer {
    LayerKind kind = LayerKind::Transcendental;
    std::string name;
    unsigned degree = 0;
    std::vector<Coords> coeffs;
    // InseparableRoot only: the radicand a and exponent e of y^(p^e) - a.
    Coords radicand;
    unsigned exponent = 0;

    friend bool operator==(const Layer&, const Layer&) = default;
};

class TowerElement;

namespace detail {

struct TowerData {
    std::uint32_t p = 2;
    std::vector<std::string> base_names;
    std::vector<Layer> layers;
    std::shared_ptr<const TowerData> parent;

    // Derived layout.
    RatFuncContext leaf{2, 0};
    std::vector<std::string> leaf_names;
    std::vector<std::size_t> alg;       // indices of algebraic layers in `layers`
    std::vector<std::size_t> block{1};  // block[j] = product of the first j algebraic degrees
    std::vector<std::size_t> leaf_of;   // per layer: leaf parameter index (transcendental) or npos

    static constexpr std::size_t npos = std::size_t(-1);

    std::size_t nalg() const { return alg.size(); }
    std::size_t dim() const { return block.back(); }
    const Layer& alg_layer(std::size_t j) const { return layers[alg[j - 1]]; }

    RatFunc zero() const { return RatFunc::zero(leaf); }

    static bool all_zero(std::span<const RatFunc> v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    Coords add(std::span<const RatFunc> a, std::span<const RatFunc> b) const {
        Coords r(a.begin(), a.end());
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!b[i].is_zero()) r[i] = r[i] + b[i];
        return r;
    }
    Coords sub(std::span<const RatFunc> a, std::span<const RatFunc> b) const {
        Coords r(a.begin(), a.end());
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!b[i].is_zero()) r[i] = r[i] - b[i];
        return r;
    }

    /// Product at level j (the field generated by the first j algebraic layers).
    Coords mul(std::size_t j, std::span<const RatFunc> a, std::span<const RatFunc> b) const {
        if (j == 0) return {a[0] * b[0]};
        const Layer& L = alg_layer(j);
        const std::size_t d = L.degree, blk = block[j - 1];
        std::vector<Coords> prod(2 * d - 1, Coords(blk, zero()));
        std::vector<bool> az(d), bz(d);
        for (std::size_t i = 0; i < d; ++i) {
            az[i] = all_zero(a.subspan(i * blk, blk));
            bz[i] = all_zero(b.subspan(i * blk, blk));
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (az[i]) continue;
            for (std::size_t l = 0; l < d; ++l) {
                if (bz[l]) continue;
                Coords c = mul(j - 1, a.subspan(i * blk, blk), b.subspan(l * blk, blk));
                prod[i + l] = add(prod[i + l], c);
            }
        }
        reduce_top(j, prod);
        Coords out;
        out.reserve(d * blk);
        for (std::size_t i = 0; i < d; ++i) out.insert(out.end(), prod[i].begin(), prod[i].end());
        return out;
    }

    /// Reduces a polynomial in the j-th generator (blocks over level j-1)
    /// modulo its minimal polynomial, leaving `degree` blocks.
    void reduce_top(std::size_t j, std::vector<Coords>& poly) const {
        const Layer& L = alg_layer(j);
        const std::size_t d = L.degree;
        for (std::size_t k = poly.size(); k-- > d;) {
            if (all_zero(poly[k])) continue;
            for (std::size_t l = 0; l < d; ++l) {
                if (all_zero(L.coeffs[l])) continue;
                Coords c = mul(j - 1, poly[k], L.coeffs[l]);
                poly[k - d + l] = sub(poly[k - d + l], c);
            }
        }
        poly.resize(d);
    }

    Coords inverse(std::size_t j, std::span<const RatFunc> a) const {
        if (all_zero(a)) throw DivByZero("inverse of zero in field tower");
        if (j == 0) return {a[0].inverse()};
        const Layer& L = alg_layer(j);
        const std::size_t d = L.degree, blk = block[j - 1];
        if (L.kind == LayerKind::InseparableRoot) return inverse_by_frobenius(j, a);
        using UPoly = std::vector<Coords>;  // coefficient blocks, low degree first
        auto trim = [&](UPoly& f) {
            while (!f.empty() && all_zero(f.back())) f.pop_back();
        };
        auto usub = [&](const UPoly& f, const UPoly& g) {
            UPoly r = f;
            if (r.size() < g.size()) r.resize(g.size(), Coords(blk, zero()));
            for (std::size_t i = 0; i < g.size(); ++i) r[i] = sub(r[i], g[i]);
            trim(r);
            return r;
        };
        auto umul = [&](const UPoly& f, const UPoly& g) {
            if (f.empty() || g.empty()) return UPoly{};
            UPoly r(f.size() + g.size() - 1, Coords(blk, zero()));
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (all_zero(f[i])) continue;
                for (std::size_t k = 0; k < g.size(); ++k) {
                    if (all_zero(g[k])) continue;
                    r[i + k] = add(r[i + k], mul(j - 1, f[i], g[k]));
                }
            }
            trim(r);
            return r;
        };
        UPoly r0(L.coeffs.begin(), L.coeffs.end());
        r0.push_back(one_coords(j - 1));
        UPoly r1;
        for (std::size_t i = 0; i < d; ++i) r1.emplace_back(a.begin() + i * blk, a.begin() + (i + 1) * blk);
        trim(r1);
        UPoly s0, s1{one_coords(j - 1)};
        while (r1.size() > 1) {
            UPoly q, r = r0;
            Coords inv_lc = inverse(j - 1, r1.back());
            while (r.size() >= r1.size()) {
                Coords c = mul(j - 1, r.back(), inv_lc);
                std::size_t shift = r.size() - r1.size();
                if (q.size() < shift + 1) q.resize(shift + 1, Coords(blk, zero()));
                q[shift] = c;
                UPoly t(shift, Coords(blk, zero()));
                for (const auto& b : r1) t.push_back(mul(j - 1, b, c));
                r = usub(r, t);
                if (r.empty()) break;
            }
            if (r.empty())
                throw ZeroDivisorDetected("layer '" + L.name +
                                          "': its asserted minimal polynomial has a nontrivial factor");
            UPoly s = usub(s0, umul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        Coords inv_c = inverse(j - 1, r1[0]);
        Coords out(d * blk, zero());
        for (std::size_t i = 0; i < s1.size() && i < d; ++i) {
            Coords c = mul(j - 1, s1[i], inv_c);
            std::copy(c.begin(), c.end(), out.begin() + i * blk);
        }
        return out;
    }

    /// For y^q = r with q = p^e, a^q lies in the level below, so
    /// 1/a = a^(q-1) / a^q needs only one inversion one level down.
    Coords inverse_by_frobenius(std::size_t j, std::span<const RatFunc> a) const {
        const Layer& L = alg_layer(j);
        const std::size_t q = L.degree, blk = block[j - 1];
        Coords norm(blk, zero()), rpow = one_coords(j - 1);
        for (std::size_t i = 0; i < q; ++i) {
            auto ci = a.subspan(i * blk, blk);
            if (!all_zero(ci)) norm = add(norm, mul(j - 1, pow(j - 1, ci, q), rpow));
            if (i + 1 < q) rpow = mul(j - 1, rpow, L.radicand);
        }
        Coords inv_norm = inverse(j - 1, norm);
        Coords out = pow(j, a, q - 1);
        for (std::size_t i = 0; i < q; ++i) {
            auto bi = std::span<const RatFunc>(out).subspan(i * blk, blk);
            if (all_zero(bi)) continue;
            Coords c = mul(j - 1, bi, inv_norm);
            std::copy(c.begin(), c.end(), out.begin() + i * blk);
        }
        return out;
    }

    Coords pow(std::size_t j, std::span<const RatFunc> a, std::uint64_t e) const {
        Coords acc = one_coords(j), base(a.begin(), a.end());
        while (e) {
            if (e & 1) acc = mul(j, acc, base);
            e >>= 1;
            if (e) base = mul(j, base, base);
        }
        return acc;
    }

    bool same_as(const TowerData& o) const {
        return this == &o || (p == o.p && base_names == o.base_names && layers == o.layers);
    }

    Coords one_coords(std::size_t j) const {
        Coords c(block[j], zero());
        c[0] = RatFunc::one(leaf);
        return c;
    }
};

}  // namespace detail

/// A finitely generated field extension of k = F_p(t_1..t_d) presented as an
/// ordered list of layers. Immutable and cheap to copy.
///
/// Irreducibility of Algebraic layers is presumed: arithmetic that reveals a
/// zero divisor throws ZeroDivisorDetected naming the layer.
class FieldTower {
public:
    FieldTower() : FieldTower(rational(2, {})) {}

    static FieldTower rational(std::uint32_t p, std::vector<std::string> base_names) {
        auto d = std::make_shared<detail::TowerData>();
        d->p = ff::PrimeContext(p).p;
        d->base_names = std::move(base_names);
        finalize(*d);
        return FieldTower(std::move(d));
    }

    std::uint32_t characteristic() const { return data_->p; }
    std::size_t nparams() const { return data_->base_names.size(); }
    const std::vector<std::string>& base_names() const { return data_->base_names; }
    const std::vector<Layer>& layers() const { return data_->layers; }
    std::size_t transcendental_count() const { return data_->leaf.nparams - nparams(); }
    /// Degree over k0 = F_p(t, y).
    std::size_t degree() const { return data_->dim(); }
    RatFuncContext base_context() const { return RatFuncContext(data_->p, nparams()); }
    RatFuncContext leaf_context() const { return data_->leaf; }
    const std::vector<std::string>& leaf_names() const { return data_->leaf_names; }
    const detail::TowerData& data() const { return *data_; }

    /// Names of tower generators as they appear in element rendering.
    std::vector<std::string> algebraic_names() const {
        std::vector<std::string> out;
        for (auto i : data_->alg) out.push_back(data_->layers[i].name);
        return out;
    }

    FieldTower extend_transcendental(const std::string& name) const {
        auto d = child();
        Layer L;
        L.kind = LayerKind::Transcendental;
        L.name = name;
        const std::size_t np = data_->leaf.nparams + 1;
        for (auto& old : d->layers) lift_layer(old, np);
        d->layers.push_back(std::move(L));
        finalize(*d);
        return FieldTower(std::move(d));
    }

    /// Appends y with minimal polynomial y^deg + sum coeffs[i] y^i. The
    /// polynomial is presumed irreducible; see the class comment.
    FieldTower extend_algebraic_unchecked(const std::string& name, const std::vector<TowerElement>& coeffs) const;
    /// Appends y with y^(p^e) = radicand, without checking radicand not in K^p.
    FieldTower extend_root_unchecked(const std::string& name, const TowerElement& radicand, unsigned e) const;

    TowerElement zero() const;
    TowerElement one() const;
    TowerElement from_int(std::int64_t v) const;
    /// Base parameter t_i.
    TowerElement param(std::size_t i) const;
    /// Generator of layer `layer_index`.
    TowerElement generator(std::size_t layer_index) const;
    TowerElement from_base(const RatFunc& f) const;
    TowerElement from_leaf(const RatFunc& f) const;
    TowerElement from_coords(Coords c) const;
    /// Basis element with a single 1 at flat index i.
    TowerElement basis(std::size_t i) const;

    /// True if `other`'s layers are an initial segment of this tower's.
    bool extends(const FieldTower& other) const {
        for (auto d = data_; d; d = d->parent)
            if (d->layers.size() == other.data_->layers.size()) return d->same_as(*other.data_);
        return false;
    }
    /// Image of an element of a prefix tower in this tower.
    TowerElement embed(const TowerElement& e) const;

    std::size_t layer_index(const std::string& name) const {
        for (std::size_t i = 0; i < data_->layers.size(); ++i)
            if (data_->layers[i].name == name) return i;
        return detail::TowerData::npos;
    }

    /// Text form `F2(t) adjoin u alg u^2 + t adjoin w root u exp 1`.
    std::string describe() const;

    friend bool operator==(const FieldTower& a, const FieldTower& b) { return a.data_->same_as(*b.data_); }

private:
    explicit FieldTower(std::shared_ptr<const detail::TowerData> d) : data_(std::move(d)) {}

    std::shared_ptr<detail::TowerData> child() const {
        auto d = std::make_shared<detail::TowerData>(*data_);
        d->parent = data_;
        return d;
    }

    static void lift_coords(Coords& c, std::size_t np) {
        for (auto& x : c) x = x.extend(np);
    }
    static void lift_layer(Layer& L, std::size_t np) {
        for (auto& c : L.coeffs) lift_coords(c, np);
        lift_coords(L.radicand, np);
    }

    static void finalize(detail::TowerData& d) {
        d.alg.clear();
        d.block.assign(1, 1);
        d.leaf_of.clear();
        d.leaf_names = d.base_names;
        for (std::size_t i = 0; i < d.layers.size(); ++i) {
            const Layer& L = d.layers[i];
            if (L.kind == LayerKind::Transcendental) {
                d.leaf_of.push_back(d.leaf_names.size());
                d.leaf_names.push_back(L.name);
            } else {
                d.leaf_of.push_back(detail::TowerData::npos);
                d.alg.push_back(i);
                d.block.push_back(d.block.back() * L.degree);
            }
        }
        d.leaf = RatFuncContext(d.p, d.leaf_names.size());
    }

    std::shared_ptr<const detail::TowerData> data_;
};

/// Element of a FieldTower: coordinates over k0 in the monomial basis of the
/// algebraic layers (first algebraic layer least significant).
class TowerElement {
public:
    TowerElement() = default;
    TowerElement(FieldTower K, Coords c) : K_(std::move(K)), c_(std::move(c)) {}

    const FieldTower& tower() const { return K_; }
    const Coords& coords() const { return c_; }

    bool is_zero() const { return detail::TowerData::all_zero(c_); }
    bool is_one() const {
        if (!c_[0].is_one()) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    /// True if the element lies in k0 (no algebraic part).
    bool in_leaf_field() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    TowerElement operator+(const TowerElement& o) const { return {K_, data().add(c_, same(o).c_)}; }
    TowerElement operator-(const TowerElement& o) const { return {K_, data().sub(c_, same(o).c_)}; }
    TowerElement operator-() const {
        Coords r = c_;
        for (auto& x : r) x = -x;
        return {K_, std::move(r)};
    }
    TowerElement operator*(const TowerElement& o) const { return {K_, data().mul(data().nalg(), c_, same(o).c_)}; }
    TowerElement operator/(const TowerElement& o) const { return *this * same(o).inverse(); }
    TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
    TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

    TowerElement inverse() const { return {K_, data().inverse(data().nalg(), c_)}; }
    TowerElement pow(std::uint64_t e) const {
        TowerElement acc = K_.one(), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const TowerElement& a, const TowerElement& b) {
        return a.K_ == b.K_ && a.c_ == b.c_;
    }

    /// Polynomial in the algebraic generators with k0 coefficients.
    ff::Poly<RatFunc> to_poly() const {
        const auto& d = data();
        std::vector<ff::Poly<RatFunc>::Term> terms;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            ff::Monomial m;
            std::size_t rest = i;
            for (std::size_t j = 1; j <= d.nalg(); ++j) {
                const std::size_t deg = d.alg_layer(j).degree;
                m.e[j - 1] = static_cast<std::uint16_t>(rest % deg);
                rest /= deg;
            }
            terms.push_back({m, c_[i]});
        }
        return ff::Poly<RatFunc>::from_terms(d.leaf, d.nalg(), std::move(terms));
    }

    std::string to_string() const { return to_poly().to_string(K_.algebraic_names(), K_.leaf_names()); }

private:
    const detail::TowerData& data() const { return K_.data(); }
    const TowerElement& same(const TowerElement& o) const {
        if (!(K_ == o.K_)) throw ArityMismatch("tower elements from different towers");
        return o;
    }

    FieldTower K_;
    Coords c_;
};

inline TowerElement FieldTower::zero() const { return {*this, Coords(degree(), data_->zero())}; }
inline TowerElement FieldTower::one() const { return {*this, data_->one_coords(data_->nalg())}; }
inline TowerElement FieldTower::from_int(std::int64_t v) const { return from_leaf(RatFunc::from_int(data_->leaf, v)); }
inline TowerElement FieldTower::from_leaf(const RatFunc& f) const {
    if (!(f.context() == data_->leaf)) throw ArityMismatch("coefficient is not in this tower's rational base");
    Coords c(degree(), data_->zero());
    c[0] = f;
    return {*this, std::move(c)};
}
inline TowerElement FieldTower::from_base(const RatFunc& f) const { return from_leaf(f.extend(data_->leaf.nparams)); }
inline TowerElement FieldTower::param(std::size_t i) const { return from_leaf(RatFunc::param(data_->leaf, i)); }
inline TowerElement FieldTower::from_coords(Coords c) const {
    if (c.size() != degree()) throw ArityMismatch("coordinate vector has wrong length");
    return {*this, std::move(c)};
}
inline TowerElement FieldTower::basis(std::size_t i) const {
    Coords c(degree(), data_->zero());
    c.at(i) = RatFunc::one(data_->leaf);
    return {*this, std::move(c)};
}
inline TowerElement FieldTower::generator(std::size_t layer_index) const {
    const auto& L = data_->layers.at(layer_index);
    if (L.kind == LayerKind::Transcendental) return from_leaf(RatFunc::param(data_->leaf, data_->leaf_of[layer_index]));
    std::size_t j = 0;
    while (data_->alg[j] != layer_index) ++j;
    return basis(data_->block[j]);
}

inline TowerElement FieldTower::embed(const TowerElement& e) const {
    if (e.tower() == *this) return e;
    if (!extends(e.tower())) throw ArityMismatch("element does not belong to a subfield of this tower");
    Coords c = e.coords();
    for (auto& x : c) x = x.extend(data_->leaf.nparams);
    c.resize(degree(), data_->zero());
    return {*this, std::move(c)};
}

inline FieldTower FieldTower::extend_algebraic_unchecked(const std::string& name,
                                                         const std::vector<TowerElement>& coeffs) const {
    if (coeffs.size() < 2) throw MalformedLayer("algebraic layer '" + name + "' needs degree >= 2");
    auto d = child();
    Layer L;
    L.kind = LayerKind::Algebraic;
    L.name = name;
    L.degree = static_cast<unsigned>(coeffs.size());
    for (const auto& c : coeffs) L.coeffs.push_back(embed(c).coords());
    d->layers.push_back(std::move(L));
    finalize(*d);
    return FieldTower(std::move(d));
}

inline FieldTower FieldTower::extend_root_unchecked(const std::string& name, const TowerElement& radicand,
                                                    unsigned e) const {
    if (e < 1) throw MalformedLayer("root layer '" + name + "' needs exponent >= 1");
    std::size_t deg = 1;
    for (unsigned i = 0; i < e; ++i) deg *= data_->p;
    auto d = child();
    Layer L;
    L.kind = LayerKind::InseparableRoot;
    L.name = name;
    L.degree = static_cast<unsigned>(deg);
    L.exponent = e;
    L.radicand = embed(radicand).coords();
    L.coeffs.assign(deg, Coords(degree(), data_->zero()));
    L.coeffs[0] = (-embed(radicand)).coords();
    d->layers.push_back(std::move(L));
    finalize(*d);
    return FieldTower(std::move(d));
}

inline std::string FieldTower::describe() const {
    std::string out = "F" + std::to_string(data_->p) + "(";
    for (std::size_t i = 0; i < data_->base_names.size(); ++i) out += (i ? "," : "") + data_->base_names[i];
    out += ")";
    // Render each layer against the prefix tower it was built over.
    std::vector<std::shared_ptr<const detail::TowerData>> chain;
    for (auto d = data_; d; d = d->parent) chain.push_back(d);
    for (std::size_t i = 0; i < data_->layers.size(); ++i) {
        const Layer& L = data_->layers[i];
        out += " adjoin " + L.name + " " + insep::tower::to_string(L.kind);
        if (L.kind == LayerKind::Transcendental) continue;
        // The tower just below layer i is the ancestor with i layers.
        std::shared_ptr<const detail::TowerData> below;
        for (const auto& d : chain)
            if (d->layers.size() == i) below = d;
        FieldTower B(below);
        // Stored coefficients use this tower's leaf arity; project back down.
        auto project = [&](const Coords& c) {
            Coords v;
            for (const auto& x : c) v.push_back(x.restrict(below->leaf.nparams));
            return v;
        };
        if (L.kind == LayerKind::InseparableRoot) {
            out += " " + TowerElement(B, project(L.radicand)).to_string() + " exp " + std::to_string(L.exponent);
            continue;
        }
        // Minimal polynomial rendered in the new generator plus the ones below.
        std::vector<std::string> names = B.algebraic_names();
        names.push_back(L.name);
        const std::size_t nv = names.size();
        auto poly = ff::Poly<RatFunc>::term(below->leaf, nv, ff::Monomial::var(nv - 1, L.degree),
                                            RatFunc::one(below->leaf));
        for (std::size_t k = 0; k < L.degree; ++k) {
            auto ck = TowerElement(B, project(L.coeffs[k])).to_poly();
            std::vector<std::size_t> id(nv - 1);
            for (std::size_t q = 0; q < id.size(); ++q) id[q] = q;
            poly += ck.permute(id, nv).shift(ff::Monomial::var(nv - 1, unsigned(k)));
        }
        out += " " + poly.to_string(names, B.leaf_names());
    }
    return out;
}

}  // namespace insep::tower

#endif  // INSEP_TOWER_FIELD_TOWER_HPP
