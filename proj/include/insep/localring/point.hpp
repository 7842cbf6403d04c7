#ifndef INSEP_LOCALRING_POINT_HPP
#define INSEP_LOCALRING_POINT_HPP

#include <string>
#include <vector>

#include "insep/errors.hpp"
#include "insep/ff/groebner.hpp"
#include "insep/tower/p_power.hpp"

namespace insep::localring {

using ff::IdealPresentation;
using ff::Poly;
using ff::RatFunc;
using tower::FieldTower;
using tower::TowerElement;

using Ideal = IdealPresentation<RatFunc>;

/// Closed point of A^n over k = F_p(t) given by a triangular sequence
/// u_1(x_a), u_2(x_a, x_b), ... where each u_i adds one main variable.
class ClosedPoint {
public:
    ClosedPoint() = default;

    /// Validates the triangular shape. Variable and parameter names are
    /// used for the residue field tower and for rendering.
    ClosedPoint(std::vector<Poly<RatFunc>> generators, std::vector<std::string> var_names,
                std::vector<std::string> base_names)
        : gens_(std::move(generators)), vars_(std::move(var_names)), base_(std::move(base_names)) {
        const std::size_t n = vars_.size();
        if (gens_.size() != n)
            throw NotTriangular("a closed point of A^" + std::to_string(n) + " needs " + std::to_string(n) +
                                " generators, got " + std::to_string(gens_.size()));
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& g = gens_[i];
            if (g.nvars() != n) throw ArityMismatch("point generator arity differs from the ambient space");
            std::size_t fresh = n, count = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (g.involves(v) && !seen[v]) {
                    fresh = v;
                    ++count;
                }
            if (count != 1)
                throw NotTriangular("generator " + std::to_string(i + 1) + " (" + g.to_string(vars_, base_) +
                                    ") must introduce exactly one new variable");
            const auto cs = g.coeffs_in(fresh);
            if (!cs.back().is_constant())
                throw NotTriangular("generator " + std::to_string(i + 1) + " is not monic in " + vars_[fresh]);
            seen[fresh] = true;
            main_.push_back(fresh);
        }
    }

    const std::vector<Poly<RatFunc>>& generators() const { return gens_; }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::vector<std::string>& base_names() const { return base_; }
    /// Main variable of each generator.
    const std::vector<std::size_t>& main_variables() const { return main_; }
    std::size_t nvars() const { return vars_.size(); }

    /// dim_k kappa = prod deg(u_i) in the main variable.
    std::size_t residue_degree() const {
        std::size_t d = 1;
        for (std::size_t i = 0; i < gens_.size(); ++i) d *= gens_[i].degree_in(main_[i]);
        return d;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) s += ", ";
            s += gens_[i].to_string(vars_, base_);
        }
        return s + ")";
    }

private:
    std::vector<Poly<RatFunc>> gens_;
    std::vector<std::string> vars_, base_;
    std::vector<std::size_t> main_;
};

/// kappa = k[x]/P as a tower, with the image of every variable.
struct ResidueField {
    FieldTower kappa;
    std::vector<TowerElement> values;  // indexed by variable
};

/// f(values) in the tower K for f with coefficients in the base of K.
inline TowerElement evaluate(const Poly<RatFunc>& f, const FieldTower& K, const std::vector<TowerElement>& values) {
    TowerElement out = K.zero();
    for (const auto& t : f.terms()) {
        TowerElement m = K.from_base(t.c);
        for (std::size_t v = 0; v < f.nvars(); ++v)
            if (t.m.e[v]) m *= values[v].pow(t.m.e[v]);
        out += m;
    }
    return out;
}

/// One Algebraic layer per generator of degree >= 2; degree-1 generators
/// are solved. Zero divisors met along the way mean P is not prime.
inline ResidueField residue_field(const ClosedPoint& P) {
    const std::size_t n = P.nvars();
    if (P.generators().empty()) throw NotTriangular("empty point");
    const auto p = P.generators().front().context().p;
    ResidueField R{FieldTower::rational(p, P.base_names()), {}};
    R.values.assign(n, TowerElement());
    try {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t x = P.main_variables()[i];
            const auto cs = P.generators()[i].coeffs_in(x);
            std::vector<TowerElement> c;
            for (const auto& ci : cs) c.push_back(evaluate(ci, R.kappa, R.values));
            const TowerElement inv = c.back().inverse();
            if (cs.size() == 2) {
                R.values[x] = -c[0] * inv;
                continue;
            }
            tower::LayerSpec L;
            L.kind = tower::LayerKind::Algebraic;
            L.name = P.var_names()[x];
            for (std::size_t k = 0; k + 1 < c.size(); ++k) L.coeffs.push_back(c[k] * inv);
            R.kappa = tower::tower_extend(R.kappa, L);
            for (std::size_t j = 0; j < i; ++j) {
                auto& v = R.values[P.main_variables()[j]];
                v = R.kappa.embed(v);
            }
            R.values[x] = R.kappa.generator(R.kappa.layers().size() - 1);
        }
    } catch (const ZeroDivisorDetected& e) {
        throw NotPrime(std::string("point is not prime: ") + e.what());
    } catch (const DivByZero& e) {
        throw NotPrime(std::string("point is not prime: ") + e.what());
    }
    return R;
}

namespace detail {

inline Ideal point_ideal(const ClosedPoint& P) { return Ideal{P.generators()}; }

inline void check_contained(const Ideal& I, const ClosedPoint& P) {
    const auto G = ff::groebner_basis(point_ideal(P));
    if (G.is_unit()) throw NotPrime("point ideal is the unit ideal");
    for (const auto& f : I.generators)
        if (!G.contains(f))
            throw NotContained("generator " + f.to_string(P.var_names(), P.base_names()) + " does not vanish at " +
                               P.to_string());
}

}  // namespace detail

/// dim_kappa m/m^2 = (dim_k k[x]/(P^2 + I) - dim_k kappa) / dim_k kappa.
inline std::size_t edim_at_point(const Ideal& I, const ClosedPoint& P) {
    detail::check_contained(I, P);
    (void)residue_field(P);
    Ideal J;
    const auto& g = P.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j) J.generators.push_back(g[i] * g[j]);
    for (const auto& f : I.generators)
        if (!f.is_zero()) J.generators.push_back(f);
    const auto q = ff::quotient_dim(J);
    if (!q.finite()) throw InternalInvariantViolation("P^2 + I is not zero-dimensional");
    const std::size_t kd = P.residue_degree();
    const std::size_t vd = *q.vector_dim;
    if (vd < kd || (vd - kd) % kd != 0)
        throw InternalInvariantViolation("dim k[x]/(P^2 + I) = " + std::to_string(vd) +
                                         " is not a multiple of dim kappa = " + std::to_string(kd) + " plus one");
    return (vd - kd) / kd;
}

/// Krull dimension of k[x]/I, taken as dim O_{X,x} at a closed point.
inline int krull_dim(const Ideal& I) {
    Ideal J;
    for (const auto& f : I.generators)
        if (!f.is_zero()) J.generators.push_back(f);
    if (J.generators.empty()) return int(I.nvars());
    return ff::quotient_dim(J).krull_dim;
}

inline std::size_t ecodim_at_point(const Ideal& I, const ClosedPoint& P) {
    const std::size_t e = edim_at_point(I, P);
    const int dim = krull_dim(I);
    if (int(e) < dim)
        throw InternalInvariantViolation("edim " + std::to_string(e) + " below Krull dimension " +
                                         std::to_string(dim));
    return e - std::size_t(dim);
}

}  // namespace insep::localring

#endif  // INSEP_LOCALRING_POINT_HPP
