#ifndef INSEP_FF_GROEBNER_HPP
#define INSEP_FF_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "insep/ff/poly.hpp"

namespace insep::ff {

/// Generators of an ideal in C[x_1..x_n]. All generators share arity,
/// coefficient field and monomial order.
template <Coefficient C>
struct IdealPresentation {
    std::vector<Poly<C>> generators;

    std::size_t nvars() const { return generators.empty() ? 0 : generators.front().nvars(); }
    MonomialOrder order() const { return generators.empty() ? MonomialOrder::DegRevLex : generators.front().order(); }

    void validate() const {
        if (generators.empty()) throw ArityMismatch("ideal presentation needs at least one generator");
        for (const auto& g : generators) generators.front().check_compatible(g);
    }
};

/// Fully reduced remainder of f modulo the list G (any order of G is fine
/// when G is a Groebner basis).
template <Coefficient C>
Poly<C> normal_form(const Poly<C>& f, const std::vector<Poly<C>>& basis) {
    Poly<C> rest = f, rem = f.zero_like();
    std::vector<typename Poly<C>::Term> rem_terms;
    while (!rest.is_zero()) {
        const auto lt = rest.leading();
        const Poly<C>* red = nullptr;
        for (const auto& g : basis)
            if (g.lm().divides(lt.m)) {
                red = &g;
                break;
            }
        if (red) {
            rest = rest.sub_scaled(*red, lt.c / red->lc(), lt.m / red->lm());
        } else {
            rem_terms.push_back(lt);
            rest = rest - Poly<C>::term(f.context(), f.nvars(), lt.m, lt.c, f.order());
        }
    }
    return Poly<C>::from_terms(f.context(), f.nvars(), std::move(rem_terms), f.order());
}

/// Result of the standard-monomial count.
struct QuotientDim {
    /// -1 for the unit ideal.
    int krull_dim = 0;
    /// Number of standard monomials, present only when finite.
    std::optional<std::size_t> vector_dim;
    std::vector<Monomial> standard_monomials;

    bool finite() const { return vector_dim.has_value(); }
};

/// Reduced Groebner basis: monic generators sorted by decreasing leading
/// monomial, no term of one divisible by the leading monomial of another.
template <Coefficient C>
class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(std::vector<Poly<C>> gens, MonomialOrder ord) : gens_(std::move(gens)), order_(ord) {}

    const std::vector<Poly<C>>& generators() const { return gens_; }
    MonomialOrder order() const { return order_; }
    std::size_t size() const { return gens_.size(); }

    Poly<C> reduce(const Poly<C>& f) const { return normal_form(f, gens_); }
    bool contains(const Poly<C>& f) const { return reduce(f).is_zero(); }
    bool is_unit() const { return gens_.size() == 1 && gens_[0].is_constant(); }

    QuotientDim quotient_dim() const {
        QuotientDim out;
        if (gens_.empty()) {
            // Zero ideal.
            out.krull_dim = int(nvars_);
            return out;
        }
        const std::size_t n = gens_.front().nvars();
        if (is_unit()) {
            out.krull_dim = -1;
            out.vector_dim = 0;
            return out;
        }
        // Largest set of variables that supports no leading monomial.
        int best = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            bool ok = true;
            for (const auto& g : gens_) {
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (g.lm().e[i] && !(mask & (1u << i))) {
                        inside = false;
                        break;
                    }
                if (inside) {
                    ok = false;
                    break;
                }
            }
            if (ok) best = std::max(best, __builtin_popcount(mask));
        }
        out.krull_dim = best;
        if (best != 0) return out;

        std::vector<unsigned> bound(n, 0);
        for (const auto& g : gens_) {
            const Monomial& m = g.lm();
            std::size_t support = 0, var = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (m.e[i]) {
                    ++support;
                    var = i;
                }
            if (support == 1 && (bound[var] == 0 || m.e[var] < bound[var])) bound[var] = m.e[var];
        }
        Monomial cur;
        while (true) {
            bool standard = true;
            for (const auto& g : gens_)
                if (g.lm().divides(cur)) {
                    standard = false;
                    break;
                }
            if (standard) out.standard_monomials.push_back(cur);
            std::size_t i = 0;
            for (; i < n; ++i) {
                if (++cur.e[i] < bound[i]) break;
                cur.e[i] = 0;
            }
            if (i == n) break;
        }
        out.vector_dim = out.standard_monomials.size();
        return out;
    }

    void set_nvars(std::size_t n) { nvars_ = n; }

    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.gens_ == b.gens_; }

private:
    std::vector<Poly<C>> gens_;
    MonomialOrder order_ = MonomialOrder::DegRevLex;
    std::size_t nvars_ = 0;
};

namespace detail {

template <Coefficient C>
Poly<C> s_polynomial(const Poly<C>& f, const Poly<C>& g) {
    Monomial l = Monomial::lcm(f.lm(), g.lm());
    return f.shift(l / f.lm()).scale(C::one(f.context()) / f.lc()) -
           g.shift(l / g.lm()).scale(C::one(g.context()) / g.lc());
}

template <Coefficient C>
std::vector<Poly<C>> interreduce(std::vector<Poly<C>> g) {
    // Minimalize: drop generators whose leading monomial another one divides.
    std::vector<Poly<C>> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (g[j].lm().divides(g[i].lm()) && (!(g[j].lm() == g[i].lm()) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i].monic());
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly<C>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        const auto& lead = minimal[i].leading();
        Poly<C> tail = minimal[i] - Poly<C>::term(minimal[i].context(), minimal[i].nvars(), lead.m, lead.c,
                                                  minimal[i].order());
        minimal[i] = Poly<C>::term(minimal[i].context(), minimal[i].nvars(), lead.m, lead.c, minimal[i].order()) +
                     normal_form(tail, others);
    }
    auto ord = minimal.empty() ? MonomialOrder::DegRevLex : minimal.front().order();
    std::sort(minimal.begin(), minimal.end(),
              [ord](const Poly<C>& a, const Poly<C>& b) { return compare(a.lm(), b.lm(), ord) > 0; });
    return minimal;
}

}  // namespace detail

/// Buchberger's algorithm with the product and chain criteria.
template <Coefficient C>
GroebnerBasis<C> groebner_basis(const IdealPresentation<C>& ideal) {
    ideal.validate();
    const auto ord = ideal.order();
    std::vector<Poly<C>> g;
    for (const auto& f : ideal.generators)
        if (!f.is_zero()) {
            if (f.is_constant()) {
                GroebnerBasis<C> unit({f.one_like()}, ord);
                unit.set_nvars(f.nvars());
                return unit;
            }
            g.push_back(f.monic());
        }
    if (g.empty()) {
        GroebnerBasis<C> zero({}, ord);
        zero.set_nvars(ideal.nvars());
        return zero;
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::set<std::pair<std::size_t, std::size_t>> done;
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

    auto pair_lcm = [&](const std::pair<std::size_t, std::size_t>& pr) {
        return Monomial::lcm(g[pr.first].lm(), g[pr.second].lm());
    };

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            int c = compare(pair_lcm(a), pair_lcm(b), ord);
            return c < 0 || (c == 0 && a < b);
        });
        auto pr = *it;
        pairs.erase(it);
        done.insert(pr);
        const auto& fi = g[pr.first];
        const auto& fj = g[pr.second];
        if (fi.lm().coprime(fj.lm())) continue;
        const Monomial l = pair_lcm(pr);
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == pr.first || k == pr.second) continue;
            if (!g[k].lm().divides(l)) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (done.count(key(pr.first, k)) && done.count(key(pr.second, k))) chain = true;
        }
        if (chain) continue;
        Poly<C> r = normal_form(detail::s_polynomial(fi, fj), g);
        if (r.is_zero()) continue;
        if (r.is_constant()) {
            GroebnerBasis<C> unit({r.one_like()}, ord);
            unit.set_nvars(r.nvars());
            return unit;
        }
        g.push_back(r.monic());
        for (std::size_t i = 0; i + 1 < g.size(); ++i) pairs.emplace_back(i, g.size() - 1);
    }
    GroebnerBasis<C> out(detail::interreduce(std::move(g)), ord);
    out.set_nvars(ideal.nvars());
    return out;
}

template <Coefficient C>
QuotientDim quotient_dim(const IdealPresentation<C>& ideal) {
    return groebner_basis(ideal).quotient_dim();
}

}  // namespace insep::ff

#endif  // INSEP_FF_GROEBNER_HPP
