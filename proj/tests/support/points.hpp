#ifndef INSEP_TESTS_SUPPORT_POINTS_HPP
#define INSEP_TESTS_SUPPORT_POINTS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "insep/ff/expr.hpp"
#include "insep/linalg.hpp"
#include "insep/localring/jump.hpp"
#include "support/random.hpp"

namespace testing_support {

using insep::localring::ClosedPoint;
using insep::localring::Ideal;

struct Setting {
    unsigned p;
    std::vector<std::string> base;
    std::vector<std::string> vars;

    insep::ff::RatFuncContext ctx() const { return insep::ff::RatFuncContext(p, base.size()); }

    insep::ff::Poly<insep::ff::RatFunc> poly(const std::string& text) const {
        return insep::ff::parse_poly(text, ctx(), vars, base);
    }
    Ideal ideal(const std::vector<std::string>& gens) const {
        Ideal I;
        for (const auto& g : gens) I.generators.push_back(poly(g));
        return I;
    }
    ClosedPoint point(const std::vector<std::string>& gens) const {
        std::vector<insep::ff::Poly<insep::ff::RatFunc>> g;
        for (const auto& s : gens) g.push_back(poly(s));
        return ClosedPoint(std::move(g), vars, base);
    }
};

/// Classical Jacobian criterion: n - rank (df_i/dx_j)(point) over kappa.
/// Agrees with the embedding dimension only when kappa/k is separable.
inline std::size_t jacobian_edim(const Ideal& I, const ClosedPoint& P) {
    const auto R = insep::localring::residue_field(P);
    const std::size_t n = P.nvars();
    std::vector<std::vector<insep::tower::TowerElement>> rows;
    for (const auto& f : I.generators) {
        std::vector<insep::tower::TowerElement> row;
        for (std::size_t j = 0; j < n; ++j)
            row.push_back(insep::localring::evaluate(f.derivative(j), R.kappa, R.values));
        rows.push_back(row);
    }
    return n - insep::matrix_rank(rows, n);
}

struct RandomPointCase {
    Setting setting;
    Ideal ideal;
    ClosedPoint point;
    bool separable = true;
};

/// Triangular point with linear, separable or p-th power generators, and a
/// hypersurface f = sum a_i u_i of total degree <= max_degree through it.
/// With favour_jumps the point has a p-th power generator, which enters f
/// with a unit multiplier while the others enter squared, so f tends to
/// become singular after base change.
inline RandomPointCase random_hypersurface_point(std::mt19937_64& rng, bool separable_only = false,
                                                 unsigned max_degree = 4, bool favour_jumps = false) {
    static const unsigned primes[] = {2, 3, 5};
    while (true) {
        const unsigned p = primes[uniform(rng, 0, 2)];
        const unsigned d = uniform(rng, 1, 2);
        const unsigned n = uniform(rng, 1, 3);
        Setting S{p, {}, {}};
        for (unsigned i = 0; i < d; ++i) S.base.push_back(d == 1 ? "t" : "t" + std::to_string(i + 1));
        const char* names[] = {"x", "y", "z"};
        for (unsigned i = 0; i < n; ++i) S.vars.push_back(names[i]);
        auto rnd_const = [&]() { return std::to_string(uniform(rng, 0, p - 1)); };
        auto base_var = [&]() { return S.base[uniform(rng, 0, d - 1)]; };

        std::vector<std::string> gens, fresh = S.base;
        std::shuffle(fresh.begin(), fresh.end(), rng);
        bool separable = true;
        for (unsigned i = 0; i < n; ++i) {
            const std::string x = S.vars[i];
            std::string prev = i ? S.vars[uniform(rng, 0, i - 1)] : "";
            std::string tail = rnd_const() + (uniform(rng, 0, 1) ? " + " + base_var() : "");
            // A linear generator may mention any base variable; it adds no layer.
            if (!prev.empty() && uniform(rng, 0, 2) == 0) tail += " + " + prev;
            unsigned kind = uniform(rng, 0, 2);
            if (separable_only && kind == 2) kind = 1;
            if (fresh.empty()) kind = 0;
            if (kind == 0) {
                gens.push_back(x + " - (" + tail + ")");
                continue;
            }
            // x^q - (w + c) with w a base variable no earlier generator
            // mentions is Eisenstein in w.
            const std::string w = fresh.back();
            fresh.pop_back();
            const unsigned q = kind == 2 ? p : (p == 2 ? 3 : 2);
            gens.push_back(x + "^" + std::to_string(q) + " - (" + w + " + " + rnd_const() + ")");
            separable = separable && kind == 1;
        }
        if (favour_jumps && separable) continue;
        ClosedPoint P = S.point(gens);
        if (insep::localring::residue_field(P).kappa.degree() > 9) continue;
        // f = sum a_i u_i with small random multipliers.
        auto f = S.poly("0");
        for (const auto& u : P.generators()) {
            if (favour_jumps) {
                const bool root = u.degree_in(P.main_variables()[&u - P.generators().data()]) == p;
                if (root) f += u.scale(insep::ff::RatFunc::from_int(S.ctx(), uniform(rng, 1, p - 1)));
                else if (2 * u.total_degree() <= max_degree && uniform(rng, 0, 1)) f += u * u;
                continue;
            }
            const unsigned room = max_degree >= u.total_degree() ? max_degree - u.total_degree() : 0;
            auto a = S.poly(rnd_const());
            if (room && uniform(rng, 0, 1)) a += S.poly(S.vars[uniform(rng, 0, n - 1)]);
            if (room >= 2 && uniform(rng, 0, 2) == 0)
                a += S.poly(S.vars[uniform(rng, 0, n - 1)] + "*" + S.vars[uniform(rng, 0, n - 1)]);
            f += a * u;
        }
        if (f.is_zero() || f.is_constant() || f.total_degree() > max_degree) continue;
        return {S, Ideal{{f}}, P, separable};
    }
}

}  // namespace testing_support

#endif
