#ifndef INSEP_TESTS_SUPPORT_ORACLES_HPP
#define INSEP_TESTS_SUPPORT_ORACLES_HPP

#include <deque>
#include <vector>

#include "insep/ff/groebner.hpp"

namespace testing_support {

using namespace insep::ff;

/// Polynomial-level echelon form: keeps a list with distinct leading
/// monomials, reducing only by coefficient-field linear combinations.
template <Coefficient C>
class PolySpan {
public:
    bool insert(Poly<C> f) {
        bool changed = true;
        while (!f.is_zero() && changed) {
            changed = false;
            for (const auto& b : basis_) {
                C c = f.coeff(b.lm());
                if (c.is_zero()) continue;
                f = f - b.scale(c / b.lc());
                changed = true;
            }
        }
        if (f.is_zero()) return false;
        basis_.push_back(f.monic());
        return true;
    }
    std::size_t size() const { return basis_.size(); }

private:
    std::vector<Poly<C>> basis_;
};

/// dim of C[x]/I computed as the span closure of {1} under multiplication by
/// the variables, each product taken to its normal form. Independent of the
/// standard-monomial count it is checked against.
template <Coefficient C>
std::size_t closure_dimension(const GroebnerBasis<C>& gb, std::size_t nvars, std::size_t cap = 512) {
    const auto& gens = gb.generators();
    if (gb.is_unit()) return 0;
    Poly<C> one = gb.reduce(gens.front().one_like());
    PolySpan<C> span;
    std::deque<Poly<C>> queue;
    if (span.insert(one)) queue.push_back(one);
    while (!queue.empty() && span.size() < cap) {
        Poly<C> b = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < nvars; ++v) {
            Poly<C> next = gb.reduce(b.shift(Monomial::var(v)));
            if (span.insert(next)) queue.push_back(next);
        }
    }
    return span.size();
}

}  // namespace testing_support

#endif
