#ifndef INSEP_FF_POLY_HPP
#define INSEP_FF_POLY_HPP

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "insep/errors.hpp"
#include "insep/ff/prime_field.hpp"

namespace insep::ff {

inline constexpr std::size_t kMaxVars = 8;

enum class MonomialOrder { DegRevLex, Lex };

/// Requirements on a polynomial coefficient: a field with an explicit context
/// (characteristic, parameter count) that can build its own zero and one.
template <class C>
concept Coefficient = requires(const C a, const C b, typename C::context_type ctx,
                               const std::vector<std::string>& names) {
    { C::zero(ctx) } -> std::same_as<C>;
    { C::one(ctx) } -> std::same_as<C>;
    { C::from_int(ctx, std::int64_t{1}) } -> std::same_as<C>;
    { a.context() } -> std::convertible_to<typename C::context_type>;
    { a + b } -> std::same_as<C>;
    { a - b } -> std::same_as<C>;
    { a * b } -> std::same_as<C>;
    { a / b } -> std::same_as<C>;
    { -a } -> std::same_as<C>;
    { a.is_zero() } -> std::same_as<bool>;
    { a.is_one() } -> std::same_as<bool>;
    { a == b } -> std::same_as<bool>;
};

/// Exponent vector. Entries past the ring arity stay zero, so comparison and
/// divisibility never need the arity.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned total() const {
        unsigned s = 0;
        for (auto x : e) s += x;
        return s;
    }
    bool is_one() const { return total() == 0; }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 0xffffu) throw InternalInvariantViolation("monomial exponent overflow");
            r.e[i] = static_cast<std::uint16_t>(s);
        }
        return r;
    }

    /// Requires `o.divides(*this)`.
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }

    static Monomial var(std::size_t i, unsigned power = 1) {
        Monomial r;
        r.e[i] = static_cast<std::uint16_t>(power);
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Three-way comparison under `ord`; lex treats variable 0 as the largest.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder ord) {
    if (ord == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
    }
    unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
}

inline std::string render_monomial(const Monomial& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!m.e[i]) continue;
        if (!out.empty()) out += '*';
        out += names[i];
        if (m.e[i] > 1) out += '^' + std::to_string(m.e[i]);
    }
    return out.empty() ? "1" : out;
}

/// Sparse multivariate polynomial with terms kept strictly decreasing in the
/// ring's monomial order and no zero coefficients.
template <Coefficient C>
class Poly {
public:
    using coeff_type = C;
    using context_type = typename C::context_type;

    struct Term {
        Monomial m;
        C c;
    };

    Poly() = default;
    Poly(context_type ctx, std::size_t nvars, MonomialOrder ord = MonomialOrder::DegRevLex)
        : ctx_(ctx), nvars_(nvars), order_(ord) {
        if (nvars > kMaxVars)
            throw ArityMismatch("at most " + std::to_string(kMaxVars) + " variables are supported");
    }

    static Poly constant(context_type ctx, std::size_t nvars, const C& c,
                         MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly r(ctx, nvars, ord);
        if (!c.is_zero()) r.terms_.push_back({Monomial{}, c});
        return r;
    }
    static Poly one(context_type ctx, std::size_t nvars, MonomialOrder ord = MonomialOrder::DegRevLex) {
        return constant(ctx, nvars, C::one(ctx), ord);
    }
    static Poly variable(context_type ctx, std::size_t nvars, std::size_t i,
                         MonomialOrder ord = MonomialOrder::DegRevLex) {
        return term(ctx, nvars, Monomial::var(i), C::one(ctx), ord);
    }
    static Poly term(context_type ctx, std::size_t nvars, const Monomial& m, const C& c,
                     MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly r(ctx, nvars, ord);
        if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }
    /// Builds from terms in any order; duplicates are summed.
    static Poly from_terms(context_type ctx, std::size_t nvars, std::vector<Term> terms,
                           MonomialOrder ord = MonomialOrder::DegRevLex) {
        Poly r(ctx, nvars, ord);
        r.terms_ = std::move(terms);
        r.canonicalize();
        return r;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t nvars() const { return nvars_; }
    MonomialOrder order() const { return order_; }
    const context_type& context() const { return ctx_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c.is_one(); }
    std::size_t size() const { return terms_.size(); }

    const Term& leading() const { return terms_.front(); }
    const Monomial& lm() const { return terms_.front().m; }
    const C& lc() const { return terms_.front().c; }

    C constant_coeff() const {
        if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
        return C::zero(ctx_);
    }

    C coeff(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return C::zero(ctx_);
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max<unsigned>(d, t.m.e[var]);
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.total());
        return d;
    }
    bool involves(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.m.e[var]) return true;
        return false;
    }

    Poly zero_like() const { return Poly(ctx_, nvars_, order_); }
    Poly one_like() const { return one(ctx_, nvars_, order_); }
    Poly constant_like(const C& c) const { return constant(ctx_, nvars_, c, order_); }

    Poly with_order(MonomialOrder ord) const {
        Poly r = *this;
        r.order_ = ord;
        r.canonicalize();
        return r;
    }

    Poly operator+(const Poly& o) const { return merge(o, false); }
    Poly operator-(const Poly& o) const { return merge(o, true); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }
    Poly operator*(const Poly& o) const {
        check_compatible(o);
        if (is_zero() || o.is_zero()) return zero_like();
        std::vector<Term> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) prod.push_back({a.m * b.m, a.c * b.c});
        Poly r(ctx_, nvars_, order_);
        r.terms_ = std::move(prod);
        r.canonicalize();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scale(const C& c) const {
        if (c.is_zero()) return zero_like();
        Poly r = *this;
        for (auto& t : r.terms_) t.c = t.c * c;
        return r;
    }
    Poly shift(const Monomial& m) const {
        Poly r = *this;
        for (auto& t : r.terms_) t.m = t.m * m;
        return r;
    }
    /// `this - c * m * o` without building the intermediate product.
    Poly sub_scaled(const Poly& o, const C& c, const Monomial& m) const {
        Poly tmp = o.shift(m).scale(c);
        return *this - tmp;
    }

    Poly pow(unsigned e) const {
        Poly acc = one_like(), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    /// Divides by the leading coefficient.
    Poly monic() const {
        if (is_zero()) return *this;
        return scale(C::one(ctx_) / lc());
    }

    Poly derivative(std::size_t var) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (!t.m.e[var]) continue;
            C c = t.c * C::from_int(ctx_, t.m.e[var]);
            if (c.is_zero()) continue;
            Monomial m = t.m;
            --m.e[var];
            out.push_back({m, c});
        }
        return from_terms(ctx_, nvars_, std::move(out), order_);
    }

    /// Coefficients of `var^0, var^1, ...` as polynomials free of `var`.
    std::vector<Poly> coeffs_in(std::size_t var) const {
        std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
        for (const auto& t : terms_) {
            Monomial m = t.m;
            unsigned k = m.e[var];
            m.e[var] = 0;
            buckets[k].push_back({m, t.c});
        }
        std::vector<Poly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) out.push_back(from_terms(ctx_, nvars_, std::move(b), order_));
        return out;
    }
    static Poly from_coeffs_in(const std::vector<Poly>& cs, std::size_t var, const Poly& like) {
        Poly r = like.zero_like();
        for (std::size_t k = 0; k < cs.size(); ++k) r += cs[k].shift(Monomial::var(var, unsigned(k)));
        return r;
    }

    /// Applies `m -> m'` with exponents multiplied per variable.
    Poly scale_exponents(const std::vector<unsigned>& factors) const {
        std::vector<Term> out = terms_;
        for (auto& t : out)
            for (std::size_t i = 0; i < factors.size(); ++i) {
                unsigned v = unsigned(t.m.e[i]) * factors[i];
                if (v > 0xffffu) throw InternalInvariantViolation("monomial exponent overflow");
                t.m.e[i] = static_cast<std::uint16_t>(v);
            }
        return from_terms(ctx_, nvars_, std::move(out), order_);
    }

    /// Reindexes variables: old variable i becomes new variable perm[i].
    Poly permute(const std::vector<std::size_t>& perm, std::size_t new_nvars) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (t.m.e[i]) m.e[perm[i]] = t.m.e[i];
            out.push_back({m, t.c});
        }
        return from_terms(ctx_, new_nvars, std::move(out), order_);
    }

    template <class F>
    auto map_coefficients(F&& f, typename std::invoke_result_t<F, const C&>::context_type new_ctx) const {
        using D = std::invoke_result_t<F, const C&>;
        std::vector<typename Poly<D>::Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            D d = f(t.c);
            if (!d.is_zero()) out.push_back({t.m, std::move(d)});
        }
        return Poly<D>::from_terms(new_ctx, nvars_, std::move(out), order_);
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
        return true;
    }

    std::string to_string(const std::vector<std::string>& var_names,
                          const std::vector<std::string>& coeff_names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& t : terms_) {
            if (!out.empty()) out += " + ";
            if (t.m.is_one()) {
                out += t.c.to_string(coeff_names);
            } else if (t.c.is_one()) {
                out += render_monomial(t.m, var_names);
            } else if (t.c.needs_parens_as_factor()) {
                out += "(" + t.c.to_string(coeff_names) + ")*" + render_monomial(t.m, var_names);
            } else {
                out += t.c.to_string(coeff_names) + "*" + render_monomial(t.m, var_names);
            }
        }
        return out;
    }

    void check_compatible(const Poly& o) const {
        if (nvars_ != o.nvars_)
            throw ArityMismatch("polynomial arity " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
        if (!(ctx_ == o.ctx_)) throw ArityMismatch("polynomials over different coefficient fields");
        if (order_ != o.order_) throw ArityMismatch("polynomials under different monomial orders");
    }

private:
    Poly merge(const Poly& o, bool subtract) const {
        check_compatible(o);
        Poly r(ctx_, nvars_, order_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int cmp;
            if (i == terms_.size()) cmp = -1;
            else if (j == o.terms_.size()) cmp = 1;
            else cmp = compare(terms_[i].m, o.terms_[j].m, order_);
            if (cmp > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp < 0) {
                const auto& t = o.terms_[j++];
                r.terms_.push_back({t.m, subtract ? -t.c : t.c});
            } else {
                C c = subtract ? terms_[i].c - o.terms_[j].c : terms_[i].c + o.terms_[j].c;
                if (!c.is_zero()) r.terms_.push_back({terms_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void canonicalize() {
        auto ord = order_;
        std::sort(terms_.begin(), terms_.end(),
                  [ord](const Term& a, const Term& b) { return compare(a.m, b.m, ord) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) {
                out.back().c = out.back().c + t.c;
            } else {
                out.push_back(std::move(t));
            }
        }
        std::erase_if(out, [](const Term& t) { return t.c.is_zero(); });
        terms_ = std::move(out);
    }

    context_type ctx_{};
    std::size_t nvars_ = 0;
    MonomialOrder order_ = MonomialOrder::DegRevLex;
    std::vector<Term> terms_;
};

/// Multivariate division of `a` by a single `b`; returns {quotient, remainder}.
template <Coefficient C>
std::pair<Poly<C>, Poly<C>> divide(const Poly<C>& a, const Poly<C>& b) {
    if (b.is_zero()) throw DivByZero("polynomial division by zero");
    a.check_compatible(b);
    Poly<C> q = a.zero_like(), r = a.zero_like(), rest = a;
    const C inv = C::one(a.context()) / b.lc();
    while (!rest.is_zero()) {
        const auto& lt = rest.leading();
        if (b.lm().divides(lt.m)) {
            Monomial m = lt.m / b.lm();
            C c = lt.c * inv;
            q += Poly<C>::term(a.context(), a.nvars(), m, c, a.order());
            rest = rest.sub_scaled(b, c, m);
        } else {
            r += Poly<C>::term(a.context(), a.nvars(), lt.m, lt.c, a.order());
            rest = rest - Poly<C>::term(a.context(), a.nvars(), lt.m, lt.c, a.order());
        }
    }
    return {q, r};
}

/// Quotient `a / b`, which must be exact.
template <Coefficient C>
Poly<C> exact_div(const Poly<C>& a, const Poly<C>& b) {
    auto [q, r] = divide(a, b);
    if (!r.is_zero()) throw InternalInvariantViolation("inexact polynomial division");
    return q;
}

using MultiPoly = Poly<Fp>;

}  // namespace insep::ff

#endif  // INSEP_FF_POLY_HPP
