#ifndef INSEP_FF_RATFUNC_HPP
#define INSEP_FF_RATFUNC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "insep/ff/poly.hpp"
#include "insep/ff/poly_gcd.hpp"

namespace insep::ff {

/// The field F_p(t_1..t_n).
struct RatFuncContext {
    std::uint32_t p = 2;
    std::size_t nparams = 0;

    RatFuncContext() = default;
    RatFuncContext(std::uint32_t prime, std::size_t n) : p(PrimeContext(prime).p), nparams(n) {
        if (n > kMaxVars) throw ArityMismatch("too many parameters");
    }
    PrimeContext prime() const { return PrimeContext::unchecked(p); }

    friend bool operator==(const RatFuncContext&, const RatFuncContext&) = default;
};

/// Element of F_p(t_1..t_n) kept as num/den with gcd 1 and den monic.
class RatFunc {
public:
    using context_type = RatFuncContext;

    RatFunc() = default;
    explicit RatFunc(RatFuncContext ctx)
        : ctx_(ctx), num_(ctx.prime(), ctx.nparams), den_(MultiPoly::one(ctx.prime(), ctx.nparams)) {}

    static RatFunc zero(RatFuncContext ctx) { return RatFunc(ctx); }
    static RatFunc one(RatFuncContext ctx) { return from_int(ctx, 1); }
    static RatFunc from_int(RatFuncContext ctx, std::int64_t v) {
        RatFunc r(ctx);
        r.num_ = MultiPoly::constant(ctx.prime(), ctx.nparams, Fp(ctx.prime(), v));
        return r;
    }
    static RatFunc param(RatFuncContext ctx, std::size_t i) {
        RatFunc r(ctx);
        r.num_ = MultiPoly::variable(ctx.prime(), ctx.nparams, i);
        return r;
    }
    static RatFunc from_poly(RatFuncContext ctx, MultiPoly num) {
        RatFunc r(ctx);
        r.num_ = std::move(num).with_order(MonomialOrder::DegRevLex);
        r.check_arity(r.num_);
        return r;
    }
    static RatFunc fraction(RatFuncContext ctx, MultiPoly num, MultiPoly den) {
        if (den.is_zero()) throw DivByZero("rational function with zero denominator");
        RatFunc r(ctx);
        r.num_ = std::move(num).with_order(MonomialOrder::DegRevLex);
        r.den_ = std::move(den).with_order(MonomialOrder::DegRevLex);
        r.check_arity(r.num_);
        r.check_arity(r.den_);
        r.normalize();
        return r;
    }

    const RatFuncContext& context() const { return ctx_; }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }

    RatFunc operator+(const RatFunc& o) const { return add(o, false); }
    RatFunc operator-(const RatFunc& o) const { return add(o, true); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator*(const RatFunc& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(ctx_);
        RatFunc r(ctx_);
        if (den_.is_one() && o.den_.is_one()) {
            r.num_ = num_ * o.num_;
            return r;
        }
        // Cross-cancel so the product is already reduced.
        MultiPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
        MultiPoly n = exact_div(num_, g1) * exact_div(o.num_, g2);
        MultiPoly d = exact_div(den_, g2) * exact_div(o.den_, g1);
        Fp lc = d.lc();
        r.num_ = n.scale(lc.inverse());
        r.den_ = d.scale(lc.inverse());
        return r;
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc inverse() const {
        if (is_zero()) throw DivByZero("inverse of zero rational function");
        RatFunc r(ctx_);
        Fp lc = num_.lc();
        r.num_ = den_.scale(lc.inverse());
        r.den_ = num_.scale(lc.inverse());
        return r;
    }

    RatFunc pow(unsigned e) const {
        RatFunc r(ctx_);
        r.num_ = num_.pow(e);
        r.den_ = den_.pow(e);
        return r;
    }

    /// Partial derivative in parameter i (quotient rule).
    RatFunc derivative(std::size_t i) const {
        if (den_.is_one()) return from_poly(ctx_, num_.derivative(i));
        MultiPoly n = num_.derivative(i) * den_ - num_ * den_.derivative(i);
        return fraction(ctx_, n, den_ * den_);
    }

    /// f in k^p iff its reduced numerator and denominator are p-th powers.
    bool is_p_power() const { return is_p_power_poly(num_) && is_p_power_poly(den_); }
    RatFunc p_root() const {
        if (!is_p_power()) throw NotAPower("rational function is not a p-th power");
        RatFunc r(ctx_);
        r.num_ = p_root_poly(num_);
        r.den_ = p_root_poly(den_);
        return r;
    }

    /// Writes f = sum over residues a in [0,p)^n of t^a * f_a with every f_a
    /// in k^p. Index of a is mixed-radix, parameter 0 least significant.
    std::vector<RatFunc> p_components() const {
        const unsigned p = ctx_.p;
        std::size_t count = 1;
        for (std::size_t i = 0; i < ctx_.nparams; ++i) count *= p;
        std::vector<RatFunc> out(count, zero(ctx_));
        if (is_zero()) return out;
        MultiPoly dp1 = den_.pow(p - 1);
        MultiPoly n = num_ * dp1;
        MultiPoly dp = dp1 * den_;
        std::vector<std::vector<MultiPoly::Term>> buckets(count);
        for (const auto& t : n.terms()) {
            std::size_t idx = 0, stride = 1;
            Monomial m = t.m;
            for (std::size_t i = 0; i < ctx_.nparams; ++i) {
                unsigned r = m.e[i] % p;
                idx += r * stride;
                stride *= p;
                m.e[i] = static_cast<std::uint16_t>(m.e[i] - r);
            }
            buckets[idx].push_back({m, t.c});
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (buckets[i].empty()) continue;
            out[i] = fraction(ctx_, MultiPoly::from_terms(ctx_.prime(), ctx_.nparams, std::move(buckets[i])), dp);
        }
        return out;
    }

    /// Image under t_i -> t_i^{factors[i]}.
    RatFunc scale_exponents(const std::vector<unsigned>& factors) const {
        return fraction(ctx_, num_.scale_exponents(factors), den_.scale_exponents(factors));
    }

    /// Same element viewed in F_p(t_1..t_n, t_{n+1}..t_m).
    RatFunc extend(std::size_t new_nparams) const {
        if (new_nparams < ctx_.nparams) throw ArityMismatch("cannot shrink parameter count");
        RatFuncContext c(ctx_.p, new_nparams);
        std::vector<std::size_t> id(ctx_.nparams);
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        RatFunc r(c);
        r.num_ = num_.permute(id, new_nparams).with_order(MonomialOrder::DegRevLex);
        r.den_ = den_.permute(id, new_nparams).with_order(MonomialOrder::DegRevLex);
        // Leading terms may change under the wider degrevlex; keep den monic.
        Fp lc = r.den_.lc();
        r.num_ = r.num_.scale(lc.inverse());
        r.den_ = r.den_.scale(lc.inverse());
        return r;
    }

    /// Inverse of extend: drops trailing parameters, which must not occur.
    RatFunc restrict(std::size_t new_nparams) const {
        if (new_nparams >= ctx_.nparams) return extend(new_nparams);
        for (const auto* f : {&num_, &den_})
            for (std::size_t i = new_nparams; i < ctx_.nparams; ++i)
                if (f->involves(i)) throw ArityMismatch("parameter " + std::to_string(i) + " occurs");
        RatFuncContext c(ctx_.p, new_nparams);
        auto shrink = [&](const MultiPoly& f) {
            std::vector<MultiPoly::Term> ts;
            for (const auto& t : f.terms()) ts.push_back(t);
            return MultiPoly::from_terms(c.prime(), new_nparams, std::move(ts));
        };
        return fraction(c, shrink(num_), shrink(den_));
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.ctx_ == b.ctx_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (den_.is_one()) return num_.to_string(names);
        std::string n = num_.to_string(names);
        if (num_.size() > 1) n = "(" + n + ")";
        return n + "/(" + den_.to_string(names) + ")";
    }
    bool needs_parens_as_factor() const { return den_.is_one() && num_.size() > 1; }

private:
    void check(const RatFunc& o) const {
        if (!(ctx_ == o.ctx_)) throw ArityMismatch("rational functions over different fields");
    }
    void check_arity(const MultiPoly& f) const {
        if (f.nvars() != ctx_.nparams || f.context().p != ctx_.p)
            throw ArityMismatch("polynomial does not match rational function field");
    }

    RatFunc add(const RatFunc& o, bool subtract) const {
        check(o);
        const MultiPoly on = subtract ? -o.num_ : o.num_;
        if (den_.is_one() && o.den_.is_one()) {
            RatFunc r(ctx_);
            r.num_ = num_ + on;
            return r;
        }
        if (den_ == o.den_) return fraction(ctx_, num_ + on, den_);
        MultiPoly g = gcd(den_, o.den_);
        MultiPoly a = exact_div(o.den_, g), b = exact_div(den_, g);
        return fraction(ctx_, num_ * a + on * b, den_ * a);
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MultiPoly::one(ctx_.prime(), ctx_.nparams);
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        Fp lc = den_.lc();
        if (!lc.is_one()) {
            num_ = num_.scale(lc.inverse());
            den_ = den_.scale(lc.inverse());
        }
    }

    RatFuncContext ctx_{};
    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace insep::ff

#endif  // INSEP_FF_RATFUNC_HPP
