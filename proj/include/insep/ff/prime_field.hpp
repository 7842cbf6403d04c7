#ifndef INSEP_FF_PRIME_FIELD_HPP
#define INSEP_FF_PRIME_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "insep/errors.hpp"

namespace insep::ff {

inline constexpr std::uint32_t kMaxPrime = 101;

constexpr bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Characteristic of a prime field. Validated on construction.
struct PrimeContext {
    std::uint32_t p = 2;

    PrimeContext() = default;
    explicit PrimeContext(std::uint32_t prime) : p(prime) {
        if (!is_prime(prime) || prime > kMaxPrime)
            throw InvalidField("characteristic must be a prime in [2, 101], got " + std::to_string(prime));
    }

    /// For characteristics already validated elsewhere.
    static PrimeContext unchecked(std::uint32_t prime) {
        PrimeContext c;
        c.p = prime;
        return c;
    }

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;
};

/// Element of F_p. Carries its characteristic so that polynomials over F_p
/// do not need an external context for coefficient arithmetic.
class Fp {
public:
    using context_type = PrimeContext;

    Fp() = default;
    Fp(PrimeContext ctx, std::int64_t value) : p_(ctx.p) {
        std::int64_t r = value % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        v_ = static_cast<std::uint32_t>(r);
    }

    static Fp zero(PrimeContext ctx) { return Fp(ctx, 0); }
    static Fp one(PrimeContext ctx) { return Fp(ctx, 1); }
    static Fp from_int(PrimeContext ctx, std::int64_t v) { return Fp(ctx, v); }

    PrimeContext context() const { return PrimeContext::unchecked(p_); }
    std::uint32_t value() const { return v_; }
    std::uint32_t characteristic() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator+(const Fp& o) const { return make(p_, (v_ + o.v_) % p_); }
    Fp operator-(const Fp& o) const { return make(p_, (v_ + p_ - o.v_) % p_); }
    Fp operator*(const Fp& o) const { return make(p_, (v_ * o.v_) % p_); }
    Fp operator-() const { return make(p_, (p_ - v_) % p_); }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp inverse() const {
        if (v_ == 0) throw DivByZero("inverse of zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    Fp pow(std::uint64_t e) const {
        Fp base = *this, acc = make(p_, 1 % p_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    std::string to_string() const { return std::to_string(v_); }
    std::string to_string(const std::vector<std::string>&) const { return to_string(); }
    bool needs_parens_as_factor() const { return false; }
    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

private:
    static Fp make(std::uint32_t p, std::uint32_t v) {
        Fp r;
        r.p_ = p;
        r.v_ = v;
        return r;
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 2;
};

}  // namespace insep::ff

#endif  // INSEP_FF_PRIME_FIELD_HPP
