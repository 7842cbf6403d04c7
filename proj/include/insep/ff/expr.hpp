#ifndef INSEP_FF_EXPR_HPP
#define INSEP_FF_EXPR_HPP

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "insep/errors.hpp"
#include "insep/ff/groebner.hpp"
#include "insep/ff/poly.hpp"
#include "insep/ff/ratfunc.hpp"

namespace insep::ff {

/// Parsed arithmetic expression over named symbols. The textual form is the
/// one `Poly::to_string` prints: `+ - * / ^`, parentheses, integers and
/// identifiers, with `*` optional between adjacent factors.
struct Expr {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind = Kind::Number;
    std::int64_t number = 0;
    std::string symbol;
    unsigned exponent = 0;
    std::size_t column = 1;
    std::vector<Expr> args;
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line, std::size_t column_offset)
        : text_(text), line_(line), offset_(column_offset) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " (expected one of: number, identifier, '(', operator)", line_, offset_ + pos_);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool starts_factor() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Expr node(Expr::Kind k, std::size_t col, std::vector<Expr> args) {
        Expr e;
        e.kind = k;
        e.column = col;
        e.args = std::move(args);
        return e;
    }

    Expr parse_sum() {
        skip_ws();
        std::size_t col = offset_ + pos_;
        Expr lhs;
        if (peek('-')) {
            ++pos_;
            lhs = node(Expr::Kind::Neg, col, {parse_product()});
        } else if (peek('+')) {
            ++pos_;
            lhs = parse_product();
        } else {
            lhs = parse_product();
        }
        while (true) {
            skip_ws();
            col = offset_ + pos_;
            if (peek('+')) {
                ++pos_;
                lhs = node(Expr::Kind::Add, col, {std::move(lhs), parse_product()});
            } else if (peek('-')) {
                ++pos_;
                lhs = node(Expr::Kind::Sub, col, {std::move(lhs), parse_product()});
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        Expr lhs = parse_power();
        while (true) {
            skip_ws();
            std::size_t col = offset_ + pos_;
            if (peek('*')) {
                ++pos_;
                lhs = node(Expr::Kind::Mul, col, {std::move(lhs), parse_power()});
            } else if (peek('/')) {
                ++pos_;
                lhs = node(Expr::Kind::Div, col, {std::move(lhs), parse_power()});
            } else if (starts_factor()) {
                lhs = node(Expr::Kind::Mul, col, {std::move(lhs), parse_power()});
            } else {
                return lhs;
            }
        }
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (peek('^')) {
            std::size_t col = offset_ + pos_;
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent must be a non-negative integer");
            Expr e = node(Expr::Kind::Pow, col, {std::move(base)});
            e.exponent = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
            return e;
        }
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        std::size_t col = offset_ + pos_;
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!peek(')')) fail("missing ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            Expr e;
            e.kind = Expr::Kind::Number;
            e.column = col;
            e.number = std::stoll(std::string(text_.substr(start, pos_ - start)));
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            Expr e;
            e.kind = Expr::Kind::Symbol;
            e.column = col;
            e.symbol = std::string(text_.substr(start, pos_ - start));
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// `column_offset` is the 1-based column of text[0] in its source line.
inline Expr parse_expression(std::string_view text, std::size_t line = 1, std::size_t column_offset = 1) {
    return detail::ExprParser(text, line, column_offset).parse();
}

/// Evaluates `e` with `env` supplying `constant(int64)`, `symbol(name, col)`,
/// `divide(a, b, col)` and `one()`; the value type supplies + - * and unary -.
template <class T, class Env>
T evaluate(const Expr& e, const Env& env) {
    switch (e.kind) {
        case Expr::Kind::Number: return env.constant(e.number);
        case Expr::Kind::Symbol: return env.symbol(e.symbol, e.column);
        case Expr::Kind::Add: return evaluate<T>(e.args[0], env) + evaluate<T>(e.args[1], env);
        case Expr::Kind::Sub: return evaluate<T>(e.args[0], env) - evaluate<T>(e.args[1], env);
        case Expr::Kind::Mul: return evaluate<T>(e.args[0], env) * evaluate<T>(e.args[1], env);
        case Expr::Kind::Div: return env.divide(evaluate<T>(e.args[0], env), evaluate<T>(e.args[1], env), e.column);
        case Expr::Kind::Neg: return -evaluate<T>(e.args[0], env);
        case Expr::Kind::Pow: {
            T base = evaluate<T>(e.args[0], env);
            T acc = env.one();
            for (unsigned i = 0; i < e.exponent; ++i) acc = acc * base;
            return acc;
        }
    }
    throw InternalInvariantViolation("unknown expression node");
}

inline std::size_t index_of(const std::vector<std::string>& names, const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return i;
    return names.size();
}

namespace detail {

struct RatFuncEnv {
    RatFuncContext ctx;
    const std::vector<std::string>& params;
    std::size_t line;

    RatFunc constant(std::int64_t v) const { return RatFunc::from_int(ctx, v); }
    RatFunc one() const { return RatFunc::one(ctx); }
    RatFunc symbol(const std::string& s, std::size_t col) const {
        std::size_t i = index_of(params, s);
        if (i == params.size()) throw ParseError("unknown identifier '" + s + "'", line, col);
        return RatFunc::param(ctx, i);
    }
    RatFunc divide(const RatFunc& a, const RatFunc& b, std::size_t col) const {
        if (b.is_zero()) throw ParseError("division by zero", line, col);
        return a / b;
    }
};

struct PolyRatEnv {
    RatFuncContext ctx;
    const std::vector<std::string>& vars;
    const std::vector<std::string>& params;
    std::size_t line;
    MonomialOrder order;

    using P = Poly<RatFunc>;
    P constant(std::int64_t v) const { return P::constant(ctx, vars.size(), RatFunc::from_int(ctx, v), order); }
    P one() const { return P::one(ctx, vars.size(), order); }
    P symbol(const std::string& s, std::size_t col) const {
        std::size_t i = index_of(vars, s);
        if (i < vars.size()) return P::variable(ctx, vars.size(), i, order);
        std::size_t j = index_of(params, s);
        if (j < params.size()) return P::constant(ctx, vars.size(), RatFunc::param(ctx, j), order);
        throw ParseError("unknown identifier '" + s + "'", line, col);
    }
    P divide(const P& a, const P& b, std::size_t col) const {
        if (!b.is_constant() || b.is_zero())
            throw ParseError("only division by nonzero elements of the coefficient field is allowed", line, col);
        return a.scale(RatFunc::one(ctx) / b.constant_coeff());
    }
};

struct MultiPolyEnv {
    PrimeContext ctx;
    const std::vector<std::string>& vars;
    std::size_t line;
    MonomialOrder order;

    MultiPoly constant(std::int64_t v) const { return MultiPoly::constant(ctx, vars.size(), Fp(ctx, v), order); }
    MultiPoly one() const { return MultiPoly::one(ctx, vars.size(), order); }
    MultiPoly symbol(const std::string& s, std::size_t col) const {
        std::size_t i = index_of(vars, s);
        if (i == vars.size()) throw ParseError("unknown identifier '" + s + "'", line, col);
        return MultiPoly::variable(ctx, vars.size(), i, order);
    }
    MultiPoly divide(const MultiPoly& a, const MultiPoly& b, std::size_t col) const {
        if (!b.is_constant() || b.is_zero()) throw ParseError("only division by nonzero constants", line, col);
        return a.scale(b.constant_coeff().inverse());
    }
};

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view text, RatFuncContext ctx, const std::vector<std::string>& params) {
    return evaluate<RatFunc>(parse_expression(text), detail::RatFuncEnv{ctx, params, 1});
}

inline Poly<RatFunc> parse_poly(std::string_view text, RatFuncContext ctx, const std::vector<std::string>& vars,
                                const std::vector<std::string>& params,
                                MonomialOrder order = MonomialOrder::DegRevLex) {
    return evaluate<Poly<RatFunc>>(parse_expression(text), detail::PolyRatEnv{ctx, vars, params, 1, order});
}

inline MultiPoly parse_multipoly(std::string_view text, PrimeContext ctx, const std::vector<std::string>& vars,
                                 MonomialOrder order = MonomialOrder::DegRevLex) {
    return evaluate<MultiPoly>(parse_expression(text), detail::MultiPolyEnv{ctx, vars, 1, order});
}

}  // namespace insep::ff

#endif  // INSEP_FF_EXPR_HPP
