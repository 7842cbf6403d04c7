#ifndef INSEP_CLI_SESSION_HPP
#define INSEP_CLI_SESSION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "insep/artin/base_change.hpp"
#include "insep/localring/point.hpp"
#include "insep/tower/parse.hpp"

namespace insep::cli {

using artin::InseparableExtensionSpec;
using localring::ClosedPoint;
using localring::Ideal;
using ff::Poly;
using ff::RatFunc;
using tower::FieldTower;

struct IdealDecl {
    std::vector<std::string> vars;
    Ideal ideal;
};

struct PointDecl {
    std::vector<std::string> vars;
    ClosedPoint point;
};

struct RootEntry {
    std::string radicand;
    unsigned exponent = 1;
};

struct Command {
    std::size_t line = 0;
    std::string text;  // normalized echo
    std::string name;
    std::vector<std::string> targets;
    std::optional<std::vector<RootEntry>> roots;
    std::optional<std::string> over, var;
    std::optional<unsigned> max;
    std::optional<std::size_t> cap;
};

enum class DeclKind { Tower, Ideal, Point };

struct Session {
    unsigned p = 0;
    std::vector<std::string> base_vars;
    std::map<std::string, FieldTower> towers;
    std::map<std::string, IdealDecl> ideals;
    std::map<std::string, PointDecl> points;
    std::map<std::string, DeclKind> kinds;
    std::vector<Command> commands;

    bool has_base() const { return p != 0; }
    ff::RatFuncContext context() const { return ff::RatFuncContext(p, base_vars.size()); }
};

namespace detail {

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

inline std::vector<Token> split_words(std::string_view s, std::size_t col0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        if (i == s.size()) break;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        out.push_back({std::string(s.substr(i, j - i)), col0 + i});
        i = j;
    }
    return out;
}

/// Top-level comma split; returns pieces with their starting columns.
inline std::vector<Token> split_commas(std::string_view s, std::size_t col0) {
    std::vector<Token> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            out.push_back({std::string(s.substr(start, i - start)), col0 + start});
            start = i + 1;
        }
    }
    return out;
}

inline bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline unsigned parse_unsigned(const Token& t, std::size_t line) {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(c); }) ||
        t.text.size() > 9)
        throw ParseError("expected a non-negative integer, got '" + t.text + "'", line, t.col);
    return static_cast<unsigned>(std::stoul(t.text));
}

inline std::vector<std::string> name_list(const Token& t, std::size_t line) {
    std::vector<std::string> out;
    for (const auto& piece : split_commas(t.text, t.col)) {
        if (!is_identifier(piece.text)) throw ParseError("expected a name, got '" + piece.text + "'", line, piece.col);
        if (std::find(out.begin(), out.end(), piece.text) != out.end())
            throw ParseError("name '" + piece.text + "' repeated", line, piece.col);
        out.push_back(piece.text);
    }
    return out;
}

class LineParser {
public:
    LineParser(Session& s, std::string_view text, std::size_t line) : s_(s), text_(text), line_(line) {}

    void parse() {
        const auto words = split_words(text_, 1);
        if (words.empty()) return;
        const std::string& kw = words[0].text;
        if (kw == "base") return base(words);
        if (!s_.has_base()) throw ParseError("'base' must come first", line_, words[0].col);
        if (kw == "cmd") return command(words);
        if (kw == "tower") return tower_decl();
        if (kw == "ideal") return ideal_decl();
        if (kw == "point") return point_decl();
        throw ParseError("expected one of 'base', 'tower', 'ideal', 'point', 'cmd'", line_, words[0].col);
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t col) const { throw ParseError(what, line_, col); }
    [[noreturn]] void invalid(const std::string& what) const {
        throw ValidationError("line " + std::to_string(line_) + ": " + what);
    }

    // Splits "head : body" at the first colon.
    std::pair<std::vector<Token>, Token> head_body() const {
        const std::size_t c = text_.find(':');
        if (c == std::string_view::npos) fail("expected ':'", text_.size() + 1);
        return {split_words(text_.substr(0, c), 1), Token{std::string(text_.substr(c + 1)), c + 2}};
    }

    void declare(const Token& id, DeclKind kind) {
        if (!is_identifier(id.text)) fail("expected an identifier, got '" + id.text + "'", id.col);
        if (id.text == "base") fail("'base' is reserved", id.col);
        if (s_.kinds.count(id.text)) invalid("identifier '" + id.text + "' is already declared");
        s_.kinds[id.text] = kind;
    }

    void base(const std::vector<Token>& w) {
        if (s_.has_base()) invalid("base field declared twice");
        if (w.size() != 4 || w[1].text.rfind("p=", 0) != 0 || w[2].text != "vars")
            fail("expected 'base p=<prime> vars <names>'", w[0].col);
        const unsigned p = parse_unsigned(Token{w[1].text.substr(2), w[1].col + 2}, line_);
        try {
            (void)ff::PrimeContext(p);
        } catch (const Error& e) {
            invalid(e.what());
        }
        auto vars = name_list(w[3], line_);
        if (vars.size() > ff::kMaxVars) invalid("too many base variables");
        s_.p = p;
        s_.base_vars = std::move(vars);
    }

    ff::RatFunc ratfunc(const Token& t) const {
        return ff::evaluate<ff::RatFunc>(ff::parse_expression(t.text, line_, t.col),
                                         ff::detail::RatFuncEnv{s_.context(), s_.base_vars, line_});
    }

    Poly<RatFunc> poly(const Token& t, const std::vector<std::string>& vars) const {
        if (blank(t.text)) fail("expected a polynomial", t.col);
        return ff::evaluate<Poly<RatFunc>>(
            ff::parse_expression(t.text, line_, t.col),
            ff::detail::PolyRatEnv{s_.context(), vars, s_.base_vars, line_, ff::MonomialOrder::DegRevLex});
    }

    void tower_decl() {
        auto [head, body] = head_body();
        if (head.size() != 2) fail("expected 'tower <name> : <parent> adjoin ...'", head.empty() ? 1 : head[0].col);
        const auto w = split_words(body.text, body.col);
        if (w.empty()) fail("expected 'base' or a tower name", body.col);
        FieldTower K;
        if (w[0].text == "base") {
            K = FieldTower::rational(s_.p, s_.base_vars);
        } else {
            auto it = s_.towers.find(w[0].text);
            if (it == s_.towers.end()) invalid("'" + w[0].text + "' is not a declared tower");
            K = it->second;
        }
        declare(head[1], DeclKind::Tower);
        // Raw text between two word indices, with its column.
        auto span = [&](std::size_t a, std::size_t b) {
            const std::size_t from = w[a].col - body.col;
            const std::size_t to = b < w.size() ? w[b].col - body.col : body.text.size();
            return Token{body.text.substr(from, to - from), w[a].col};
        };
        std::size_t i = 1;
        while (i < w.size()) {
            if (w[i].text != "adjoin") fail("expected 'adjoin'", w[i].col);
            if (i + 2 >= w.size()) fail("expected '<name> trans|alg|root'", w[i].col);
            const Token& name = w[i + 1];
            const std::string& kind = w[i + 2].text;
            if (!is_identifier(name.text)) fail("expected a generator name", name.col);
            tower::LayerSpec L;
            L.name = name.text;
            std::size_t next = i + 3;
            try {
                if (kind == "trans") {
                    L.kind = tower::LayerKind::Transcendental;
                } else if (kind == "alg") {
                    while (next < w.size() && w[next].text != "adjoin") ++next;
                    if (next == i + 3) fail("expected a minimal polynomial", w[i + 2].col);
                    const Token f = span(i + 3, next);
                    L.kind = tower::LayerKind::Algebraic;
                    L.coeffs = tower::minimal_polynomial_coeffs(K, name.text, f.text, line_, f.col);
                } else if (kind == "root") {
                    while (next < w.size() && w[next].text != "exp") ++next;
                    if (next == i + 3) fail("expected a radicand", w[i + 2].col);
                    if (next + 1 >= w.size()) fail("expected 'exp <e>'", w.back().col);
                    const Token a = span(i + 3, next);
                    L.kind = tower::LayerKind::InseparableRoot;
                    L.radicand = tower::parse_element(K, a.text, line_, a.col);
                    L.exponent = parse_unsigned(w[next + 1], line_);
                    if (L.exponent == 0) fail("root exponent must be positive", w[next + 1].col);
                    next += 2;
                } else {
                    fail("expected 'trans', 'alg' or 'root'", w[i + 2].col);
                }
                K = tower::tower_extend(K, L);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                invalid(e.name() + ": " + e.what());
            }
            i = next;
        }
        s_.towers[head[1].text] = K;
    }

    void ideal_decl() {
        auto [head, body] = head_body();
        if (head.size() != 4 || head[2].text != "vars") fail("expected 'ideal <name> vars <names> : ...'", head[0].col);
        auto vars = name_list(head[3], line_);
        if (vars.size() > ff::kMaxVars) invalid("too many variables");
        for (const auto& v : vars)
            if (std::find(s_.base_vars.begin(), s_.base_vars.end(), v) != s_.base_vars.end())
                invalid("variable '" + v + "' clashes with a base variable");
        IdealDecl D{vars, {}};
        for (const auto& g : split_commas(body.text, body.col)) D.ideal.generators.push_back(poly(g, vars));
        declare(head[1], DeclKind::Ideal);
        s_.ideals[head[1].text] = std::move(D);
    }

    void point_decl() {
        auto [head, body] = head_body();
        if (head.size() != 2 && head.size() != 4) fail("expected 'point <name> [on <ideal> | vars <names>] : ...'", head[0].col);
        std::vector<std::string> vars;
        if (head.size() == 4) {
            if (head[2].text == "vars") {
                vars = name_list(head[3], line_);
            } else if (head[2].text == "on") {
                auto it = s_.ideals.find(head[3].text);
                if (it == s_.ideals.end()) invalid("'" + head[3].text + "' is not a declared ideal");
                vars = it->second.vars;
            } else {
                fail("expected 'on' or 'vars'", head[2].col);
            }
        } else {
            if (!last_ideal_) invalid("point without 'on' or 'vars' needs an earlier ideal");
            vars = s_.ideals.at(*last_ideal_).vars;
        }
        std::vector<Poly<RatFunc>> gens;
        for (const auto& g : split_commas(body.text, body.col)) gens.push_back(poly(g, vars));
        try {
            ClosedPoint P(std::move(gens), vars, s_.base_vars);
            (void)localring::residue_field(P);
            declare(head[1], DeclKind::Point);
            s_.points[head[1].text] = PointDecl{vars, std::move(P)};
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            invalid(e.name() + ": " + e.what());
        }
    }

    void command(const std::vector<Token>& w) {
        if (w.size() < 2) fail("expected a command name", w[0].col + 3);
        Command c;
        c.line = line_;
        c.name = w[1].text;
        for (std::size_t i = 1; i < w.size(); ++i) c.text += (i > 1 ? " " : "") + w[i].text;
        static const std::vector<std::string> names = {"pdeg",      "trdeg",  "schroer",    "edim-tensor",
                                                       "ejump",     "edim",   "ecodim",     "height-one",
                                                       "verify-bounds", "verify-structure"};
        if (std::find(names.begin(), names.end(), c.name) == names.end())
            fail("unknown command '" + c.name + "'", w[1].col);
        static const std::vector<std::string> keywords = {"over", "roots", "var", "max", "cap"};
        auto is_kw = [&](const std::string& s) { return std::find(keywords.begin(), keywords.end(), s) != keywords.end(); };

        std::size_t i = 2;
        for (; i < w.size() && !is_kw(w[i].text); ++i) {
            if (!s_.kinds.count(w[i].text)) invalid("'" + w[i].text + "' is not declared");
            c.targets.push_back(w[i].text);
        }
        std::vector<Token> root_tokens;
        while (i < w.size()) {
            const Token& k = w[i];
            if (!is_kw(k.text)) fail("expected one of 'over', 'roots', 'var', 'max', 'cap'", k.col);
            const bool seen = (k.text == "over" && c.over) || (k.text == "roots" && c.roots) ||
                              (k.text == "var" && c.var) || (k.text == "max" && c.max) || (k.text == "cap" && c.cap);
            if (seen) fail("option '" + k.text + "' given twice", k.col);
            if (k.text == "roots") {
                c.roots.emplace();
                for (++i; i < w.size() && !is_kw(w[i].text); ++i) root_tokens.push_back(w[i]);
                if (root_tokens.empty()) fail("expected '<radicand>:<exponent>'", k.col + 5);
                continue;
            }
            if (i + 1 >= w.size()) fail("expected a value after '" + k.text + "'", k.col + k.text.size());
            const Token& v = w[i + 1];
            if (k.text == "over") {
                if (v.text != "base" && v.text != "Fp") fail("expected 'base' or 'Fp'", v.col);
                c.over = v.text;
            } else if (k.text == "var") {
                c.var = v.text;
            } else if (k.text == "max") {
                c.max = parse_unsigned(v, line_);
            } else {
                c.cap = parse_unsigned(v, line_);
            }
            i += 2;
        }
        for (const auto& t : root_tokens)
            for (const auto& piece : split_commas(t.text, t.col)) {
                if (piece.text.empty()) continue;
                const std::size_t colon = piece.text.rfind(':');
                if (colon == std::string::npos || colon == 0)
                    fail("expected '<radicand>:<exponent>'", piece.col);
                RootEntry r;
                r.radicand = piece.text.substr(0, colon);
                r.exponent = parse_unsigned(Token{piece.text.substr(colon + 1), piece.col + colon + 1}, line_);
                if (r.exponent == 0) fail("root exponent must be positive", piece.col + colon + 1);
                (void)ratfunc(Token{r.radicand, piece.col});
                c.roots->push_back(std::move(r));
            }
        check_shape(c);
        s_.commands.push_back(std::move(c));
    }

    DeclKind kind(const std::string& id) const { return s_.kinds.at(id); }

    // Target kinds and options each command accepts.
    void check_shape(const Command& c) const {
        const auto& t = c.targets;
        const bool field = t.size() == 1 && kind(t[0]) == DeclKind::Tower;
        const bool local = t.size() == 2 && kind(t[0]) == DeclKind::Ideal && kind(t[1]) == DeclKind::Point;
        auto need = [&](bool ok, const std::string& usage) {
            if (!ok) invalid("usage: cmd " + usage);
        };
        auto only = [&](std::initializer_list<const char*> allowed) {
            auto allowed_has = [&](const char* s) {
                return std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return std::string(a) == s; });
            };
            if ((c.over && !allowed_has("over")) || (c.roots && !allowed_has("roots")) ||
                (c.var && !allowed_has("var")) || (c.max && !allowed_has("max")) || (c.cap && !allowed_has("cap")))
                invalid("command '" + c.name + "' does not take that option");
        };
        const std::string& n = c.name;
        if (n == "pdeg" || n == "trdeg" || n == "schroer") {
            need(field, n + " <tower> [over base|Fp]");
            only({"over"});
        } else if (n == "edim-tensor" || n == "verify-structure") {
            need(field, n + " <tower> [roots <a>:<n> ...]" + std::string(n == "verify-structure" ? " [cap N]" : ""));
            if (n == "edim-tensor") only({"roots"});
            else only({"roots", "cap"});
        } else if (n == "ejump") {
            need((field || local) && c.roots.has_value(), "ejump <tower>|<ideal> <point> roots <a>:<n> ...");
            only({"roots"});
        } else if (n == "edim" || n == "ecodim") {
            need(local, n + " <ideal> <point>");
            only({});
        } else if (n == "height-one") {
            need((field || local) && c.var.has_value(), "height-one <tower>|<ideal> <point> var <t> [max N]");
            only({"var", "max"});
            if (c.max && *c.max < 2) invalid("height-one needs max >= 2");
        } else if (n == "verify-bounds") {
            need(local && c.roots.has_value(), "verify-bounds <ideal> <point> roots <t>:<n> ...");
            only({"roots"});
        }
        if (c.var && std::find(s_.base_vars.begin(), s_.base_vars.end(), *c.var) == s_.base_vars.end())
            invalid("'" + *c.var + "' is not a base variable");
        if (local) {
            if (s_.ideals.at(t[0]).vars != s_.points.at(t[1]).vars)
                invalid("ideal '" + t[0] + "' and point '" + t[1] + "' use different variables");
            if (c.roots) {
                std::vector<std::string> seen;
                for (const auto& r : *c.roots) {
                    if (std::find(s_.base_vars.begin(), s_.base_vars.end(), r.radicand) == s_.base_vars.end())
                        invalid("roots at a point must be taken of base variables, not '" + r.radicand + "'");
                    if (std::find(seen.begin(), seen.end(), r.radicand) != seen.end())
                        invalid("base variable '" + r.radicand + "' given twice");
                    seen.push_back(r.radicand);
                }
            }
        } else if (field && c.roots) {
            try {
                artin::detail::validate(s_.towers.at(t[0]), to_spec(*c.roots));
            } catch (const InvalidSpec& e) {
                invalid(e.what());
            }
        }
    }

    InseparableExtensionSpec to_spec(const std::vector<RootEntry>& roots) const {
        InseparableExtensionSpec s;
        for (const auto& r : roots) s.entries.push_back({ff::parse_ratfunc(r.radicand, s_.context(), s_.base_vars), r.exponent});
        return s;
    }

public:
    std::optional<std::string> last_ideal_;

private:
    Session& s_;
    std::string_view text_;
    std::size_t line_;
};

}  // namespace detail

/// Root entries as a spec over the base field of the session.
inline InseparableExtensionSpec spec_from_roots(const Session& s, const std::vector<RootEntry>& roots) {
    InseparableExtensionSpec spec;
    for (const auto& r : roots)
        spec.entries.push_back({ff::parse_ratfunc(r.radicand, s.context(), s.base_vars), r.exponent});
    return spec;
}

/// One declaration or command per line; '#' starts a comment.
inline Session parse_session(std::string_view text) {
    Session s;
    std::optional<std::string> last_ideal;
    std::size_t line = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view l = text.substr(pos, end - pos);
        ++line;
        if (const auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
        detail::LineParser lp(s, l, line);
        lp.last_ideal_ = last_ideal;
        const std::size_t before = s.ideals.size();
        lp.parse();
        if (s.ideals.size() != before) {
            const auto w = detail::split_words(l, 1);
            last_ideal = w[1].text;
        }
        pos = end + 1;
    }
    return s;
}

}  // namespace insep::cli

#endif  // INSEP_CLI_SESSION_HPP
