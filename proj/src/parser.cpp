#include "cartdiff/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cartdiff {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) throw ParseError(std::string("expected `") + c + "` " + what, pos);
    }

    bool name_ahead() { return std::isalpha(static_cast<unsigned char>(peek())); }

    std::string name() {
        skip_space();
        std::size_t start = pos;
        if (!name_ahead()) throw ParseError("expected a name", pos);
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    bool number_ahead() { return std::isdigit(static_cast<unsigned char>(peek())); }

    Rational number() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected a number", pos);
        std::string num = text.substr(start, pos - start);
        if (pos < text.size() && text[pos] == '/' && pos + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            return Rational::from_string(num + "/" + text.substr(dstart, pos - dstart));
        }
        return Rational::from_string(num);
    }

    long integer() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected an integer exponent", pos);
        return std::stol(text.substr(start, pos - start));
    }
};

struct Parser {
    Lexer& lex;
    ParsedExpr& out;
    // When `args(...)` was given, only declared variables are legal.
    std::vector<std::string> declared_args;

    int var_index(const std::string& n, std::size_t at) {
        for (std::size_t i = 0; i < out.ctx_names.size(); ++i)
            if (out.ctx_names[i] == n) return static_cast<int>(i);
        for (std::size_t i = 0; i < out.arg_names.size(); ++i)
            if (out.arg_names[i] == n) return static_cast<int>(out.ctx_names.size() + i);
        if (!declared_args.empty())
            throw ParseError("unknown variable `" + n + "`", at);
        out.arg_names.push_back(n);
        return static_cast<int>(out.ctx_names.size() + out.arg_names.size() - 1);
    }

    SmoothTerm::Ptr expr() {
        SmoothTerm::Ptr acc = term();
        while (true) {
            if (lex.accept('+')) {
                acc = SmoothTerm::add(acc, term());
            } else if (lex.accept('-')) {
                acc = SmoothTerm::add(acc, SmoothTerm::neg(term()));
            } else {
                return acc;
            }
        }
    }

    SmoothTerm::Ptr term() {
        SmoothTerm::Ptr acc = factor();
        while (lex.accept('*')) acc = SmoothTerm::mul(acc, factor());
        return acc;
    }

    SmoothTerm::Ptr factor() {
        if (lex.accept('-')) return SmoothTerm::neg(factor());
        return power();
    }

    SmoothTerm::Ptr power() {
        SmoothTerm::Ptr base = atom();
        if (lex.accept('^')) {
            std::size_t at = lex.pos;
            long e = lex.integer();
            if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
            SmoothTerm::Ptr acc = SmoothTerm::constant(Rational(1));
            for (long i = 0; i < e; ++i) acc = SmoothTerm::mul(acc, base);
            return acc;
        }
        return base;
    }

    SmoothTerm::Ptr atom() {
        if (lex.number_ahead()) return SmoothTerm::constant(lex.number());
        if (lex.accept('(')) {
            SmoothTerm::Ptr inner = expr();
            lex.expect(')', "to close the group");
            return inner;
        }
        std::size_t at = lex.pos;
        if (!lex.name_ahead()) throw ParseError("expected a number, name or `(`", lex.pos);
        std::string n = lex.name();
        if (n == "sin" || n == "cos" || n == "exp") {
            lex.expect('(', "after `" + n + "`");
            SmoothTerm::Ptr inner = expr();
            lex.expect(')', "to close the call");
            out.transcendental = true;
            if (n == "sin") return SmoothTerm::sin(inner);
            if (n == "cos") return SmoothTerm::cos(inner);
            return SmoothTerm::exp(inner);
        }
        return SmoothTerm::variable(var_index(n, at));
    }
};

std::vector<std::string> name_list(Lexer& lex) {
    std::vector<std::string> names;
    lex.expect('(', "to open the list");
    if (!lex.accept(')')) {
        names.push_back(lex.name());
        while (lex.accept(',')) names.push_back(lex.name());
        lex.expect(')', "to close the list");
    }
    return names;
}

} // namespace

ParsedExpr parse_expression(const std::string& text, const std::vector<std::string>& ctx) {
    ParsedExpr out;
    out.ctx_names = ctx;
    Lexer lex{text};
    Parser p{lex, out, {}};

    // Optional leading block declarations: ctx(...) args(...).
    std::size_t mark = lex.pos;
    if (lex.name_ahead()) {
        std::string first = lex.name();
        if (first == "ctx" && lex.peek() == '(') {
            auto declared = name_list(lex);
            out.ctx_names.insert(out.ctx_names.end(), declared.begin(), declared.end());
            std::size_t mark2 = lex.pos;
            if (lex.name_ahead()) {
                std::string second = lex.name();
                if (second == "args" && lex.peek() == '(') {
                    p.declared_args = name_list(lex);
                    out.arg_names = p.declared_args;
                } else {
                    lex.pos = mark2;
                }
            }
        } else {
            lex.pos = mark;
        }
    }

    if (lex.accept('[')) {
        out.comps.push_back(p.expr());
        while (lex.accept(',')) out.comps.push_back(p.expr());
        lex.expect(']', "to close the tuple");
    } else {
        out.comps.push_back(p.expr());
    }
    if (!lex.eof()) throw ParseError("unexpected trailing input", lex.pos);

    std::set<std::string> seen;
    for (const auto& n : out.ctx_names)
        if (!seen.insert(n).second) throw ParseError("variable `" + n + "` declared twice", 0);
    for (const auto& n : out.arg_names)
        if (!seen.insert(n).second) throw ParseError("variable `" + n + "` declared twice", 0);
    return out;
}

Shape chain_shape(int leaves) {
    if (leaves == 0) return Shape::unit();
    Shape s = Shape::ground();
    for (int i = 1; i < leaves; ++i) s = Shape::prod(s, Shape::ground());
    return s;
}

namespace {

// Lowers a transcendental-free term by evaluating it over polynomial
// arithmetic.
Poly term_to_poly(const SmoothTerm::Ptr& t, int nvars) {
    switch (t->op()) {
        case SmoothTerm::Op::Const: return Poly::constant(nvars, t->value());
        case SmoothTerm::Op::Var: return Poly::variable(nvars, t->var());
        case SmoothTerm::Op::Add:
            return term_to_poly(t->child0(), nvars) + term_to_poly(t->child1(), nvars);
        case SmoothTerm::Op::Mul:
            return term_to_poly(t->child0(), nvars) * term_to_poly(t->child1(), nvars);
        case SmoothTerm::Op::Neg: return -term_to_poly(t->child0(), nvars);
        default: throw ParseError("sin/cos/exp need the smooth model", 0);
    }
}

Shape parsed_dom(const ParsedExpr& e) {
    int k = static_cast<int>(e.ctx_names.size());
    int n = static_cast<int>(e.arg_names.size());
    if (k == 0) return chain_shape(n);
    return Shape::prod(chain_shape(k), chain_shape(n));
}

} // namespace

PolyMap to_poly_map(const ParsedExpr& e) {
    int nvars = static_cast<int>(e.ctx_names.size() + e.arg_names.size());
    std::vector<Poly> comps;
    for (const auto& t : e.comps) comps.push_back(term_to_poly(t, nvars));
    return PolyMap(parsed_dom(e), chain_shape(static_cast<int>(e.comps.size())),
                   std::move(comps));
}

SmoothMap to_smooth_map(const ParsedExpr& e) {
    return SmoothMap(parsed_dom(e), chain_shape(static_cast<int>(e.comps.size())), e.comps);
}

std::vector<std::string> direction_names(std::span<const std::string> used) {
    static const char* pool[] = {"y", "z", "w", "u", "v", "s", "t", "a", "b", "c", "d", "e"};
    std::set<std::string> taken(used.begin(), used.end());
    std::vector<std::string> out;
    for (const char* cand : pool) {
        if (out.size() == used.size()) return out;
        if (!taken.count(cand)) out.push_back(cand);
    }
    for (std::size_t i = 1; out.size() < used.size(); ++i) {
        std::string cand = "d" + std::to_string(i);
        if (!taken.count(cand)) out.push_back(cand);
    }
    return out;
}

std::string caret_message(const std::string& text, const ParseError& err) {
    std::ostringstream os;
    os << "parse error at position " << err.position << ": " << err.what() << "\n";
    os << "  " << text << "\n";
    os << "  " << std::string(std::min(err.position, text.size()), ' ') << "^";
    return os.str();
}

} // namespace cartdiff
