#include "apsym/parser.hpp"

#include <cctype>

namespace apsym {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
    }

    [[noreturn]] void fail(const std::string& msg, size_t at) { throw ParseError(msg, at); }

    Expr parse_expr() {
        Expr e = parse_term();
        while (true) {
            if (accept('+')) {
                e = e + parse_term();
            } else if (accept('-')) {
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (accept('*')) e = e * parse_factor();
        return e;
    }

    Expr parse_factor() {
        if (accept('-')) return -parse_factor();
        Expr base = parse_primary();
        if (accept('^')) {
            int exp = parse_exponent();
            try {
                return Expr::pow(base, exp);
            } catch (const ExprError& err) {
                fail(err.what(), pos);
            }
        }
        return base;
    }

    int parse_exponent() {
        skip_ws();
        bool paren = accept('(');
        bool neg = accept('-');
        skip_ws();
        size_t start = pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            fail("expected integer exponent", pos);
        }
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000) fail("exponent too large", start);
            ++pos;
        }
        if (pos < text.size() && text[pos] == '.') fail("non-integer exponent", pos);
        if (paren) expect(')');
        return static_cast<int>(neg ? -v : v);
    }

    Expr parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::islower(static_cast<unsigned char>(c))) return parse_ident();
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    Expr parse_number() {
        size_t start = pos;
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos++];
        }
        if (pos < text.size() && text[pos] == '.') {
            fail("floating-point literals are not part of the grammar (use p/q)", pos);
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
                fail("expected denominator digits after '/'", pos);
            }
            std::string den;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                den += text[pos++];
            }
            if (Integer(den) == 0) fail("zero denominator", start);
            Rational q{Integer(digits), Integer(den)};
            q.canonicalize();
            return Expr::rational(q);
        }
        return Expr::rational(Rational(Integer(digits)));
    }

    Expr parse_ident() {
        size_t start = pos;
        std::string name;
        while (pos < text.size() &&
               (std::islower(static_cast<unsigned char>(text[pos])) ||
                std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            name += text[pos++];
        }
        if (name == "sin" || name == "cos") {
            skip_ws();
            if (pos >= text.size() || text[pos] != '(') {
                fail("expected '(' after " + name, pos);
            }
            ++pos;
            Expr arg = parse_expr();
            expect(')');
            return make_trig(name == "sin" ? TrigKind::Sin : TrigKind::Cos, arg, start);
        }
        if (name == "phi") return Expr::phi();
        for (int v = 0; v < JET_COUNT; ++v) {
            if (name == jet_name(static_cast<JetVar>(v))) {
                return Expr::jet(static_cast<JetVar>(v));
            }
        }
        if (auto existing = symbols::find(name)) return Expr::sym(*existing);
        return Expr::sym(symbols::param(name));
    }

    /// The canonical argument must be m*phi + rational.
    Expr make_trig(TrigKind kind, const Expr& arg, size_t at) {
        int m = 0;
        Rational offset = 0;
        for (const auto& t : arg.terms()) {
            const bool plain = t.syms.empty() && t.trig.kind == TrigKind::None &&
                               std::all_of(t.jet.begin(), t.jet.end(), [](int e) { return e == 0; });
            if (plain && t.phi_pow == 1) {
                if (t.coeff.get_den() != 1 || !t.coeff.get_num().fits_sint_p()) {
                    fail("trig argument must be an integer multiple of phi", at);
                }
                m = static_cast<int>(t.coeff.get_num().get_si());
            } else if (plain && t.phi_pow == 0) {
                offset = t.coeff;
            } else {
                fail("trig argument must normalize to m*phi + rational offset", at);
            }
        }
        return Expr::trig(kind, m, offset);
    }
};

} // namespace

Expr parse(const std::string& text) {
    Parser p(text);
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) {
        throw ParseError("trailing input after expression", p.pos);
    }
    return e;
}

} // namespace apsym
