#include "preim/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace preim {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " +
                                    what);
    }

    BigInt integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        return BigInt(s.substr(start, pos - start));
    }

    ParsedExpr expr() {
        ParsedExpr acc = term();
        while (true) {
            if (eat('+'))
                acc = add(acc, term(), 1);
            else if (eat('-'))
                acc = add(acc, term(), -1);
            else
                return acc;
        }
    }

    ParsedExpr term() {
        ParsedExpr acc = factor();
        while (true) {
            if (eat('*')) {
                ParsedExpr r = factor();
                acc = {acc.num * r.num, acc.den * r.den};
            } else if (eat('/')) {
                ParsedExpr r = factor();
                if (r.num == BiPoly()) fail("division by zero");
                acc = {acc.num * r.den, acc.den * r.num};
            } else {
                return acc;
            }
        }
    }

    ParsedExpr factor() {
        if (eat('-')) {
            ParsedExpr v = factor();
            return {-v.num, v.den};
        }
        ParsedExpr base = atom();
        if (eat('^')) {
            BigInt n = integer();
            if (n < 0 || n > 64) fail("exponent out of range");
            unsigned k = static_cast<unsigned>(n.get_ui());
            return {base.num.pow(k), base.den.pow(k)};
        }
        return base;
    }

    ParsedExpr atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ParsedExpr v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 'x') {
            ++pos;
            return {BiPoly::x(), BiPoly::constant(Rational(1))};
        }
        if (c == 't') {
            ++pos;
            return {BiPoly::t(), BiPoly::constant(Rational(1))};
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return {BiPoly::constant(Rational(integer())), BiPoly::constant(Rational(1))};
        fail("expected a value");
    }

    static ParsedExpr add(const ParsedExpr& a, const ParsedExpr& b, int sign) {
        BiPoly cross = b.num * a.den;
        return {sign > 0 ? a.num * b.den + cross : a.num * b.den - cross, a.den * b.den};
    }
};

Poly constant_free_poly(const BiPoly& p, bool in_t, const char* var) {
    if (in_t ? p.deg_x() > 0 : p.deg_t() > 0)
        throw std::invalid_argument(std::string("expression must involve only ") + var);
    auto cols = p.x_coefficients();
    if (in_t) return cols.empty() ? Poly() : cols[0];
    std::vector<Rational> c;
    for (const auto& col : cols) c.push_back(col.coeff(0));
    return Poly(std::move(c));
}

}  // namespace

ParsedExpr parse_expression(const std::string& text) {
    Parser p{text};
    ParsedExpr v = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    if (v.den == BiPoly()) p.fail("zero denominator");
    return v;
}

RatMap parse_map(const std::string& text) {
    ParsedExpr v = parse_expression(text);
    return RatMap(constant_free_poly(v.num, false, "x"), constant_free_poly(v.den, false, "x"));
}

Poly parse_poly_t(const std::string& text) {
    ParsedExpr v = parse_expression(text);
    Poly den = constant_free_poly(v.den, true, "t");
    if (!den.is_constant()) throw std::invalid_argument("expected a polynomial in t");
    Poly num = constant_free_poly(v.num, true, "t");
    std::vector<Rational> scaled;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(std::max<long>(num.degree(), 0)); ++i)
        scaled.push_back(num.coeff(i) / den.coeff(0));
    return Poly(std::move(scaled));
}

}  // namespace preim
