#include "embcert/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace embcert {

namespace {

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    Parser(const std::string& t, const std::vector<std::string>& v) : text(t), vars(v) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return p;
    }

    MultiPoly expr() {
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = (c == '-');
            ++pos;
        }
        MultiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            char op = peek();
            if (op == '+' || op == '-') {
                ++pos;
                MultiPoly rhs = term();
                if (op == '-')
                    acc -= rhs;
                else
                    acc += rhs;
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = power();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = acc * power();
            } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
                       std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
                // implicit multiplication
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    MultiPoly power() {
        MultiPoly base = factor();
        if (peek() == '^') {
            ++pos;
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                fail("exponent must be a nonnegative integer literal");
            long e = integer();
            if (e > 512) fail("exponent too large");
            MultiPoly acc = MultiPoly::constant(G(1), base.vars());
            for (long k = 0; k < e; ++k) acc = acc * base;
            return acc;
        }
        return base;
    }

    MultiPoly factor() {
        char c = peek();
        if (c == '(') {
            ++pos;
            MultiPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') { // unary minus inside a product
            ++pos;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat q = rational();
            return MultiPoly::constant(G(q), vars);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("expected a factor");
    }

    long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected an integer");
        try {
            return std::stol(text.substr(start, pos - start));
        } catch (const std::out_of_range&) {
            pos = start;
            fail("integer literal out of range");
        }
    }

    Rat rational() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        mpz_class num(text.substr(start, pos - start));
        // a '/' directly followed by an integer literal forms a rational constant
        std::size_t save = pos;
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            skip_ws();
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (dstart == pos) fail("expected an integer denominator");
            mpz_class den(text.substr(dstart, pos - dstart));
            if (den == 0) fail("zero denominator");
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        pos = save;
        return Rat(num);
    }

    MultiPoly identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (name == "i") return MultiPoly::constant(G::i(), vars);
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            pos = start;
            fail("unknown variable '" + name + "'");
        }
        return MultiPoly::variable(static_cast<std::size_t>(it - vars.begin()), vars);
    }
};

// ---- canonical printing ----

// A coefficient in term position: pure real/imaginary parts print bare,
// mixed values are parenthesized so the output re-parses unambiguously.
std::string term_coeff(const G& c, bool leading_one_ok) {
    if (c.is_real()) {
        if (!leading_one_ok) return rat_str(c.re());
        if (c.re() == 1) return "";
        if (c.re() == -1) return "-";
        return rat_str(c.re()) + "*";
    }
    if (c.re() == 0) {
        std::string s;
        if (c.im() == 1)
            s = "i";
        else if (c.im() == -1)
            s = "-i";
        else
            s = rat_str(c.im()) + "i";
        return leading_one_ok ? s + "*" : s;
    }
    std::string s = "(" + c.str() + ")";
    return leading_one_ok ? s + "*" : s;
}

void append_term(std::string& out, const std::string& coeff_part, const std::string& var_part) {
    std::string piece = coeff_part + var_part;
    if (out.empty()) {
        out = piece;
        return;
    }
    if (!piece.empty() && piece[0] == '-')
        out += " - " + piece.substr(1);
    else
        out += " + " + piece;
}

std::string var_power(const std::string& v, int e) {
    if (e == 0) return "";
    if (e == 1) return v;
    return v + "^" + std::to_string(e);
}

} // namespace

std::string coefficient_str(const G& c) { return c.str(); }

MultiPoly parse_multipoly(const std::string& text, const std::vector<std::string>& vars) {
    Parser p(text, vars);
    MultiPoly r = p.parse();
    if (r.vars().empty()) return MultiPoly::constant(r.constant_term(), vars);
    return r;
}

UniPoly parse_unipoly(const std::string& text, const std::string& var) {
    MultiPoly m = parse_multipoly(text, {var});
    UniPoly r(var);
    for (const auto& [k, c] : m.terms()) r.set_coeff(k.at(0), c);
    return r;
}

BiPoly parse_bipoly(const std::string& text, const std::string& sv, const std::string& tv) {
    MultiPoly m = parse_multipoly(text, {sv, tv});
    BiPoly r(sv, tv);
    for (const auto& [k, c] : m.terms()) r.set_coeff(k.at(0), k.at(1), c);
    return r;
}

std::string UniPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [d, c] = *it;
        if (d == 0) {
            append_term(out, term_coeff(c, false), "");
        } else {
            append_term(out, term_coeff(c, true), var_power(var_, d));
        }
    }
    return out;
}

std::string BiPoly::str() const {
    if (is_zero()) return "0";
    // decreasing total degree, then decreasing s-degree
    std::vector<std::pair<Key, G>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        int ta = a.first.first + a.first.second, tb = b.first.first + b.first.second;
        if (ta != tb) return ta > tb;
        return a.first.first > b.first.first;
    });
    std::string out;
    for (const auto& [k, c] : items) {
        std::string vp = var_power(sv_, k.first);
        std::string wp = var_power(tv_, k.second);
        std::string varpart = vp;
        if (!vp.empty() && !wp.empty())
            varpart += "*" + wp;
        else
            varpart += wp;
        if (varpart.empty())
            append_term(out, term_coeff(c, false), "");
        else
            append_term(out, term_coeff(c, true), varpart);
    }
    return out;
}

std::string MultiPoly::str() const {
    if (is_zero()) return "0";
    std::vector<std::pair<Key, G>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int e : a.first) ta += e;
        for (int e : b.first) tb += e;
        if (ta != tb) return ta > tb;
        return a.first > b.first;
    });
    std::string out;
    for (const auto& [k, c] : items) {
        std::string varpart;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (k[j] == 0) continue;
            if (!varpart.empty()) varpart += "*";
            varpart += var_power(vars_[j], k[j]);
        }
        if (varpart.empty())
            append_term(out, term_coeff(c, false), "");
        else
            append_term(out, term_coeff(c, true), varpart);
    }
    return out;
}

BiPoly divided_difference(const UniPoly& p, const std::string& sv, const std::string& tv) {
    // (s^k - t^k)/(s - t) = sum_{j<k} s^j t^{k-1-j}, summed over the terms of p.
    BiPoly q(sv, tv);
    for (const auto& [k, c] : p.terms())
        for (int j = 0; j < k; ++j) q.set_coeff(j, k - 1 - j, q.coeff(j, k - 1 - j) + c);
    return q;
}

BiPoly cross_difference(const UniPoly& p, const UniPoly& q, const std::string& sv,
                        const std::string& tv) {
    return BiPoly::from_s(p, sv, tv) - BiPoly::from_t(q, sv, tv);
}

} // namespace embcert
