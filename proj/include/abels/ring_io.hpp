#pragma once

// Text syntax for ring elements.
//
// LaurentLoc grammar (whitespace ignored):
//   expr   := ['-'] term { ('+'|'-') term }
//   term   := factor { ('*'|'/') factor | factor }     juxtaposition multiplies
//   factor := atom [ '^' int ]
//   atom   := 't' | integer | '(' expr ')'
// '/' divides by a unit (a power product of t and (t-1) up to constants);
// anything else raises ZeroDenominator/NotAUnit.
//
// ZinvP syntax: "a" or "a/p^k" (also "a/p").
//
// print() emits a canonical form that parses back exactly.

#include <cctype>
#include <sstream>
#include <string>

#include "ring.hpp"

namespace abels {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

namespace detail {

class RingParser {
  public:
    RingParser(std::string_view s, std::uint32_t p) : s_(s), p_(p) {}

    RingElem parse() {
        RingElem r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input at " + std::to_string(pos_));
        return r;
    }

  private:
    RingElem expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        RingElem acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                RingElem t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    RingElem term() {
        RingElem acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '/') {
                ++pos_;
                acc = acc.div_unit(factor());
            } else if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * factor();  // juxtaposition
            } else {
                return acc;
            }
        }
    }

    RingElem factor() {
        RingElem base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            std::int64_t k = integer();
            return pow_elem(base, k);
        }
        return base;
    }

    RingElem atom() {
        skip_ws();
        char c = peek();
        if (c == 't') {
            ++pos_;
            return RingElem::monomial(p_, 1, 1, 0);
        }
        if (c == '(') {
            ++pos_;
            RingElem r = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = integer();
            return RingElem::from_int(Backend::LaurentLoc, p_, v);
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }

    RingElem pow_elem(const RingElem& base, std::int64_t k) {
        if (k == 0) return RingElem::one(Backend::LaurentLoc, p_);
        RingElem b = base;
        if (k < 0) {
            b = base.inv_unit();  // throws NotAUnit if impossible
            k = -k;
        }
        RingElem acc = RingElem::one(Backend::LaurentLoc, p_);
        for (std::int64_t i = 0; i < k; ++i) acc = acc * b;
        return acc;
    }

    std::int64_t integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    std::string_view s_;
    std::uint32_t p_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RingElem parse_ring(std::string_view text, Backend backend, std::uint32_t p) {
    if (backend == Backend::LaurentLoc) return detail::RingParser(text, p).parse();
    // ZinvP: a or a/p^k
    std::string s(text);
    std::size_t slash = s.find('/');
    auto parse_big = [](const std::string& t) {
        std::size_t i = 0;
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        bool neg = false;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = (t[i] == '-'), ++i;
        BigInt v = 0;
        bool any = false;
        for (; i < t.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(t[i]))) continue;
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw ParseError("bad integer");
            v = v * 10 + (t[i] - '0');
            any = true;
        }
        if (!any) throw ParseError("empty integer");
        return neg ? BigInt(-v) : v;
    };
    if (slash == std::string::npos) return RingElem::zinvp(p, parse_big(s), 0);
    BigInt a = parse_big(s.substr(0, slash));
    std::string den = s.substr(slash + 1);
    std::size_t caret = den.find('^');
    std::int64_t k = 1;
    BigInt base;
    if (caret == std::string::npos) {
        base = parse_big(den);
    } else {
        base = parse_big(den.substr(0, caret));
        BigInt kk = parse_big(den.substr(caret + 1));
        k = kk.convert_to<std::int64_t>();
    }
    if (base != p) throw ParseError("denominator must be a power of p");
    if (k < 0) throw ParseError("negative denominator exponent");
    return RingElem::zinvp(p, a, k);
}

inline std::string print_poly(const fp::Poly& n) {
    if (n.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = n.size(); i-- > 0;) {
        if (n[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << n[i];
        } else {
            if (n[i] != 1) os << n[i] << "*";
            os << "t";
            if (i != 1) os << "^" << i;
        }
    }
    return os.str();
}

inline std::string print_ring(const RingElem& x) {
    if (x.backend() == Backend::ZinvP) {
        std::ostringstream os;
        os << x.a();
        if (x.k() > 0) os << "/" << x.p() << "^" << x.k();
        return os.str();
    }
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool need_star = false;
    if (!(x.num().size() == 1 && x.num()[0] == 1)) {
        if (x.num().size() > 1)
            os << "(" << print_poly(x.num()) << ")";
        else
            os << print_poly(x.num());
        need_star = true;
    }
    if (x.e() != 0) {
        if (need_star) os << "*";
        os << "t^" << x.e();
        need_star = true;
    }
    if (x.f() != 0) {
        if (need_star) os << "*";
        os << "(t-1)^" << x.f();
        need_star = true;
    }
    if (!need_star) os << "1";
    return os.str();
}

}  // namespace abels
