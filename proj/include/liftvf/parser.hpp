#pragma once

// Text form of polynomials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*        divisor must be a nonzero constant
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | variable | '(' expr ')'
//
// Rational constants are written a/b. Juxtaposition is not multiplication.

#include "liftvf/error.hpp"
#include "liftvf/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace liftvf {

namespace detail {

class PolyParser {
  public:
    PolyParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

    Polynomial parse() {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError("empty expression", pos_);
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

  private:
    static constexpr unsigned kMaxExponent = 4096;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                Polynomial d = unary();
                if (d.degree() > 0)
                    throw ParseError("division by a non-constant", at);
                if (d.is_zero())
                    throw ParseError("division by zero", at);
                acc *= Rational(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept('^'))
            return base;
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("exponent must be a non-negative integer", at);
        unsigned long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (e > kMaxExponent)
                throw ParseError("exponent too large", at);
            ++pos_;
        }
        Polynomial r = Polynomial::constant(ring_, 1);
        for (unsigned long i = 0; i < e; ++i)
            r = r * base;
        return r;
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                        text_[pos_] == '(' || text_[pos_] == '.'))
                throw ParseError("expected operator", pos_);
            mpz_class v(std::string(text_.substr(start, pos_ - start)));
            return Polynomial::constant(ring_, Rational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < ring_->nvars(); ++i)
                if (ring_->vars[i] == name)
                    return Polynomial::variable(ring_, i);
            throw ParseError("unknown variable '" + name + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `text` as a polynomial over `ring`.
inline Polynomial parse_poly(std::string_view text, const RingPtr &ring) {
    return detail::PolyParser(text, ring).parse();
}

/// Canonical text: ascending total degree, and within one degree the
/// lexicographically larger monomial first ("4*Y^2 + 5*X^3 - 9*X*Y^3").
inline std::string to_string(const Polynomial &p) {
    if (p.is_zero())
        return "0";
    std::vector<std::pair<const Monomial *, const Rational *>> order;
    order.reserve(p.size());
    for (const auto &[m, c] : p.terms())
        order.emplace_back(&m, &c);
    // terms() is ascending grlex; reverse each equal-degree run
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        const int d = order[i].first->degree();
        while (j < order.size() && order[j].first->degree() == d)
            ++j;
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : order) {
        const bool neg = sgn(*c) < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const Rational mag = abs(*c);
        std::string mono;
        for (std::size_t v = 0; v < m->nvars(); ++v) {
            if ((*m)[v] == 0)
                continue;
            if (!mono.empty())
                mono += '*';
            mono += p.ring()->vars[v];
            if ((*m)[v] > 1)
                mono += '^' + std::to_string((*m)[v]);
        }
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << '*' << mono;
    }
    return os.str();
}

} // namespace liftvf
