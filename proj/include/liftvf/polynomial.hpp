#pragma once

#include "liftvf/error.hpp"
#include "liftvf/monomial.hpp"
#include "liftvf/rational.hpp"

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace liftvf {

/// A variable set. Two rings are the same iff their variable names agree.
struct Ring {
    std::string tag;
    std::vector<std::string> vars;

    std::size_t nvars() const { return vars.size(); }
    bool operator==(const Ring &o) const { return vars == o.vars; }

    /// Variables `prefix`1 .. `prefix`count.
    static std::shared_ptr<const Ring> numbered(std::string tag, const std::string &prefix,
                                                std::size_t count) {
        auto r = std::make_shared<Ring>();
        r->tag = std::move(tag);
        for (std::size_t i = 1; i <= count; ++i)
            r->vars.push_back(prefix + std::to_string(i));
        return r;
    }
};
using RingPtr = std::shared_ptr<const Ring>;

/// Source chart x1..xn.
inline RingPtr source_ring(std::size_t n) { return Ring::numbered("source", "x", n); }
/// Target coordinates X1..Xp.
inline RingPtr target_ring(std::size_t p) { return Ring::numbered("target", "X", p); }

/// Sentinel order meaning "no truncation".
inline constexpr int kNoTruncation = std::numeric_limits<int>::max();

/// Sparse multivariate polynomial with exact rational coefficients.
/// No stored coefficient is zero; terms are kept in ascending graded-lex order.
class Polynomial {
  public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {
        if (!ring_)
            throw RingError("polynomial needs a ring");
    }

    static Polynomial constant(RingPtr ring, const Rational &c) {
        Polynomial p(std::move(ring));
        if (c != 0)
            p.terms_.emplace(Monomial(p.ring_->nvars()), c);
        return p;
    }
    static Polynomial variable(RingPtr ring, std::size_t var) {
        if (var >= ring->nvars())
            throw RingError("variable index out of range");
        Polynomial p(ring);
        p.terms_.emplace(Monomial::unit(ring->nvars(), var), Rational(1));
        return p;
    }
    static Polynomial monomial(RingPtr ring, Monomial m, const Rational &c = 1) {
        if (m.nvars() != ring->nvars())
            throw RingError("monomial arity does not match ring");
        Polynomial p(std::move(ring));
        if (c != 0)
            p.terms_.emplace(std::move(m), c);
        return p;
    }

    const RingPtr &ring() const { return ring_; }
    std::size_t nvars() const { return ring_->nvars(); }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial &m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial(nvars())); }

    /// Highest total degree, or -1 for zero.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
    /// Lowest total degree (the m-adic order), or kNoTruncation for zero.
    int order() const { return terms_.empty() ? kNoTruncation : terms_.begin()->first.degree(); }

    /// Adds c * m, dropping the term if it cancels.
    void add_term(const Monomial &m, const Rational &c) {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Polynomial &operator+=(const Polynomial &o) {
        check_ring(o);
        for (const auto &[m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o) {
        check_ring(o);
        for (const auto &[m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    Polynomial &operator*=(const Rational &s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend Polynomial operator*(Polynomial a, const Rational &s) { return a *= s; }
    friend Polynomial operator*(const Rational &s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        return multiply(a, b, kNoTruncation);
    }

    /// a * b with every term of degree > order dropped.
    static Polynomial multiply(const Polynomial &a, const Polynomial &b, int order) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        for (const auto &[ma, ca] : a.terms_) {
            const int da = ma.degree();
            if (da > order)
                break;
            for (const auto &[mb, cb] : b.terms_) {
                if (da + mb.degree() > order)
                    break;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }

    /// Drops all terms of total degree > order.
    Polynomial truncate(int order) const {
        Polynomial r(ring_);
        for (const auto &[m, c] : terms_) {
            if (m.degree() > order)
                break;
            r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
        return r;
    }

    /// Formal partial derivative with respect to variable `var`.
    Polynomial partial(std::size_t var) const {
        if (var >= nvars())
            throw RingError("partial: variable index out of range");
        Polynomial r(ring_);
        for (const auto &[m, c] : terms_) {
            if (m[var] == 0)
                continue;
            Monomial d = m;
            d[var] = static_cast<Exponent>(d[var] - 1);
            r.add_term(d, c * static_cast<long>(m[var]));
        }
        return r;
    }

    bool operator==(const Polynomial &o) const {
        return *ring_ == *o.ring_ && terms_ == o.terms_;
    }

    void check_ring(const Polynomial &o) const {
        if (!(*ring_ == *o.ring_))
            throw RingError("ring mismatch");
    }

  private:
    RingPtr ring_;
    Terms terms_;
};

/// Substitutes `images[k]` for the k-th variable of `u`, keeping only terms of
/// degree <= order. Every image must vanish at the origin so that truncating
/// after each multiplication is exact.
inline Polynomial compose(const Polynomial &u, const std::vector<Polynomial> &images,
                          int order) {
    if (images.size() != u.nvars())
        throw RingError("compose: need one image per variable of the outer polynomial");
    if (images.empty())
        throw RingError("compose: empty substitution");
    const RingPtr &dst = images.front().ring();
    for (const auto &im : images) {
        if (!(*im.ring() == *dst))
            throw RingError("compose: images live in different rings");
        if (im.constant_term() != 0)
            throw InputError("compose: component with nonzero constant term");
    }
    // powers[k][e] = images[k]^e truncated, filled on demand
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t k, std::size_t e) -> const Polynomial & {
        auto &pk = powers[k];
        if (pk.empty())
            pk.push_back(Polynomial::constant(dst, 1));
        while (pk.size() <= e)
            pk.push_back(Polynomial::multiply(pk.back(), images[k], order));
        return pk[e];
    };
    Polynomial result(dst);
    for (const auto &[m, c] : u.terms()) {
        if (m.degree() > order)
            break; // each image has order >= 1
        Polynomial term = Polynomial::constant(dst, c);
        for (std::size_t k = 0; k < m.nvars() && !term.is_zero(); ++k)
            if (m[k] > 0)
                term = Polynomial::multiply(term, power(k, m[k]), order);
        result += term;
    }
    return result;
}

} // namespace liftvf
