#pragma once

#include "liftvf/error.hpp"
#include "liftvf/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace liftvf {

using Exponent = std::uint16_t;

/// Exponent vector x1^e1 ... xn^en.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    static Monomial unit(std::size_t nvars, std::size_t var, Exponent power = 1) {
        Monomial m(nvars);
        m.exps_.at(var) = power;
        return m;
    }

    std::size_t nvars() const { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    Exponent &operator[](std::size_t i) { return exps_[i]; }
    std::span<const Exponent> exponents() const { return exps_; }

    int degree() const {
        return std::accumulate(exps_.begin(), exps_.end(), 0);
    }

    Monomial operator*(const Monomial &o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] = static_cast<Exponent>(r.exps_[i] + o.exps_[i]);
        return r;
    }

    bool operator==(const Monomial &) const = default;

  private:
    std::vector<Exponent> exps_;
};

/// Graded-lexicographic order: total degree first, then lexicographic on the
/// exponent vector (x1 most significant). This order indexes every jet-space
/// coordinate in the library.
struct GrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                            b.exponents().begin(), b.exponents().end());
    }
};

/// All monomials of total degree <= max_degree in `nvars` variables, listed in
/// ascending graded-lex order. `rank` is the inverse of `at`.
class MonomialBasis {
  public:
    MonomialBasis(std::size_t nvars, int max_degree)
        : nvars_(nvars), max_degree_(max_degree),
          binom_(static_cast<std::size_t>(std::max(max_degree, 0)) + nvars + 2) {
        if (max_degree < 0)
            throw TruncationError("jet order must be non-negative");
        if (nvars == 0)
            throw RingError("monomial basis needs at least one variable");
        size_ = static_cast<std::size_t>(binom_(max_degree + static_cast<int>(nvars),
                                                static_cast<int>(nvars)));
        exps_.reserve(size_ * nvars_);
        degree_start_.push_back(0);
        std::vector<Exponent> cur(nvars_, 0);
        for (int d = 0; d <= max_degree; ++d) {
            enumerate(cur, 0, d);
            degree_start_.push_back(exps_.size() / nvars_);
        }
    }

    std::size_t nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return size_; }

    std::span<const Exponent> at(std::size_t idx) const {
        return {exps_.data() + idx * nvars_, nvars_};
    }
    Monomial monomial(std::size_t idx) const {
        auto e = at(idx);
        return Monomial(std::vector<Exponent>(e.begin(), e.end()));
    }
    int degree(std::size_t idx) const {
        auto e = at(idx);
        return std::accumulate(e.begin(), e.end(), 0);
    }
    /// First index of degree d (d may be max_degree + 1, giving size()).
    std::size_t degree_begin(int d) const { return degree_start_.at(static_cast<std::size_t>(d)); }

    /// Index of a monomial, or npos when its degree exceeds max_degree.
    std::size_t rank(std::span<const Exponent> e) const {
        int d = 0;
        for (auto v : e)
            d += v;
        if (d > max_degree_)
            return npos;
        std::uint64_t r = d == 0 ? 0 : binom_(d - 1 + static_cast<int>(nvars_), static_cast<int>(nvars_));
        int rem = d;
        for (std::size_t t = 0; t + 1 < nvars_; ++t) {
            const int k = static_cast<int>(nvars_ - t - 1);
            const int et = e[t];
            r += binom_(rem + k, k) - binom_(rem - et + k, k);
            rem -= et;
        }
        return static_cast<std::size_t>(r);
    }
    std::size_t rank(const Monomial &m) const { return rank(m.exponents()); }

    /// Index of at(a) * at(b), or npos if the product is truncated away.
    std::size_t product(std::size_t a, std::size_t b) const {
        thread_local std::vector<Exponent> buf;
        buf.resize(nvars_);
        auto ea = at(a), eb = at(b);
        for (std::size_t i = 0; i < nvars_; ++i)
            buf[i] = static_cast<Exponent>(ea[i] + eb[i]);
        return rank(buf);
    }

    /// Index of x_var * at(a), or npos.
    std::size_t times_variable(std::size_t a, std::size_t var) const {
        thread_local std::vector<Exponent> buf;
        auto ea = at(a);
        buf.assign(ea.begin(), ea.end());
        ++buf[var];
        return rank(buf);
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    void enumerate(std::vector<Exponent> &cur, std::size_t pos, int remaining) {
        if (pos + 1 == nvars_) {
            cur[pos] = static_cast<Exponent>(remaining);
            exps_.insert(exps_.end(), cur.begin(), cur.end());
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = static_cast<Exponent>(v);
            enumerate(cur, pos + 1, remaining - v);
        }
    }

    std::size_t nvars_;
    int max_degree_;
    BinomialTable binom_;
    std::size_t size_ = 0;
    std::vector<Exponent> exps_;
    std::vector<std::size_t> degree_start_;
};

} // namespace liftvf
