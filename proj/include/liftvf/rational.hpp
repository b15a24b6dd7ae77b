#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace liftvf {

/// Exact arbitrary-precision rational. All coefficients in the library use it;
/// there is no floating point anywhere on a rank-deciding path.
using Rational = mpq_class;

inline std::string to_string(const Rational &q) { return q.get_str(); }

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return static_cast<std::int64_t>(r.get_si());
}

/// Table of small binomials C(a, b) for a < rows, used by monomial ranking.
class BinomialTable {
  public:
    explicit BinomialTable(std::size_t rows) : rows_(rows), data_(rows * rows, 0) {
        for (std::size_t a = 0; a < rows; ++a) {
            at(a, 0) = 1;
            for (std::size_t b = 1; b <= a; ++b)
                at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : 0);
        }
    }
    std::uint64_t operator()(std::int64_t a, std::int64_t b) const {
        if (a < 0 || b < 0 || b > a)
            return 0;
        return data_[static_cast<std::size_t>(a) * rows_ + static_cast<std::size_t>(b)];
    }
    std::size_t rows() const { return rows_; }

  private:
    std::uint64_t &at(std::size_t a, std::size_t b) { return data_[a * rows_ + b]; }
    std::size_t rows_;
    std::vector<std::uint64_t> data_;
};

} // namespace liftvf
