#pragma once

// Exact sparse linear algebra over the rationals: incremental row echelon
// forms, canonical normal forms modulo a subspace, dependency (kernel)
// extraction and subspace intersection.

#include "liftvf/error.hpp"
#include "liftvf/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace liftvf {

struct Entry {
    std::uint32_t col;
    Rational val;
};

/// Sparse vector: entries sorted by column, no zero values.
using SparseVec = std::vector<Entry>;

/// Sorts and merges duplicate columns, dropping zeros.
inline void canonicalize(SparseVec &v) {
    std::sort(v.begin(), v.end(), [](const Entry &a, const Entry &b) { return a.col < b.col; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i + 1;
        Rational acc = std::move(v[i].val);
        while (j < v.size() && v[j].col == v[i].col)
            acc += v[j++].val;
        if (acc != 0) {
            v[out].col = v[i].col;
            v[out].val = std::move(acc);
            ++out;
        }
        i = j;
    }
    v.resize(out);
}

inline SparseVec scaled(const SparseVec &v, const Rational &s) {
    SparseVec r;
    if (s == 0)
        return r;
    r.reserve(v.size());
    for (const auto &e : v)
        r.push_back({e.col, e.val * s});
    return r;
}

/// v[from..] += a * row. Columns of `row` must all be >= v[from].col.
inline void axpy_tail(SparseVec &v, std::size_t from, const Rational &a, const SparseVec &row) {
    thread_local SparseVec out;
    out.clear();
    out.reserve(v.size() - from + row.size());
    std::size_t i = from, j = 0;
    while (i < v.size() || j < row.size()) {
        if (j == row.size() || (i < v.size() && v[i].col < row[j].col)) {
            out.push_back(std::move(v[i++]));
        } else if (i == v.size() || row[j].col < v[i].col) {
            out.push_back({row[j].col, a * row[j].val});
            ++j;
        } else {
            Rational s = v[i].val + a * row[j].val;
            if (s != 0)
                out.push_back({v[i].col, std::move(s)});
            ++i;
            ++j;
        }
    }
    v.resize(from);
    for (auto &e : out)
        v.push_back(std::move(e));
}

/// v += a * w for arbitrary sparse vectors.
inline void axpy(SparseVec &v, const Rational &a, const SparseVec &w) {
    if (a == 0 || w.empty())
        return;
    axpy_tail(v, 0, a, w);
}

/// Incrementally built row echelon form. Every stored row has a distinct
/// pivot (its first column) with pivot entry 1. Optionally tracks, for each
/// row, the combination of inserted vectors that produced it; vectors that
/// reduce to zero then yield linear dependencies.
class Echelon {
  public:
    explicit Echelon(std::size_t dim, bool track = false)
        : dim_(dim), track_(track), pivot_row_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }
    bool tracking() const { return track_; }
    bool is_reduced() const { return reduced_; }
    const std::vector<SparseVec> &rows() const { return rows_; }
    /// Combination (over insertion ids) equal to row r. Tracking only.
    const SparseVec &row_combination(std::size_t r) const { return combos_.at(r); }
    /// Each entry is a combination of inserted vectors summing to zero.
    const std::vector<SparseVec> &dependencies() const { return deps_; }

    bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }
    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> p;
        p.reserve(rows_.size());
        for (const auto &r : rows_)
            p.push_back(r.front().col);
        std::sort(p.begin(), p.end());
        return p;
    }

    /// Replaces v by its normal form: the unique vector congruent to v modulo
    /// the row space that vanishes on every pivot column. When `used` is given
    /// it receives (row index, coefficient) pairs with v_in = sum + v_out.
    void reduce(SparseVec &v, SparseVec *used = nullptr) const {
        std::size_t k = 0;
        while (k < v.size()) {
            const auto col = v[k].col;
            check_col(col);
            const std::int32_t r = pivot_row_[col];
            if (r < 0) {
                ++k;
                continue;
            }
            const Rational a = v[k].val;
            axpy_tail(v, k, -a, rows_[static_cast<std::size_t>(r)]);
            if (used)
                used->push_back({static_cast<std::uint32_t>(r), a});
        }
        if (used)
            canonicalize(*used);
    }

    SparseVec normal_form(SparseVec v) const {
        reduce(v);
        return v;
    }

    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    /// Inserts v. Returns true when v was independent of the current rows.
    bool insert(SparseVec v) {
        const std::uint32_t id = static_cast<std::uint32_t>(inserted_++);
        if (!track_) {
            reduce(v);
            if (v.empty())
                return false;
            add_row(std::move(v), {});
            return true;
        }
        SparseVec used;
        reduce(v, &used);
        // combination: e_id - sum a_r * combo_r
        SparseVec combo{{id, Rational(1)}};
        for (const auto &[r, a] : used)
            for (const auto &e : combos_[r])
                combo.push_back({e.col, -a * e.val});
        canonicalize(combo);
        if (v.empty()) {
            deps_.push_back(std::move(combo));
            return false;
        }
        add_row(std::move(v), std::move(combo));
        return true;
    }

    /// Inserts every row of another echelon form over the same space.
    void absorb(const Echelon &other) {
        if (other.dim_ != dim_)
            throw RingError("echelon dimension mismatch");
        for (const auto &r : other.rows_)
            insert(r);
    }

    /// Expresses v as a combination of inserted vectors (tracking only);
    /// nullopt when v is outside the span.
    std::optional<SparseVec> express(SparseVec v) const {
        if (!track_)
            throw Error("express() requires a tracking echelon");
        SparseVec used;
        reduce(v, &used);
        if (!v.empty())
            return std::nullopt;
        SparseVec combo;
        for (const auto &[r, a] : used)
            for (const auto &e : combos_[r])
                combo.push_back({e.col, a * e.val});
        canonicalize(combo);
        return combo;
    }

    /// Back-substitutes so that every pivot column is zero in all other rows
    /// (reduced row echelon form). Rows are then ordered by pivot.
    void make_reduced() {
        if (reduced_)
            return;
        std::vector<std::size_t> order(rows_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows_[a].front().col > rows_[b].front().col;
        });
        for (std::size_t idx : order) {
            SparseVec &row = rows_[idx];
            std::size_t k = 1;
            while (k < row.size()) {
                const std::int32_t r = pivot_row_[row[k].col];
                if (r < 0) {
                    ++k;
                    continue;
                }
                const Rational a = row[k].val;
                axpy_tail(row, k, -a, rows_[static_cast<std::size_t>(r)]);
                if (track_)
                    axpy(combos_[idx], -a, combos_[static_cast<std::size_t>(r)]);
            }
        }
        std::vector<std::size_t> asc(order.rbegin(), order.rend());
        std::vector<SparseVec> rows;
        std::vector<SparseVec> combos;
        rows.reserve(rows_.size());
        for (std::size_t idx : asc) {
            rows.push_back(std::move(rows_[idx]));
            if (track_)
                combos.push_back(std::move(combos_[idx]));
        }
        rows_ = std::move(rows);
        combos_ = std::move(combos);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            pivot_row_[rows_[r].front().col] = static_cast<std::int32_t>(r);
        reduced_ = true;
    }

  private:
    void check_col(std::uint32_t col) const {
        if (col >= dim_)
            throw RingError("vector column outside echelon space");
    }

    void add_row(SparseVec v, SparseVec combo) {
        const Rational inv = Rational(1) / v.front().val;
        if (inv != 1) {
            for (auto &e : v)
                e.val *= inv;
            for (auto &e : combo)
                e.val *= inv;
        }
        pivot_row_[v.front().col] = static_cast<std::int32_t>(rows_.size());
        rows_.push_back(std::move(v));
        if (track_)
            combos_.push_back(std::move(combo));
        reduced_ = false;
    }

    std::size_t dim_;
    bool track_;
    bool reduced_ = true;
    std::size_t inserted_ = 0;
    std::vector<std::int32_t> pivot_row_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> combos_;
    std::vector<SparseVec> deps_;
};

/// Basis, in reduced row echelon form over `count` coordinates, of
/// { c : sum_k c_k vectors[k] = 0 }.
inline Echelon kernel_of(const std::vector<SparseVec> &vectors, std::size_t ambient,
                         std::size_t count) {
    Echelon e(ambient, true);
    for (const auto &v : vectors)
        e.insert(v);
    Echelon k(count);
    for (const auto &d : e.dependencies())
        k.insert(d);
    k.make_reduced();
    return k;
}

/// Intersection of two row spaces of the same dimension (Zassenhaus: echelon
/// form of the stacked block matrix [A A; B 0]).
inline Echelon intersect(const Echelon &a, const Echelon &b) {
    if (a.dim() != b.dim())
        throw RingError("intersect: dimension mismatch");
    const auto d = static_cast<std::uint32_t>(a.dim());
    Echelon stacked(2 * a.dim());
    for (const auto &r : a.rows()) {
        SparseVec v = r;
        for (const auto &e : r)
            v.push_back({e.col + d, e.val});
        stacked.insert(std::move(v));
    }
    for (const auto &r : b.rows())
        stacked.insert(r);
    Echelon out(a.dim());
    for (const auto &r : stacked.rows()) {
        if (r.front().col < d)
            continue;
        SparseVec v;
        v.reserve(r.size());
        for (const auto &e : r)
            v.push_back({e.col - d, e.val});
        out.insert(std::move(v));
    }
    out.make_reduced();
    return out;
}

/// True iff both row spaces coincide.
inline bool same_span(const Echelon &a, const Echelon &b) {
    if (a.dim() != b.dim() || a.rank() != b.rank())
        return false;
    for (const auto &r : b.rows())
        if (!a.contains(r))
            return false;
    return true;
}

} // namespace liftvf
