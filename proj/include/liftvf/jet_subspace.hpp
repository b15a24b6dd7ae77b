#pragma once

// Subspaces of the full truncated module: sum over branches of p copies of
// the source jets of order <= N, with no quotient taken.

#include "liftvf/germ.hpp"
#include "liftvf/jetspace.hpp"
#include "liftvf/linalg.hpp"

#include <memory>
#include <vector>

namespace liftvf {

class JetSubspace {
  public:
    JetSubspace(std::shared_ptr<const MonomialBasis> basis, std::size_t branches, std::size_t p,
                Echelon rows)
        : basis_(std::move(basis)), branches_(branches), p_(p), rows_(std::move(rows)) {
        if (rows_.dim() != ambient_dim())
            throw RingError("jet subspace dimension mismatch");
        rows_.make_reduced();
    }

    int order() const { return basis_->max_degree(); }
    const MonomialBasis &basis() const { return *basis_; }
    std::shared_ptr<const MonomialBasis> basis_ptr() const { return basis_; }
    std::size_t branches() const { return branches_; }
    std::size_t p() const { return p_; }
    std::size_t ambient_dim() const { return branches_ * p_ * basis_->size(); }
    std::size_t rank() const { return rows_.rank(); }
    std::size_t codim() const { return ambient_dim() - rank(); }
    const Echelon &echelon() const { return rows_; }

    /// Column of monomial `idx` in component q of branch j.
    std::uint32_t column(std::size_t j, std::size_t q, std::size_t idx) const {
        return static_cast<std::uint32_t>((j * p_ + q) * basis_->size() + idx);
    }

    bool contains(const SparseVec &v) const { return rows_.contains(v); }
    bool contains(const JetSubspace &o) const {
        check_compatible(o);
        for (const auto &r : o.rows_.rows())
            if (!rows_.contains(r))
                return false;
        return true;
    }
    bool operator==(const JetSubspace &o) const {
        check_compatible(o);
        return same_span(rows_, o.rows_);
    }

    JetSubspace operator+(const JetSubspace &o) const {
        check_compatible(o);
        Echelon e = rows_;
        e.absorb(o.rows_);
        return {basis_, branches_, p_, std::move(e)};
    }
    JetSubspace intersection(const JetSubspace &o) const {
        check_compatible(o);
        return {basis_, branches_, p_, intersect(rows_, o.rows_)};
    }

  private:
    void check_compatible(const JetSubspace &o) const {
        if (o.order() != order() || o.branches_ != branches_ || o.p_ != p_ ||
            o.basis_->nvars() != basis_->nvars())
            throw RingError("jet subspaces live in different spaces");
    }

    std::shared_ptr<const MonomialBasis> basis_;
    std::size_t branches_, p_;
    Echelon rows_;
};

/// Module jet of a per-branch family of p source polynomials.
inline SparseVec module_jet(const std::vector<std::vector<Polynomial>> &per_branch,
                            const MonomialBasis &basis) {
    SparseVec v;
    std::uint32_t blk = 0;
    for (const auto &comps : per_branch)
        for (const auto &c : comps) {
            const SparseVec part = jet_of(c, basis, blk++);
            v.insert(v.end(), part.begin(), part.end());
        }
    return v;
}

/// Jets of TR_e(f) = tf(theta_S(n)) at order N.
inline JetSubspace tr_e_jets(const Multigerm &g, int N) {
    auto basis = std::make_shared<const MonomialBasis>(g.n(), N);
    const std::size_t p = g.p();
    Echelon e(g.branch_count() * p * basis->size());
    std::vector<SparseVec> seeds;
    for (std::size_t j = 0; j < g.branch_count(); ++j)
        for (std::size_t k = 0; k < g.n(); ++k) {
            SparseVec v;
            for (std::size_t q = 0; q < p; ++q) {
                const auto part = jet_of(g.branch(j).components[q].partial(k), *basis,
                                         static_cast<std::uint32_t>(j * p + q));
                v.insert(v.end(), part.begin(), part.end());
            }
            seeds.push_back(std::move(v));
        }
    close_submodule(e, seeds, *basis);
    return {basis, g.branch_count(), p, std::move(e)};
}

/// Jets of f^* m_0^i theta_S(f) at order N; the whole space when i = 0.
inline JetSubspace pullback_power_jets(const Multigerm &g, int i, int N) {
    if (i < 0)
        throw InputError("pullback power must be non-negative");
    auto basis = std::make_shared<const MonomialBasis>(g.n(), N);
    const std::size_t p = g.p(), M = basis->size();
    Echelon e(g.branch_count() * p * M);
    if (i == 0) {
        for (std::size_t c = 0; c < e.dim(); ++c)
            e.insert({{static_cast<std::uint32_t>(c), Rational(1)}});
        return {basis, g.branch_count(), p, std::move(e)};
    }
    for (std::size_t j = 0; j < g.branch_count(); ++j) {
        std::vector<SparseVec> comps;
        for (const auto &c : g.branch(j).components)
            comps.push_back(jet_of(c, *basis));
        const Echelon ideal = ideal_jets(pullback_monomial_jets(comps, i, *basis), *basis);
        for (std::size_t q = 0; q < p; ++q) {
            const auto off = static_cast<std::uint32_t>((j * p + q) * M);
            for (const auto &r : ideal.rows()) {
                SparseVec v;
                for (const auto &t : r)
                    v.push_back({t.col + off, t.val});
                e.insert(std::move(v));
            }
        }
    }
    return {basis, g.branch_count(), p, std::move(e)};
}

} // namespace liftvf
