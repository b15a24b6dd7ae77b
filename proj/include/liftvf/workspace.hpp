#pragma once

// Jet workspace of a multigerm at a fixed depth K.
//
// Module jets live in blocks (branch j, component q), column
// (j * p + q) * M + monomial index. Everything here is computed modulo the
// submodule P_K = f^* m_0^K theta_S(f), whose scalar part on branch j is the
// ideal I_j^K generated by the pullbacks X^alpha o f_j with |alpha| = K. A
// reduced echelon form of I_j^K gives canonical normal forms, so quotient
// spaces such as theta / P_K are handled through representatives supported
// on standard monomials only.
//
// The working order N must satisfy m^{N+1} contained in I_j^K for every
// branch. When m^l_j lies in I_j, N = K * l - 1 is enough, and the monomials
// of degree >= K * l_j are known members of I_j^K (floored mode).

#include "liftvf/germ.hpp"
#include "liftvf/jetspace.hpp"
#include "liftvf/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace liftvf {

class GermJets {
  public:
    /// `order` < 0 selects the minimal sound order K * l - 1 with floored
    /// ideals; an explicit order disables the floor, so ranks can be
    /// compared across orders.
    GermJets(const Multigerm &g, const StabilizationResult &stab, int K, int order = -1)
        : g_(g), stab_(stab), K_(K),
          floored_(order < 0),
          basis_(g.n(), order < 0 ? std::max(K * stab.ell - 1, 0) : order) {
        if (K < 1)
            throw TruncationError("jet workspace depth must be at least 1");
        for (const auto &b : g.branches()) {
            std::vector<SparseVec> cs;
            for (const auto &c : b.components)
                cs.push_back(jet_of(c, basis_));
            comps_.push_back(std::move(cs));
        }
    }

    const Multigerm &germ() const { return g_; }
    const StabilizationResult &stabilization_result() const { return stab_; }
    int depth() const { return K_; }
    int order() const { return basis_.max_degree(); }
    const MonomialBasis &basis() const { return basis_; }
    std::size_t p() const { return g_.p(); }
    std::size_t n() const { return g_.n(); }
    std::size_t branches() const { return g_.branch_count(); }
    std::size_t block_count() const { return branches() * p(); }
    std::size_t module_dim() const { return block_count() * basis_.size(); }
    std::uint32_t block(std::size_t j, std::size_t q) const {
        return static_cast<std::uint32_t>(j * p() + q);
    }

    /// Scalar jets of the components f_{j,1..p}.
    const std::vector<SparseVec> &components(std::size_t j) const { return comps_.at(j); }

    /// Scalar jet of h placed into block b.
    SparseVec in_block(const SparseVec &h, std::uint32_t b) const {
        SparseVec v;
        v.reserve(h.size());
        const auto off = static_cast<std::uint32_t>(b * basis_.size());
        for (const auto &e : h)
            v.push_back({e.col + off, e.val});
        return v;
    }

    /// Reduced echelon form of the jets of I_j^k, 0 <= k <= K.
    const Echelon &ideal(std::size_t j, int k) const {
        if (k < 0 || k > K_)
            throw TruncationError("ideal power outside the workspace depth");
        auto key = std::make_pair(j, k);
        auto it = ideals_.find(key);
        if (it == ideals_.end()) {
            const int floor = floored_ ? k * stab_.ell_per_branch.at(j) : kNoTruncation;
            std::vector<SparseVec> gens;
            if (k == 0)
                gens.push_back({{0, Rational(1)}});
            else
                gens = pullback_monomial_jets(comps_.at(j), k, basis_);
            it = ideals_.emplace(key, ideal_jets(gens, basis_, floor)).first;
        }
        return it->second;
    }

    /// Normal form of a module jet modulo P_K.
    SparseVec nf(const SparseVec &v) const {
        return reduce_blockwise(v, basis_, [&](std::size_t b) -> const Echelon & {
            return ideal(b / p(), K_);
        });
    }
    Reducer reducer() const {
        return [this](SparseVec v) { return nf(v); };
    }

    /// tf applied to the k-th coordinate field on branch j: the column of
    /// partial derivatives of f_j with respect to x_k.
    SparseVec tf_generator(std::size_t j, std::size_t k) const {
        SparseVec v;
        const auto &b = g_.branch(j);
        for (std::size_t q = 0; q < p(); ++q) {
            const SparseVec d = jet_of(b.components[q].partial(k), basis_, block(j, q));
            v.insert(v.end(), d.begin(), d.end());
        }
        return v;
    }

    /// TR_e(f) modulo P_K, reduced echelon form.
    const Echelon &tr() const {
        if (!tr_) {
            Echelon e(module_dim());
            std::vector<SparseVec> seeds;
            for (std::size_t j = 0; j < branches(); ++j)
                for (std::size_t k = 0; k < n(); ++k)
                    seeds.push_back(tf_generator(j, k));
            close_submodule(e, seeds, basis_, reducer());
            e.make_reduced();
            tr_ = std::move(e);
        }
        return *tr_;
    }

    /// Generators of P_k (before reduction): (X^alpha o f_j) e_{j,q}.
    std::vector<SparseVec> pullback_generators(int k) const {
        std::vector<SparseVec> out;
        for (std::size_t j = 0; j < branches(); ++j) {
            const auto pulls = k == 0 ? std::vector<SparseVec>{{{0, Rational(1)}}}
                                      : pullback_monomial_jets(comps_.at(j), k, basis_);
            for (const auto &h : pulls)
                for (std::size_t q = 0; q < p(); ++q)
                    out.push_back(in_block(h, block(j, q)));
        }
        return out;
    }

    /// P_k modulo P_K, reduced echelon form.
    const Echelon &pullback_power(int k) const {
        auto it = powers_.find(k);
        if (it == powers_.end()) {
            Echelon e(module_dim());
            close_submodule(e, pullback_generators(k), basis_, reducer());
            e.make_reduced();
            it = powers_.emplace(k, std::move(e)).first;
        }
        return it->second;
    }

    /// For |alpha| = i (ascending grlex) and q: jets of (X^alpha o f) e_q,
    /// summed over branches and reduced modulo P_K. Index alpha * p + q.
    std::vector<SparseVec> omega_images(int i) const {
        std::vector<std::vector<SparseVec>> per_branch;
        for (std::size_t j = 0; j < branches(); ++j)
            per_branch.push_back(i == 0 ? std::vector<SparseVec>{{{0, Rational(1)}}}
                                        : pullback_monomial_jets(comps_.at(j), i, basis_));
        std::vector<SparseVec> out;
        const std::size_t count = per_branch.front().size();
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t q = 0; q < p(); ++q) {
                SparseVec v;
                for (std::size_t j = 0; j < branches(); ++j) {
                    const SparseVec part = in_block(per_branch[j][a], block(j, q));
                    v.insert(v.end(), part.begin(), part.end());
                }
                canonicalize(v);
                out.push_back(nf(v));
            }
        return out;
    }

    /// Multiplies a module jet by X_r o f (blockwise per branch), modulo P_K.
    SparseVec times_pullback(const SparseVec &v, std::size_t r) const {
        SparseVec out;
        const std::size_t M = basis_.size();
        for (std::size_t i = 0; i < v.size();) {
            const std::size_t blk = v[i].col / M;
            SparseVec part;
            for (; i < v.size() && v[i].col / M == blk; ++i)
                part.push_back(v[i]);
            const SparseVec prod = multiply_jet(part, comps_.at(blk / p()).at(r), basis_);
            out.insert(out.end(), prod.begin(), prod.end());
        }
        return nf(out);
    }

  private:
    const Multigerm &g_;
    StabilizationResult stab_;
    int K_;
    bool floored_;
    MonomialBasis basis_;
    std::vector<std::vector<SparseVec>> comps_;
    mutable std::map<std::pair<std::size_t, int>, Echelon> ideals_;
    mutable std::optional<Echelon> tr_;
    mutable std::map<int, Echelon> powers_;
};

} // namespace liftvf
