#pragma once

// Jets as sparse coordinate vectors.
//
// A scalar jet of order N in n variables is a SparseVec over the monomial
// basis (ascending graded-lex). A module jet with B blocks (for instance
// branch x component) uses column block * M + monomial index, M being the
// basis size. Multiplication by a scalar jet acts blockwise.

#include "liftvf/linalg.hpp"
#include "liftvf/monomial.hpp"
#include "liftvf/polynomial.hpp"

#include <deque>
#include <functional>
#include <vector>

namespace liftvf {

/// Coordinates of `p` truncated at the basis order (and at `cap` if smaller).
inline SparseVec jet_of(const Polynomial &p, const MonomialBasis &basis,
                        std::uint32_t block = 0, int cap = kNoTruncation) {
    if (p.nvars() != basis.nvars())
        throw RingError("jet_of: polynomial arity does not match the basis");
    SparseVec v;
    const auto base = static_cast<std::uint32_t>(block * basis.size());
    const int top = std::min(cap, basis.max_degree());
    for (const auto &[m, c] : p.terms()) {
        if (m.degree() > top)
            break;
        v.push_back({base + static_cast<std::uint32_t>(basis.rank(m)), c});
    }
    return v; // terms() is ascending grlex, so ranks ascend
}

/// Inverse of jet_of for one block.
inline Polynomial poly_of(const SparseVec &v, const MonomialBasis &basis, const RingPtr &ring,
                          std::uint32_t block = 0) {
    Polynomial p(ring);
    const auto lo = block * basis.size(), hi = lo + basis.size();
    for (const auto &e : v)
        if (e.col >= lo && e.col < hi)
            p.add_term(basis.monomial(e.col - lo), e.val);
    return p;
}

/// v * h, where v is a module jet and h a scalar jet; terms above the basis
/// order or of degree > cap are dropped.
inline SparseVec multiply_jet(const SparseVec &v, const SparseVec &h, const MonomialBasis &basis,
                              int cap = kNoTruncation) {
    SparseVec out;
    const std::size_t M = basis.size();
    for (const auto &a : v) {
        const std::size_t blk = a.col / M, ia = a.col % M;
        const int da = basis.degree(ia);
        for (const auto &b : h) {
            if (da + basis.degree(b.col) > cap)
                break; // h ascends in degree
            const std::size_t idx = basis.product(ia, b.col);
            if (idx == MonomialBasis::npos)
                break;
            out.push_back({static_cast<std::uint32_t>(blk * M + idx), a.val * b.val});
        }
    }
    canonicalize(out);
    return out;
}

/// x_var * v, blockwise, dropping terms above the order or of degree > cap.
inline SparseVec shift_jet(const SparseVec &v, std::size_t var, const MonomialBasis &basis,
                           int cap = kNoTruncation) {
    SparseVec out;
    out.reserve(v.size());
    const std::size_t M = basis.size();
    for (const auto &a : v) {
        const std::size_t blk = a.col / M, ia = a.col % M;
        if (basis.degree(ia) + 1 > cap)
            continue;
        const std::size_t idx = basis.times_variable(ia, var);
        if (idx == MonomialBasis::npos)
            continue;
        out.push_back({static_cast<std::uint32_t>(blk * M + idx), a.val});
    }
    canonicalize(out);
    return out;
}

using Reducer = std::function<SparseVec(SparseVec)>;

/// Extends `span` to the smallest subspace containing `seeds` and closed under
/// multiplication by every source variable. `nf` maps a vector to a
/// representative modulo a fixed submodule (identity when empty); it must
/// commute with the module structure.
inline void close_submodule(Echelon &span, const std::vector<SparseVec> &seeds,
                            const MonomialBasis &basis, const Reducer &nf = {},
                            int cap = kNoTruncation) {
    std::deque<SparseVec> queue;
    auto push = [&](SparseVec v) {
        if (nf)
            v = nf(std::move(v));
        if (span.insert(std::move(v)))
            queue.push_back(span.rows().back());
    };
    for (const auto &s : seeds)
        push(s);
    while (!queue.empty()) {
        SparseVec r = std::move(queue.front());
        queue.pop_front();
        for (std::size_t t = 0; t < basis.nvars(); ++t)
            push(shift_jet(r, t, basis, cap));
    }
}

/// Jets of the pullbacks X^alpha o f for all |alpha| = k, in ascending grlex
/// order of alpha. `components` are the scalar jets of f_1..f_p.
inline std::vector<SparseVec> pullback_monomial_jets(const std::vector<SparseVec> &components,
                                                     int k, const MonomialBasis &basis,
                                                     int cap = kNoTruncation) {
    const std::size_t p = components.size();
    const MonomialBasis targets(p, std::max(k, 0));
    std::vector<SparseVec> out;
    const std::size_t lo = targets.degree_begin(k), hi = targets.degree_begin(k + 1);
    for (std::size_t a = lo; a < hi; ++a) {
        auto alpha = targets.at(a);
        SparseVec acc{{0, Rational(1)}};
        for (std::size_t q = 0; q < p && !acc.empty(); ++q)
            for (int e = 0; e < alpha[q] && !acc.empty(); ++e)
                acc = multiply_jet(acc, components[q], basis, cap);
        out.push_back(std::move(acc));
    }
    return out;
}

/// Jets (mod m^{N+1}) of the ideal generated by `generators`, as a reduced
/// echelon form over the scalar monomial basis. When `floor` is given, the
/// caller guarantees that every monomial of degree >= floor lies in the
/// ideal; those coordinates are added as unit rows and the closure runs
/// below that degree only.
inline Echelon ideal_jets(const std::vector<SparseVec> &generators, const MonomialBasis &basis,
                          int floor = kNoTruncation) {
    Echelon e(basis.size());
    const int cap = floor == kNoTruncation ? kNoTruncation : floor - 1;
    std::vector<SparseVec> seeds;
    seeds.reserve(generators.size());
    for (const auto &g : generators) {
        SparseVec s;
        for (const auto &t : g)
            if (basis.degree(t.col) <= cap)
                s.push_back(t);
        seeds.push_back(std::move(s));
    }
    close_submodule(e, seeds, basis, {}, cap);
    if (floor != kNoTruncation && floor <= basis.max_degree())
        for (std::size_t idx = basis.degree_begin(std::max(floor, 0)); idx < basis.size(); ++idx)
            e.insert({{static_cast<std::uint32_t>(idx), Rational(1)}});
    e.make_reduced();
    return e;
}

/// Normal form of a module jet modulo (ideal jets) x (all blocks), using a
/// reduced echelon form of the ideal for each block.
inline SparseVec reduce_blockwise(const SparseVec &v, const MonomialBasis &basis,
                                  const std::function<const Echelon &(std::size_t block)> &ideal) {
    SparseVec out;
    const std::size_t M = basis.size();
    for (std::size_t i = 0; i < v.size();) {
        const std::size_t blk = v[i].col / M;
        SparseVec part;
        for (; i < v.size() && v[i].col / M == blk; ++i)
            part.push_back({static_cast<std::uint32_t>(v[i].col - blk * M), v[i].val});
        ideal(blk).reduce(part);
        for (auto &e : part)
            out.push_back({static_cast<std::uint32_t>(e.col + blk * M), std::move(e.val)});
    }
    return out;
}

} // namespace liftvf
