#pragma once

// Graded pieces of the local algebra Q(f) = C_S / f^* m_0 C_S:
//   i-delta = dim f^* m_0^i C_S / f^* m_0^{i+1} C_S
//   i-gamma = dim ker of the map induced by tf on those pieces,
// the closed binomial formulas they obey for corank <= 1, and the
// TK_e-codimension.

#include "liftvf/germ.hpp"
#include "liftvf/jet_subspace.hpp"
#include "liftvf/workspace.hpp"

#include <string>

namespace liftvf {

struct GradedInvariants {
    int i = 0;
    long delta = 0; ///< i-delta
    long gamma = 0; ///< i-gamma
    bool operator==(const GradedInvariants &) const = default;
};

/// Smallest order at which a computation modulo P_K is exact.
inline int minimal_order(const StabilizationResult &s, int K) { return std::max(K * s.ell - 1, 0); }

namespace detail {

inline void require_order(const StabilizationResult &s, int K, int N) {
    if (N < minimal_order(s, K))
        throw TruncationError("jet order " + std::to_string(N) + " is too small, need at least " +
                              std::to_string(minimal_order(s, K)));
}

/// Runs `f(order)` at N and N + 1 and insists on the same answer.
template <class F> auto stable_value(const StabilizationResult &s, int K, int N, F f) {
    require_order(s, K, N);
    const auto a = f(N), b = f(N + 1);
    if (a != b)
        throw TruncationError("rank not stable between jet orders " + std::to_string(N) +
                              " and " + std::to_string(N + 1) + "; raise the jet order");
    return a;
}

} // namespace detail

/// i-delta from a workspace of depth >= i + 1.
inline long graded_delta(const GermJets &w, int i) {
    if (i < 0 || i + 1 > w.depth())
        throw TruncationError("graded_delta needs a workspace of depth i + 1");
    long total = 0;
    for (std::size_t j = 0; j < w.branches(); ++j)
        total += static_cast<long>(w.ideal(j, i).rank()) - static_cast<long>(w.ideal(j, i + 1).rank());
    return total;
}

/// i-gamma from a workspace of depth >= i + 1: n * i-delta minus the rank of
/// tf(f^* m_0^i theta_S(n)) modulo P_{i+1}.
inline long graded_gamma(const GermJets &w, int i) {
    if (i < 0 || i + 1 > w.depth())
        throw TruncationError("graded_gamma needs a workspace of depth i + 1");
    const Echelon &floor_space = w.pullback_power(i + 1);
    Echelon img = floor_space;
    std::vector<SparseVec> seeds;
    for (std::size_t j = 0; j < w.branches(); ++j) {
        const auto pulls = i == 0 ? std::vector<SparseVec>{{{0, Rational(1)}}}
                                  : pullback_monomial_jets(w.components(j), i, w.basis());
        for (std::size_t k = 0; k < w.n(); ++k) {
            const SparseVec d = w.tf_generator(j, k);
            for (const auto &h : pulls)
                seeds.push_back(multiply_jet(d, h, w.basis()));
        }
    }
    close_submodule(img, seeds, w.basis(), w.reducer());
    const long rank = static_cast<long>(img.rank() - floor_space.rank());
    return static_cast<long>(w.n()) * graded_delta(w, i) - rank;
}

/// i-delta at the minimal sound order, or at an explicit order N checked
/// against N + 1.
inline long graded_delta(const Multigerm &g, int i, int N = -1) {
    const auto s = stabilization(g);
    if (N < 0)
        return graded_delta(GermJets(g, s, i + 1), i);
    return detail::stable_value(s, i + 1, N,
                                [&](int order) { return graded_delta(GermJets(g, s, i + 1, order), i); });
}

inline long graded_gamma(const Multigerm &g, int i, int N = -1) {
    const auto s = stabilization(g);
    if (N < 0)
        return graded_gamma(GermJets(g, s, i + 1), i);
    return detail::stable_value(s, i + 1, N,
                                [&](int order) { return graded_gamma(GermJets(g, s, i + 1, order), i); });
}

/// Closed formulas for corank <= 1: i-delta = C(n+i-1, i) delta and
/// i-gamma = C(n+i-1, i) (delta - |S|).
inline GradedInvariants predicted_graded(const Multigerm &g, int i, const StabilizationResult &s) {
    if (i < 0)
        throw InputError("level must be non-negative");
    const long c = binomial(static_cast<long>(g.n()) + i - 1, i);
    return {i, c * s.delta, c * (s.delta - static_cast<long>(g.branch_count()))};
}
inline GradedInvariants predicted_graded(const Multigerm &g, int i) {
    return predicted_graded(g, i, stabilization(g));
}

/// dim theta_S(f) / (TR_e(f) + f^* m_0 theta_S(f)), computed on full jets of
/// order N (default l - 1) and confirmed at N + 1.
inline long tke_codim(const Multigerm &g, int N = -1) {
    const auto s = stabilization(g);
    if (N < 0)
        N = minimal_order(s, 1);
    return detail::stable_value(s, 1, N, [&](int order) {
        const JetSubspace tk = tr_e_jets(g, order) + pullback_power_jets(g, 1, order);
        return static_cast<long>(tk.codim());
    });
}

/// (p - n) delta + gamma, the value tke_codim must match for corank <= 1.
inline long predicted_tke_codim(const Multigerm &g, const StabilizationResult &s) {
    const auto pg = predicted_graded(g, 0, s);
    return (static_cast<long>(g.p()) - static_cast<long>(g.n())) * pg.delta + pg.gamma;
}

} // namespace liftvf
