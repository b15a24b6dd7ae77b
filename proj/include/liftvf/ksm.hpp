#pragma once

// Reduced Kodaira-Spencer-Mather maps at level i,
//
//   omega_i : m_0^i theta_0(p) / m_0^{i+1} theta_0(p)
//       -> P_i / ((TR_e(f) cap P_i) + P_{i+1}),   [xi] -> [xi o f],
//
// where P_k = f^* m_0^k theta_S(f). At level 0 the target is
// theta_S(f) / TK_e(f).
//
// Computation is modulo P_{i+1}. Write T for the image of TR_e(f) there.
// The target embeds into theta / T, so a class is zero exactly when the
// normal form of xi o f modulo T vanishes. Its dimension is
// rank(T + P_i) - rank(T).

#include "liftvf/germ.hpp"
#include "liftvf/localalg.hpp"
#include "liftvf/vector_field.hpp"
#include "liftvf/workspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liftvf {

struct OmegaMap {
    int level = 0;
    int order = 0;                      ///< jet order N used
    std::vector<Monomial> monomials;    ///< X^alpha, |alpha| = level, ascending grlex
    std::size_t p = 0;
    std::size_t domain_dim = 0;         ///< p * C(p+i-1, i); index alpha * p + q
    std::size_t target_dim = 0;
    std::size_t rank = 0;
    std::vector<SparseVec> columns;     ///< normal forms of xi o f, one per domain element
    Echelon kernel = Echelon(0);                ///< reduced echelon basis over domain coordinates

    std::size_t kernel_dim() const { return kernel.rank(); }
    bool surjective() const { return rank == target_dim; }
    bool injective() const { return kernel_dim() == 0; }

    /// Domain element as a vector field.
    TargetVectorField field(const SparseVec &coords, const RingPtr &target) const {
        TargetVectorField xi;
        for (std::size_t q = 0; q < p; ++q)
            xi.components.emplace_back(target);
        for (const auto &e : coords)
            xi.components[e.col % p].add_term(monomials[e.col / p], e.val);
        return xi;
    }

    /// Shape summary used to compare computations at different orders.
    bool same_shape(const OmegaMap &o) const {
        return level == o.level && domain_dim == o.domain_dim && target_dim == o.target_dim &&
               rank == o.rank && same_span(kernel, o.kernel);
    }
};

/// Degree-`level` monomials in p variables, ascending grlex.
inline std::vector<Monomial> target_monomials(std::size_t p, int level) {
    const MonomialBasis b(p, level);
    std::vector<Monomial> out;
    for (std::size_t a = b.degree_begin(level); a < b.size(); ++a)
        out.push_back(b.monomial(a));
    return out;
}

/// omega_i from a workspace of depth exactly i + 1.
inline OmegaMap omega_map(const GermJets &w, int i) {
    if (i < 0 || w.depth() != i + 1)
        throw TruncationError("omega_map needs a workspace of depth i + 1");
    OmegaMap m;
    m.level = i;
    m.order = w.order();
    m.p = w.p();
    m.monomials = target_monomials(w.p(), i);
    m.domain_dim = m.monomials.size() * w.p();

    const Echelon &tr = w.tr();
    Echelon u = tr;
    u.absorb(w.pullback_power(i));
    m.target_dim = u.rank() - tr.rank();

    Echelon image(w.module_dim(), true);
    for (auto &v : w.omega_images(i)) {
        tr.reduce(v);
        image.insert(v);
        m.columns.push_back(std::move(v));
    }
    m.rank = image.rank();
    m.kernel = Echelon(m.domain_dim);
    for (const auto &d : image.dependencies())
        m.kernel.insert(d);
    m.kernel.make_reduced();
    return m;
}

/// omega_i at the minimal sound order, or at an explicit order N that is
/// confirmed at N + 1.
inline OmegaMap omega_map(const Multigerm &g, int i, const StabilizationResult &s, int N = -1) {
    if (N < 0)
        return omega_map(GermJets(g, s, i + 1), i);
    detail::require_order(s, i + 1, N);
    OmegaMap a = omega_map(GermJets(g, s, i + 1, N), i);
    const OmegaMap b = omega_map(GermJets(g, s, i + 1, N + 1), i);
    if (!a.same_shape(b))
        throw TruncationError("omega map not stable between jet orders " + std::to_string(N) +
                              " and " + std::to_string(N + 1) + "; raise the jet order");
    return a;
}
inline OmegaMap omega_map(const Multigerm &g, int i, int N = -1) {
    return omega_map(g, i, stabilization(g), N);
}

struct OmegaKernel {
    int level = 0;
    std::size_t dim = 0;
    std::vector<TargetVectorField> basis; ///< homogeneous of degree `level`
};

inline OmegaKernel omega_kernel(const Multigerm &g, const OmegaMap &m) {
    OmegaKernel k{m.level, m.kernel_dim(), {}};
    for (const auto &r : m.kernel.rows())
        k.basis.push_back(m.field(r, g.target()));
    return k;
}
inline OmegaKernel omega_kernel(const Multigerm &g, int i) { return omega_kernel(g, omega_map(g, i)); }

/// (p - n) i-delta + i-gamma - (i-1)-gamma, or (p - n) delta + gamma at i = 0.
inline long predicted_target_dim(const Multigerm &g, int i, const StabilizationResult &s) {
    const auto cur = predicted_graded(g, i, s);
    long v = (static_cast<long>(g.p()) - static_cast<long>(g.n())) * cur.delta + cur.gamma;
    if (i > 0)
        v -= predicted_graded(g, i - 1, s).gamma;
    return v;
}

/// p C(p+i, i+1) - ((p-n) (i+1)-delta + (i+1)-gamma - i-gamma), valid when
/// omega_{i+1} is surjective.
inline long predicted_kernel_dim(const Multigerm &g, int i, const StabilizationResult &s,
                                 const OmegaMap &next) {
    if (next.level != i + 1)
        throw InputError("predicted_kernel_dim needs the map at level i + 1");
    if (!next.surjective())
        throw HypothesisError("omega at level " + std::to_string(i + 1) +
                              " is not surjective; the kernel formula does not apply");
    const long p = static_cast<long>(g.p());
    return p * binomial(p + i, i + 1) - predicted_target_dim(g, i + 1, s);
}
inline long predicted_kernel_dim(const Multigerm &g, int i) {
    const auto s = stabilization(g);
    return predicted_kernel_dim(g, i, s, omega_map(g, i + 1, s));
}

/// Level bound used when none is given: l + 2.
inline int default_max_index(const StabilizationResult &s) { return s.ell + 2; }

struct LevelRecord {
    int level = 0;
    bool computed = false; ///< false: surjectivity/injectivity inferred by monotonicity
    int order = -1;        ///< jet order of the computation, -1 when inferred
    long delta = 0;        ///< i-delta (closed formula when inferred)
    long gamma = 0;        ///< i-gamma (closed formula when inferred)
    bool surjective = false;
    bool injective = false;
    std::size_t domain_dim = 0;
    std::size_t target_dim = 0;
    std::size_t kernel_dim = 0;
};

struct IndexReport {
    enum class Bound { Exact, MinusInfinity, AtLeast, NotFound };
    int kmax = 0;
    Bound i1_kind = Bound::NotFound; ///< Exact or NotFound (meaning > kmax)
    int i1 = 0;
    Bound i2_kind = Bound::Exact;    ///< Exact, MinusInfinity or AtLeast (>= kmax)
    int i2 = 0;
    std::vector<LevelRecord> levels; ///< 0..kmax
    std::vector<OmegaMap> maps;      ///< the maps actually computed, by level

    bool i1_found() const { return i1_kind == Bound::Exact; }
    bool i2_finite() const { return i2_kind == Bound::Exact; }
    std::optional<int> well_behaved() const {
        if (i1_found() && i2_finite())
            return i1 - i2;
        return std::nullopt;
    }
    /// The level i with i1 = i2 = i, if any.
    std::optional<int> bijective_level() const {
        if (i1_found() && i2_finite() && i1 == i2)
            return i1;
        return std::nullopt;
    }
    const OmegaMap *map(int level) const {
        for (const auto &m : maps)
            if (m.level == level)
                return &m;
        return nullptr;
    }
};

inline LevelRecord record_of(const OmegaMap &m) {
    LevelRecord r;
    r.level = m.level;
    r.computed = true;
    r.order = m.order;
    r.surjective = m.surjective();
    r.injective = m.injective();
    r.domain_dim = m.domain_dim;
    r.target_dim = m.target_dim;
    r.kernel_dim = m.kernel_dim();
    return r;
}

/// Scans levels upward. By monotonicity (surjective at i implies surjective
/// above, injective at i implies injective below) the scan stops once a
/// surjective and a non-injective level have both been seen; later levels
/// are filled in as inferred. With order >= 0 every level is computed at
/// that jet order and confirmed one order higher.
inline IndexReport indices(const Multigerm &g, const StabilizationResult &s, int kmax = -1,
                           int order = -1) {
    if (kmax < 0)
        kmax = default_max_index(s);
    if (kmax < 1)
        throw InputError("level bound must be at least 1");
    IndexReport r;
    r.kmax = kmax;
    std::optional<int> first_surjective, first_non_injective;
    int i = 0;
    for (; i <= kmax; ++i) {
        LevelRecord rec;
        if (order < 0) {
            const GermJets w(g, s, i + 1);
            r.maps.push_back(omega_map(w, i));
            rec = record_of(r.maps.back());
            rec.delta = graded_delta(w, i);
            rec.gamma = graded_gamma(w, i);
        } else {
            r.maps.push_back(omega_map(g, i, s, order));
            rec = record_of(r.maps.back());
            rec.delta = graded_delta(g, i, order);
            rec.gamma = graded_gamma(g, i, order);
        }
        const OmegaMap &m = r.maps.back();
        r.levels.push_back(rec);
        if (m.surjective() && !first_surjective)
            first_surjective = i;
        if (!m.injective() && !first_non_injective)
            first_non_injective = i;
        if (first_surjective && first_non_injective)
            break;
    }
    for (int k = i + 1; k <= kmax; ++k) {
        LevelRecord rec;
        rec.level = k;
        rec.surjective = true;
        rec.injective = false;
        rec.domain_dim = g.p() * static_cast<std::size_t>(binomial(static_cast<long>(g.p()) + k - 1, k));
        rec.target_dim = static_cast<std::size_t>(predicted_target_dim(g, k, s));
        rec.kernel_dim = rec.domain_dim - rec.target_dim;
        const auto pg = predicted_graded(g, k, s);
        rec.delta = pg.delta;
        rec.gamma = pg.gamma;
        r.levels.push_back(rec);
    }
    if (first_surjective) {
        r.i1_kind = IndexReport::Bound::Exact;
        r.i1 = *first_surjective;
    }
    if (!first_non_injective) {
        r.i2_kind = IndexReport::Bound::AtLeast;
        r.i2 = kmax;
    } else if (*first_non_injective == 0) {
        r.i2_kind = IndexReport::Bound::MinusInfinity;
    } else {
        r.i2 = *first_non_injective - 1;
    }
    return r;
}
inline IndexReport indices(const Multigerm &g, int kmax = -1, int order = -1) {
    return indices(g, stabilization(g), kmax, order);
}

/// Jet-level check of f^* m_0 (TR_e cap P_{i+1}) = TR_e cap P_{i+2},
/// both taken modulo P_{i+3}.
struct ModuleIdentityCheck {
    std::size_t lhs_rank = 0;
    std::size_t rhs_rank = 0;
    bool equal = false;
};

inline ModuleIdentityCheck lemma_identity_check(const Multigerm &g, int i,
                                                const StabilizationResult &s) {
    GermJets w(g, s, i + 3);
    const Echelon &tr = w.tr();
    const Echelon lower = intersect(tr, w.pullback_power(i + 1));
    const Echelon rhs = intersect(tr, w.pullback_power(i + 2));
    Echelon lhs(w.module_dim());
    for (const auto &row : lower.rows())
        for (std::size_t r = 0; r < g.p(); ++r)
            lhs.insert(w.times_pullback(row, r));
    lhs.make_reduced();
    return {lhs.rank(), rhs.rank(), same_span(lhs, rhs)};
}

} // namespace liftvf
