#pragma once

// Liftable vector fields: the minimal generator count at a bijective level,
// explicit generators with lifting witnesses, jet-level liftability tests
// and comparison of module spans.

#include "liftvf/germ.hpp"
#include "liftvf/jet_subspace.hpp"
#include "liftvf/ksm.hpp"
#include "liftvf/vector_field.hpp"
#include "liftvf/workspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liftvf {

/// eta_j with xi o f_j - df_j(eta_j) vanishing up to degree `order`.
struct LiftWitness {
    std::vector<std::vector<Polynomial>> eta; ///< per branch, n polynomials in x1..xn
    int order = 0;
    bool exact = false;                       ///< residual is the zero polynomial
    std::optional<int> residual_order;        ///< lowest degree of a nonzero residual
};

struct LiftCheck {
    bool ok = false;
    std::optional<std::size_t> failing_branch;
    LiftWitness witness;
};

namespace detail {

/// Exact residual xi o f_j - df_j(eta).
inline std::vector<Polynomial> lift_residual(const Branch &b, const TargetVectorField &xi,
                                             const std::vector<Polynomial> &eta) {
    std::vector<Polynomial> r;
    for (std::size_t q = 0; q < xi.p(); ++q) {
        Polynomial v = compose(xi.components[q], b.components, kNoTruncation);
        for (std::size_t k = 0; k < eta.size(); ++k)
            v -= b.components[q].partial(k) * eta[k];
        r.push_back(std::move(v));
    }
    return r;
}

} // namespace detail

/// Solves tf_j(eta_j) = xi o f_j modulo degree > N on every branch.
inline LiftCheck verify_liftable(const Multigerm &g, const TargetVectorField &xi, int N) {
    if (xi.p() != g.p())
        throw RingError("vector field has " + std::to_string(xi.p()) + " components, expected " +
                        std::to_string(g.p()));
    for (const auto &c : xi.components)
        if (!(*c.ring() == *g.target()))
            throw RingError("vector field components must use variables X1..Xp");
    if (N < 0)
        throw TruncationError("jet order must be non-negative");
    const MonomialBasis basis(g.n(), N);
    const std::size_t n = g.n(), p = g.p(), M = basis.size();
    LiftCheck out;
    out.ok = true;
    out.witness.order = N;
    out.witness.exact = true;
    for (std::size_t j = 0; j < g.branch_count(); ++j) {
        const Branch &b = g.branch(j);
        std::vector<SparseVec> partials; // column (dF/dx_k), blocks q
        for (std::size_t k = 0; k < n; ++k) {
            SparseVec v;
            for (std::size_t q = 0; q < p; ++q) {
                const auto part = jet_of(b.components[q].partial(k), basis, static_cast<std::uint32_t>(q));
                v.insert(v.end(), part.begin(), part.end());
            }
            partials.push_back(std::move(v));
        }
        Echelon tr(p * M, true);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t k = 0; k < n; ++k)
                tr.insert(multiply_jet(partials[k], {{static_cast<std::uint32_t>(m), Rational(1)}}, basis));
        SparseVec target;
        for (std::size_t q = 0; q < p; ++q) {
            const auto part = jet_of(compose(xi.components[q], b.components, N), basis,
                                     static_cast<std::uint32_t>(q));
            target.insert(target.end(), part.begin(), part.end());
        }
        const auto combo = tr.express(target);
        std::vector<Polynomial> eta(n, Polynomial(g.source()));
        if (!combo) {
            if (out.ok)
                out.failing_branch = j;
            out.ok = false;
            out.witness.exact = false;
        } else {
            for (const auto &e : *combo)
                eta[e.col % n].add_term(basis.monomial(e.col / n), e.val);
            const auto res = detail::lift_residual(b, xi, eta);
            for (const auto &r : res)
                if (!r.is_zero()) {
                    out.witness.exact = false;
                    const int o = r.order();
                    if (!out.witness.residual_order || o < *out.witness.residual_order)
                        out.witness.residual_order = o;
                }
        }
        out.witness.eta.push_back(std::move(eta));
    }
    return out;
}

struct MinGenerators {
    int level = 0;         ///< i with omega_i bijective
    long direct = 0;       ///< dim ker omega_{i+1}
    long predicted = 0;    ///< kernel formula at level i
    long value() const { return direct; }
};

/// The bijective level of an index report, or a hypothesis error.
inline int require_bijective_level(const IndexReport &r) {
    if (auto b = r.bijective_level())
        return *b;
    std::string why = "no level i <= " + std::to_string(r.kmax) + " with omega_i bijective";
    if (r.i2_kind == IndexReport::Bound::MinusInfinity)
        why += " (omega_0 is not injective)";
    else if (r.i1_found() && r.i2_finite())
        why += " (i1 = " + std::to_string(r.i1) + ", i2 = " + std::to_string(r.i2) + ")";
    throw HypothesisError("minimal generator hypothesis not met: " + why);
}

inline MinGenerators min_generators(const Multigerm &g, const StabilizationResult &s,
                                    const IndexReport &r) {
    const int i = require_bijective_level(r);
    const OmegaMap *next = r.map(i + 1);
    const OmegaMap local = next ? OmegaMap{} : omega_map(g, i + 1, s);
    if (!next)
        next = &local;
    MinGenerators m{i, static_cast<long>(next->kernel_dim()), predicted_kernel_dim(g, i, s, *next)};
    if (m.direct != m.predicted)
        throw Error("kernel dimension " + std::to_string(m.direct) +
                    " disagrees with the formula value " + std::to_string(m.predicted));
    return m;
}
inline MinGenerators min_generators(const Multigerm &g, int kmax = -1) {
    const auto s = stabilization(g);
    return min_generators(g, s, indices(g, s, kmax));
}

struct GeneratorSet {
    int level = 0;
    long rho = 0;
    int order = 0;   ///< source jet order N of the witnesses
    int degree = 0;  ///< largest target degree allowed in a correction
    std::vector<TargetVectorField> generators;
    std::vector<LiftWitness> witnesses;
};

/// Default source jet order for generators at bijective level i: large
/// enough that the span check at target degree i + 3 is exact.
inline int default_generator_order(const StabilizationResult &s, int level) {
    return (level + 4) * s.ell - 1;
}

/// For each kernel basis element xi of omega_{i+1}, finds a correction xi'
/// of target degrees i+2..D with (xi + xi') o f in TR_e(f) modulo source
/// degree > N + 2. Corrections are searched degree by degree and the first
/// degree admitting a solution is used; within it the solution only uses
/// columns up to the first one that completes the span.
inline GeneratorSet construct_generators(const Multigerm &g, const StabilizationResult &s,
                                         const IndexReport &r, int D = -1, int N = -1) {
    const int i = require_bijective_level(r);
    if (N < 0)
        N = default_generator_order(s, i);
    if (D < 0)
        D = N;
    if (D < i + 2)
        throw InputError("correction degree must be at least " + std::to_string(i + 2));
    const int solve_order = N + 2;

    const OmegaMap *next = r.map(i + 1);
    const OmegaMap local = next ? OmegaMap{} : omega_map(g, i + 1, s);
    if (!next)
        next = &local;
    const OmegaKernel ker = omega_kernel(g, *next);

    const JetSubspace tr = tr_e_jets(g, solve_order);
    const MonomialBasis &basis = tr.basis();
    const std::size_t p = g.p();
    std::vector<std::vector<SparseVec>> comps(g.branch_count());
    for (std::size_t j = 0; j < g.branch_count(); ++j)
        for (const auto &c : g.branch(j).components)
            comps[j].push_back(jet_of(c, basis));

    auto field_jet = [&](const TargetVectorField &xi) {
        SparseVec v;
        for (std::size_t j = 0; j < g.branch_count(); ++j)
            for (std::size_t q = 0; q < p; ++q) {
                const auto part = jet_of(compose(xi.components[q], g.branch(j).components, solve_order),
                                         basis, static_cast<std::uint32_t>(j * p + q));
                v.insert(v.end(), part.begin(), part.end());
            }
        return tr.echelon().normal_form(v);
    };

    std::vector<std::optional<TargetVectorField>> corrections(ker.basis.size());
    std::vector<SparseVec> targets;
    for (const auto &xi : ker.basis)
        targets.push_back(scaled(field_jet(xi), -1));

    Echelon cols(tr.ambient_dim(), true);
    std::vector<std::pair<Monomial, std::size_t>> col_index; // (X^beta, q)
    std::size_t pending = ker.basis.size();
    for (int d = i + 2; d <= D && pending > 0; ++d) {
        std::vector<std::vector<SparseVec>> pulls;
        for (std::size_t j = 0; j < g.branch_count(); ++j)
            pulls.push_back(pullback_monomial_jets(comps[j], d, basis));
        const auto mons = target_monomials(p, d);
        for (std::size_t a = 0; a < mons.size(); ++a)
            for (std::size_t q = 0; q < p; ++q) {
                SparseVec v;
                for (std::size_t j = 0; j < g.branch_count(); ++j)
                    for (const auto &e : pulls[j][a])
                        v.push_back({static_cast<std::uint32_t>((j * p + q) * basis.size() + e.col), e.val});
                cols.insert(tr.echelon().normal_form(v));
                col_index.emplace_back(mons[a], q);
            }
        for (std::size_t k = 0; k < ker.basis.size(); ++k) {
            if (corrections[k])
                continue;
            if (auto combo = cols.express(targets[k])) {
                TargetVectorField fix;
                for (std::size_t q = 0; q < p; ++q)
                    fix.components.emplace_back(g.target());
                for (const auto &e : *combo)
                    fix.components[col_index[e.col].second].add_term(col_index[e.col].first, e.val);
                corrections[k] = std::move(fix);
                --pending;
            }
        }
    }
    if (pending > 0)
        throw HypothesisError("correction system inconsistent at degree " + std::to_string(D) +
                              " and jet order " + std::to_string(N) + "; raise both");

    GeneratorSet out;
    out.level = i;
    out.rho = static_cast<long>(ker.dim);
    out.order = N;
    out.degree = D;
    for (std::size_t k = 0; k < ker.basis.size(); ++k) {
        TargetVectorField gen = ker.basis[k];
        for (std::size_t q = 0; q < p; ++q)
            gen.components[q] += corrections[k]->components[q];
        LiftCheck check = verify_liftable(g, gen, N);
        if (!check.ok)
            throw Error("constructed field failed its own liftability check");
        out.generators.push_back(std::move(gen));
        out.witnesses.push_back(std::move(check.witness));
    }
    return out;
}
inline GeneratorSet construct_generators(const Multigerm &g, int D = -1, int N = -1) {
    const auto s = stabilization(g);
    return construct_generators(g, s, indices(g, s), D, N);
}

/// Comparison at target degree D of
///   L_D = { xi of degree <= D : xi o f in TR_e(f) + P_{D+1} }
/// with the C_0-span of the given fields truncated at degree D.
struct SpanCheck {
    int degree = 0;
    std::size_t liftable_dim = 0;
    std::size_t span_dim = 0;
    bool contained = false; ///< span inside L_D
    bool equal = false;
};

/// L_D with a basis over coordinates (monomial rank in p variables up to D) * p + q.
class LiftableJets {
  public:
    LiftableJets(const Multigerm &g, const StabilizationResult &s, int D)
        : degree_(D), p_(g.p()), targets_(g.p(), std::max(D, 0)), basis_(0) {
        if (D < 0)
            throw TruncationError("target degree must be non-negative");
        GermJets w(g, s, D + 1);
        const Echelon &tr = w.tr();
        Echelon image(w.module_dim(), true);
        for (int d = 0; d <= D; ++d)
            for (auto &v : w.omega_images(d)) {
                tr.reduce(v);
                image.insert(std::move(v));
            }
        basis_ = Echelon(targets_.size() * p_);
        for (const auto &dep : image.dependencies())
            basis_.insert(dep);
        basis_.make_reduced();
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return basis_.rank(); }
    const Echelon &basis() const { return basis_; }

    /// Coordinates of a field truncated at degree D.
    SparseVec coordinates(const TargetVectorField &xi) const {
        if (xi.p() != p_)
            throw RingError("vector field has the wrong number of components");
        SparseVec v;
        for (std::size_t q = 0; q < p_; ++q)
            for (const auto &[m, c] : xi.components[q].terms()) {
                const std::size_t idx = targets_.rank(m);
                if (idx != MonomialBasis::npos)
                    v.push_back({static_cast<std::uint32_t>(idx * p_ + q), c});
            }
        canonicalize(v);
        return v;
    }

    /// Compares L_D with the C_0-span of the fields truncated at degree D.
    SpanCheck check(const std::vector<TargetVectorField> &fields) const {
        Echelon span(targets_.size() * p_);
        for (const auto &xi : fields) {
            if (xi.p() != p_)
                throw RingError("vector field has the wrong number of components");
            for (std::size_t b = 0; b < targets_.size(); ++b) {
                const Monomial beta = targets_.monomial(b);
                SparseVec v;
                for (std::size_t q = 0; q < p_; ++q)
                    for (const auto &[m, c] : xi.components[q].terms()) {
                        const std::size_t idx = targets_.rank(m * beta);
                        if (idx != MonomialBasis::npos)
                            v.push_back({static_cast<std::uint32_t>(idx * p_ + q), c});
                    }
                canonicalize(v);
                span.insert(std::move(v));
            }
        }
        SpanCheck out;
        out.degree = degree_;
        out.liftable_dim = basis_.rank();
        out.span_dim = span.rank();
        out.contained = true;
        for (const auto &row : span.rows())
            if (!basis_.contains(row)) {
                out.contained = false;
                break;
            }
        out.equal = out.contained && out.span_dim == out.liftable_dim;
        return out;
    }

  private:
    int degree_;
    std::size_t p_;
    MonomialBasis targets_;
    Echelon basis_;
};

inline SpanCheck span_check(const Multigerm &g, const StabilizationResult &s,
                            const std::vector<TargetVectorField> &fields, int D) {
    return LiftableJets(g, s, D).check(fields);
}
inline SpanCheck span_check(const Multigerm &g, const GeneratorSet &set, int D = -1) {
    const auto s = stabilization(g);
    if (D < 0)
        D = set.level + 3;
    if (set.order + 1 < (D + 1) * s.ell)
        throw TruncationError("generators were built at jet order " + std::to_string(set.order) +
                              ", too small for target degree " + std::to_string(D));
    return span_check(g, s, set.generators, D);
}

} // namespace liftvf
