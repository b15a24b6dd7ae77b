#pragma once

// Multigerm data model: validation, corank and detection of the order l with
// m_S^l contained in the pullback ideal f^* m_0 C_S.

#include "liftvf/error.hpp"
#include "liftvf/jetspace.hpp"
#include "liftvf/parser.hpp"
#include "liftvf/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace liftvf {

/// One branch f_j, stored in a chart centred at its base point.
struct Branch {
    std::string label;
    std::vector<Polynomial> components; // p polynomials in x1..xn
};

class Multigerm {
  public:
    /// Validates shapes, origin conditions, n <= p and corank <= 1.
    Multigerm(std::size_t n, std::size_t p, std::vector<Branch> branches, std::string name = {})
        : n_(n), p_(p), branches_(std::move(branches)), name_(std::move(name)),
          source_(source_ring(n)), target_(target_ring(p)) {
        validate_shape();
        if (corank() > 1)
            throw InputError("corank > 1 is not supported");
    }

    /// Builds a germ from component strings, one list per branch.
    static Multigerm from_strings(std::size_t n, std::size_t p,
                                  const std::vector<std::vector<std::string>> &branches,
                                  std::string name = {}) {
        if (n == 0 || p == 0)
            throw InputError("dimensions must be positive");
        const RingPtr src = source_ring(n);
        std::vector<Branch> bs;
        for (std::size_t j = 0; j < branches.size(); ++j) {
            Branch b;
            b.label = "s" + std::to_string(j + 1);
            for (const auto &text : branches[j]) {
                try {
                    b.components.push_back(parse_poly(text, src));
                } catch (const ParseError &e) {
                    throw InputError("branch " + std::to_string(j + 1) + ": " + e.what());
                }
            }
            bs.push_back(std::move(b));
        }
        return Multigerm(n, p, std::move(bs), std::move(name));
    }

    std::size_t n() const { return n_; }
    std::size_t p() const { return p_; }
    std::size_t branch_count() const { return branches_.size(); }
    const std::vector<Branch> &branches() const { return branches_; }
    const Branch &branch(std::size_t j) const { return branches_.at(j); }
    const std::string &name() const { return name_; }
    const RingPtr &source() const { return source_; }
    const RingPtr &target() const { return target_; }

    /// max_j (n - rank Jf(s_j)).
    std::size_t corank() const {
        std::size_t worst = 0;
        for (const auto &b : branches_)
            worst = std::max(worst, n_ - jacobian_rank_at_origin(b));
        return worst;
    }

    nlohmann::json to_json() const {
        nlohmann::json bs = nlohmann::json::array();
        for (const auto &b : branches_) {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto &c : b.components)
                comps.push_back(to_string(c));
            bs.push_back({{"components", comps}});
        }
        nlohmann::json j{{"n", n_}, {"p", p_}, {"branches", bs}};
        if (!name_.empty())
            j["name"] = name_;
        return j;
    }

  private:
    void validate_shape() const {
        if (n_ == 0 || p_ == 0)
            throw InputError("dimensions must be positive");
        if (n_ > p_)
            throw InputError("n > p is not supported (need n <= p)");
        if (branches_.empty())
            throw InputError("a multigerm needs at least one branch");
        for (std::size_t j = 0; j < branches_.size(); ++j) {
            const auto &b = branches_[j];
            if (b.components.size() != p_)
                throw InputError("branch " + std::to_string(j + 1) + " has " +
                                 std::to_string(b.components.size()) + " components, expected " +
                                 std::to_string(p_));
            for (const auto &c : b.components) {
                if (!(*c.ring() == *source_))
                    throw InputError("branch components must use variables x1..xn");
                if (c.constant_term() != 0)
                    throw InputError("branch " + std::to_string(j + 1) +
                                     ": component with nonzero constant term " + to_string(c));
            }
        }
    }

    std::size_t jacobian_rank_at_origin(const Branch &b) const {
        Echelon e(n_);
        for (const auto &c : b.components) {
            SparseVec row;
            for (std::size_t k = 0; k < n_; ++k) {
                Rational d = c.coefficient(Monomial::unit(n_, k));
                if (d != 0)
                    row.push_back({static_cast<std::uint32_t>(k), d});
            }
            e.insert(std::move(row));
        }
        return e.rank();
    }

    std::size_t n_, p_;
    std::vector<Branch> branches_;
    std::string name_;
    RingPtr source_, target_;
};

/// Reads the germ document
///   { "n": int, "p": int, "branches": [ { "components": [...] } | [...], ... ] }
inline Multigerm load_multigerm(const nlohmann::json &doc) {
    if (!doc.is_object())
        throw InputError("germ document must be a JSON object");
    for (const char *key : {"n", "p", "branches"})
        if (!doc.contains(key))
            throw InputError(std::string("germ document is missing \"") + key + "\"");
    if (!doc["n"].is_number_integer() || !doc["p"].is_number_integer() ||
        doc["n"].get<long>() <= 0 || doc["p"].get<long>() <= 0)
        throw InputError("\"n\" and \"p\" must be positive integers");
    if (!doc["branches"].is_array())
        throw InputError("\"branches\" must be an array");
    std::vector<std::vector<std::string>> comps;
    for (const auto &b : doc["branches"]) {
        const nlohmann::json *list = &b;
        if (b.is_object()) {
            if (!b.contains("components"))
                throw InputError("branch object needs \"components\"");
            list = &b["components"];
        }
        if (!list->is_array())
            throw InputError("branch components must be an array of strings");
        std::vector<std::string> cs;
        for (const auto &c : *list) {
            if (!c.is_string())
                throw InputError("branch components must be strings");
            cs.push_back(c.get<std::string>());
        }
        comps.push_back(std::move(cs));
    }
    std::string name = doc.value("name", std::string{});
    return Multigerm::from_strings(doc["n"].get<std::size_t>(), doc["p"].get<std::size_t>(), comps,
                                   std::move(name));
}

struct StabilizationResult {
    int ell = 0;                      ///< max over branches
    std::vector<int> ell_per_branch;  ///< m^{l_j} inside f_j^* m_0 C
    std::vector<int> delta_per_branch;
    int delta = 0;
};

/// Codimension of the pullback ideal jets of branch j at order `order`.
inline int pullback_ideal_codim(const Multigerm &g, std::size_t j, int order) {
    const MonomialBasis basis(g.n(), order);
    std::vector<SparseVec> gens;
    for (const auto &c : g.branch(j).components)
        gens.push_back(jet_of(c, basis));
    const Echelon e = ideal_jets(gens, basis);
    return static_cast<int>(basis.size() - e.rank());
}

/// Per branch, finds the least N with d_N = d_{N+1}, where d_N is the
/// codimension of the ideal jets at order N; then m^{N+1} lies in the ideal
/// (Nakayama), delta_j = d_N and l_j = N + 1.
inline StabilizationResult stabilization(const Multigerm &g, int max_order = 40) {
    if (max_order < 2)
        throw InputError("stabilization bound must be at least 2");
    StabilizationResult r;
    for (std::size_t j = 0; j < g.branch_count(); ++j) {
        int prev = pullback_ideal_codim(g, j, 0);
        bool found = false;
        for (int N = 0; N < max_order; ++N) {
            const int next = pullback_ideal_codim(g, j, N + 1);
            if (next == prev) {
                r.ell_per_branch.push_back(N + 1);
                r.delta_per_branch.push_back(prev);
                found = true;
                break;
            }
            prev = next;
        }
        if (!found)
            throw InfiniteDeltaError("delta possibly infinite: branch " + std::to_string(j + 1) +
                                     " did not stabilize by order " + std::to_string(max_order));
    }
    r.ell = *std::max_element(r.ell_per_branch.begin(), r.ell_per_branch.end());
    for (int d : r.delta_per_branch)
        r.delta += d;
    return r;
}

} // namespace liftvf
