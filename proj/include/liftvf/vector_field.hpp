#pragma once

#include "liftvf/parser.hpp"
#include "liftvf/polynomial.hpp"

#include <string>
#include <vector>

namespace liftvf {

/// sum_q components[q] d/dX_q, coefficients in X1..Xp.
struct TargetVectorField {
    std::vector<Polynomial> components;

    std::size_t p() const { return components.size(); }
    bool operator==(const TargetVectorField &) const = default;

    static TargetVectorField parse(const std::vector<std::string> &texts, const RingPtr &target) {
        TargetVectorField xi;
        for (const auto &t : texts)
            xi.components.push_back(parse_poly(t, target));
        return xi;
    }

    /// Lowest total degree among the components (kNoTruncation for zero).
    int order() const {
        int o = kNoTruncation;
        for (const auto &c : components)
            o = std::min(o, c.order());
        return o;
    }

    /// Homogeneous part of degree d.
    TargetVectorField homogeneous_part(int d) const {
        TargetVectorField out;
        for (const auto &c : components) {
            Polynomial h(c.ring());
            for (const auto &[m, v] : c.terms())
                if (m.degree() == d)
                    h.add_term(m, v);
            out.components.push_back(std::move(h));
        }
        return out;
    }

    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (const auto &c : components)
            out.push_back(to_string(c));
        return out;
    }
};

inline std::string to_string(const TargetVectorField &xi) {
    std::string s = "(";
    for (std::size_t q = 0; q < xi.components.size(); ++q) {
        if (q)
            s += ", ";
        s += to_string(xi.components[q]);
    }
    return s + ")";
}

} // namespace liftvf
