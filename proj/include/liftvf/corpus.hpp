#pragma once

// Built-in example germs with their expected invariants, and the worked
// generator sets used as golden fixtures.

#include "liftvf/germ.hpp"
#include "liftvf/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liftvf {

struct CorpusEntry {
    std::string id;
    std::string description;
    std::size_t n = 0, p = 0;
    std::vector<std::vector<std::string>> branches;
    long delta = 0;
    long gamma = 0;
    int i1 = 0;
    std::optional<int> i2;               ///< nullopt stands for minus infinity
    std::optional<long> min_generators;  ///< nullopt: no bijective level expected

    Multigerm germ() const { return Multigerm::from_strings(n, p, branches, id); }
};

/// E_l as l + 2 lines through the origin with slopes 0..l plus the vertical.
inline std::vector<std::vector<std::string>> rational_lines(int l) {
    std::vector<std::vector<std::string>> b;
    for (int k = 0; k <= l; ++k)
        b.push_back({"x1", k == 0 ? "0" : std::to_string(k) + "*x1"});
    b.push_back({"0", "x1"});
    return b;
}

inline const std::vector<CorpusEntry> &corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> c;
        c.push_back({"ex3.1-n2", "(x, y^3 + x y)", 2, 2, {{"x1", "x2^3 + x1*x2"}}, 3, 2, 0, 0, 2});
        c.push_back({"ex3.1-n3", "(x1, x2, y^4 + x1 y + x2 y^2)", 3, 3,
                     {{"x1", "x2", "x3^4 + x1*x3 + x2*x3^2"}}, 4, 3, 0, 0, 3});
        c.push_back({"ex3.2-k2", "(v, y^2, v y)", 2, 3, {{"x1", "x2^2", "x1*x2"}}, 2, 1, 0, 0, 4});
        c.push_back({"ex3.2-k3", "(u, v1, v2, y^3 + u y, v1 y + v2 y^2)", 4, 5,
                     {{"x1", "x2", "x3", "x4^3 + x1*x4", "x2*x4 + x3*x4^2"}}, 3, 2, 0, 0, 7});
        c.push_back({"ex3.3-n2", "(v, y^2, v y)", 2, 3, {{"x1", "x2^2", "x1*x2"}}, 2, 1, 0, 0, 4});
        c.push_back({"ex3.3-n3", "(v1, v2, y^2, v1 y, v2 y)", 3, 5,
                     {{"x1", "x2", "x3^2", "x1*x3", "x2*x3"}}, 2, 1, 0, 0, 11});
        c.push_back({"ex3.5.1", "x -> (x^4, x^5 + x^7)", 1, 2, {{"x1^4", "x1^5 + x1^7"}}, 4, 3, 1, 1, 2});
        c.push_back({"ex3.5.2", "{(x^2, x^3), (x^3, x^2)}", 1, 2,
                     {{"x1^2", "x1^3"}, {"x1^3", "x1^2"}}, 4, 2, 1, 1, 2});
        c.push_back({"ex3.5.3", "{(x, 0), (0, x), (x^2, x^3 + x^4)}", 1, 2,
                     {{"x1", "0"}, {"0", "x1"}, {"x1^2", "x1^3 + x1^4"}}, 4, 1, 1, 1, 2});
        c.push_back({"ex3.6", "(x, x y + y^5 + y^7)", 2, 2, {{"x1", "x1*x2 + x2^5 + x2^7"}}, 5, 4, 1, 1, 2});
        c.push_back({"ex3.7", "(x1, x2, x3, y^4 + x1 y, y^6 + y^7 + x2 y + x3 y^2)", 4, 5,
                     {{"x1", "x2", "x3", "x4^4 + x1*x4", "x4^6 + x4^7 + x2*x4 + x3*x4^2"}}, 4, 3, 1, 1,
                     17});
        c.push_back({"embedding", "x -> (x, 0)", 1, 2, {{"x1", "0"}}, 1, 0, 0, std::nullopt, std::nullopt});
        for (int l = 0; l <= 2; ++l)
            c.push_back({"E" + std::to_string(l),
                         std::to_string(l + 2) + " lines with rational slopes", 1, 2,
                         rational_lines(l), l + 2, 0, l, 0,
                         l == 0 ? std::optional<long>(2) : std::nullopt});
        return c;
    }();
    return entries;
}

inline const CorpusEntry &corpus_entry(const std::string &id) {
    for (const auto &e : corpus())
        if (e.id == id)
            return e;
    throw InputError("unknown corpus entry '" + id + "'");
}

/// A germ together with a known generating set of its liftable fields.
struct GeneratorFixture {
    std::string germ_id;
    std::vector<std::vector<std::string>> fields; ///< components in X1..Xp
    bool exact = false; ///< every field lifts exactly as a polynomial
    int order = 0;      ///< smallest jet order at which the fields are checked
};

inline const std::vector<GeneratorFixture> &generator_fixtures() {
    static const std::vector<GeneratorFixture> f = {
        // (X1, X2, X3) = (V, W, X) for (v, y^2, v y)
        {"ex3.3-n2",
         {{"X1", "0", "X3"}, {"X3", "0", "X1*X2"}, {"0", "2*X3", "X1^2"}, {"0", "2*X2", "X3"}},
         true},
        {"ex3.5.2",
         {{"6*X1*X2 - 6*X1^2*X2^2", "4*X2^2 + 5*X1^3 - 9*X1*X2^3"},
          {"4*X1^2 + 5*X2^3 - 9*X1^3*X2", "6*X1*X2 - 6*X1^2*X2^2"}},
         true,
         12},
        {"E0", {{"X1", "0"}, {"0", "X2"}}, true},
    };
    return f;
}

} // namespace liftvf
