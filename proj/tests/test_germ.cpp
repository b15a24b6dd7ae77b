#include <catch_amalgamated.hpp>

#include "liftvf/corpus.hpp"
#include "liftvf/germ.hpp"

#include <numeric>
#include <random>

using namespace liftvf;

namespace {

// delta and l of a monomial ideal by enumeration: a monomial survives when no
// generator divides it.
struct MonomialOracle {
    int delta = 0;
    int ell = 0;
};

MonomialOracle monomial_oracle(std::size_t n, const std::vector<std::vector<int>> &gens, int bound) {
    MonomialOracle o;
    auto divides = [](const std::vector<int> &g, const std::vector<int> &m) {
        for (std::size_t k = 0; k < g.size(); ++k)
            if (g[k] > m[k])
                return false;
        return true;
    };
    std::vector<int> m(n, 0);
    // odometer over the box [0, bound]^n
    while (true) {
        int deg = 0;
        for (int e : m)
            deg += e;
        bool in = false;
        for (const auto &g : gens)
            in = in || divides(g, m);
        if (!in) {
            ++o.delta;
            o.ell = std::max(o.ell, deg + 1);
        }
        std::size_t k = 0;
        while (k < n && ++m[k] > bound)
            m[k++] = 0;
        if (k == n)
            break;
    }
    if (o.delta == 0)
        o.ell = 0;
    return o;
}

std::string monomial_text(const std::vector<int> &e) {
    std::string s;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "x" + std::to_string(k + 1);
        if (e[k] > 1)
            s += "^" + std::to_string(e[k]);
    }
    return s.empty() ? "1" : s;
}

} // namespace

TEST_CASE("load_multigerm accepts the documented schema", "[germ]") {
    const auto cusp = load_multigerm(nlohmann::json::parse(R"({"n":1,"p":2,"branches":[["x1^2","x1^3"]]})"));
    CHECK(cusp.n() == 1);
    CHECK(cusp.p() == 2);
    CHECK(cusp.branch_count() == 1);
    CHECK(cusp.corank() == 1);

    const auto tri = load_multigerm(nlohmann::json::parse(
        R"({"n":1,"p":2,"name":"tri","branches":[{"components":["x1","0"]},["0","x1"],["x1^2","x1^3+x1^4"]]})"));
    CHECK(tri.branch_count() == 3);
    CHECK(tri.name() == "tri");
    CHECK(to_string(tri.branch(2).components[1]) == "x1^3 + x1^4");
}

TEST_CASE("load_multigerm rejects invalid documents", "[germ]") {
    auto load = [](const char *text) { return load_multigerm(nlohmann::json::parse(text)); };
    CHECK_THROWS_AS(load(R"({"n":2,"p":2,"branches":[["x1^2","x2^2"]]})"), InputError);
    CHECK_THROWS_WITH(load(R"({"n":2,"p":2,"branches":[["x1^2","x2^2"]]})"),
                      Catch::Matchers::ContainsSubstring("corank"));
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[["x1+1","x1^3"]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":3,"p":2,"branches":[["x1","x2"]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[["x1"]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"branches":[["x1","0"]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[["x1","y"]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[["x1",3]]})"), InputError);
    CHECK_THROWS_AS(load(R"({"n":1,"p":2,"branches":[["x1","x2"]]})"), InputError);
    CHECK_THROWS_AS(load(R"([1,2])"), InputError);
}

TEST_CASE("corank", "[germ]") {
    CHECK(Multigerm::from_strings(1, 2, {{"x1", "0"}}).corank() == 0);
    CHECK(Multigerm::from_strings(1, 2, {{"x1^2", "x1^3"}}).corank() == 1);
    CHECK(corpus_entry("ex3.3-n2").germ().corank() == 1);
    CHECK(corpus_entry("ex3.7").germ().corank() == 1);
}

TEST_CASE("stabilization on small germs", "[germ]") {
    const auto id = stabilization(Multigerm::from_strings(1, 1, {{"x1"}}));
    CHECK(id.delta == 1);
    CHECK(id.ell == 1);

    const auto cusp = stabilization(Multigerm::from_strings(1, 2, {{"x1^2", "x1^3"}}));
    CHECK(cusp.delta == 2);
    CHECK(cusp.ell == 2);

    const auto bi = stabilization(corpus_entry("ex3.5.2").germ());
    CHECK(bi.delta == 4);
    CHECK(bi.delta_per_branch == std::vector<int>{2, 2});
}

TEST_CASE("stabilization reports infinite delta", "[germ]") {
    // (x1, 0): the ideal (x1) has infinite codimension in two variables
    const auto g = Multigerm::from_strings(2, 2, {{"x1", "x1*x2"}});
    CHECK_THROWS_AS(stabilization(g, 10), InfiniteDeltaError);
    CHECK_THROWS_WITH(stabilization(g, 10), Catch::Matchers::ContainsSubstring("delta possibly infinite"));
    CHECK_THROWS_AS(stabilization(g, 1), InputError);
}

TEST_CASE("stabilization agrees with a monomial-ideal oracle", "[germ][oracle]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        // corank-one monomial germs: one linear coordinate plus monomials
        const std::size_t n = 1 + trial % 2, p = n + 1 + trial % 3;
        std::vector<std::vector<int>> gens;
        std::vector<std::string> comps;
        if (n == 2) {
            gens.push_back({1, 0});
            comps.push_back("x1");
        }
        while (comps.size() < p) {
            std::vector<int> e(n);
            int deg = 0;
            for (auto &x : e) {
                x = static_cast<int>(rng() % 6);
                deg += x;
            }
            if (deg < 2)
                e.back() += 2;
            if (comps.size() == 1 && n == 2)
                e[0] = 0, e[1] = std::max(e[1], 2); // a pure power keeps delta finite
            gens.push_back(e);
            comps.push_back(monomial_text(e));
        }
        const auto g = Multigerm::from_strings(n, p, {comps});
        const auto oracle = monomial_oracle(n, gens, 12);
        const auto s = stabilization(g);
        INFO("germ " << comps.front() << ", " << comps.back());
        CHECK(s.delta == oracle.delta);
        CHECK(s.ell == oracle.ell);
    }
}

TEST_CASE("delta is additive over branches", "[germ]") {
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        const auto s = stabilization(g);
        int sum = 0;
        for (std::size_t j = 0; j < g.branch_count(); ++j) {
            const auto one = stabilization(Multigerm(g.n(), g.p(), {g.branch(j)}));
            CHECK(one.delta == s.delta_per_branch[j]);
            sum += one.delta;
        }
        CHECK(sum == s.delta);
        CHECK(s.delta == e.delta);
    }
}

TEST_CASE("immersive branches have delta 1 and l 1", "[germ]") {
    for (const auto &comps : std::vector<std::vector<std::string>>{
             {"x1", "0"}, {"x1", "x1^2"}, {"x1 + x1^3", "5*x1"}, {"x1", "x2", "x1*x2 + x2^3"}}) {
        const std::size_t n = comps.size() == 3 ? 2 : 1;
        const auto s = stabilization(Multigerm::from_strings(n, comps.size(), {comps}));
        CHECK(s.delta == 1);
        CHECK(s.ell == 1);
    }
}

TEST_CASE("stabilization is invariant under linear source changes", "[germ][property]") {
    std::mt19937 rng(11);
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        if (g.n() < 2)
            continue;
        const auto base = stabilization(g);
        for (int trial = 0; trial < 3; ++trial) {
            // random unimodular upper-triangular times a permutation
            const std::size_t n = g.n();
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Polynomial> images;
            for (std::size_t r = 0; r < n; ++r) {
                Polynomial v = Polynomial::variable(g.source(), perm[r]);
                for (std::size_t c = r + 1; c < n; ++c)
                    v += Polynomial::variable(g.source(), perm[c]) *
                         Rational(static_cast<long>(rng() % 5) - 2);
                images.push_back(v);
            }
            std::vector<Branch> bs;
            for (const auto &b : g.branches()) {
                Branch nb{b.label, {}};
                for (const auto &c : b.components)
                    nb.components.push_back(compose(c, images, kNoTruncation));
                bs.push_back(std::move(nb));
            }
            const auto s = stabilization(Multigerm(g.n(), g.p(), bs));
            CHECK(s.delta == base.delta);
            CHECK(s.ell == base.ell);
        }
    }
}

TEST_CASE("germ JSON round trip", "[germ]") {
    const auto g = corpus_entry("ex3.5.3").germ();
    const auto back = load_multigerm(g.to_json());
    REQUIRE(back.branch_count() == g.branch_count());
    for (std::size_t j = 0; j < g.branch_count(); ++j)
        CHECK(back.branch(j).components == g.branch(j).components);
}
