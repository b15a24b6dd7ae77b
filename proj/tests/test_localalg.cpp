#include <catch_amalgamated.hpp>

#include "liftvf/corpus.hpp"
#include "liftvf/localalg.hpp"

#include <random>

using namespace liftvf;

namespace {

using Exps = std::vector<int>;

// Codimension of a monomial ideal, counted inside the box [0, bound]^n.
long monomial_codim(const std::vector<Exps> &gens, std::size_t n, int bound) {
    long count = 0;
    Exps m(n, 0);
    while (true) {
        bool in = false;
        for (const auto &g : gens) {
            bool d = true;
            for (std::size_t k = 0; k < n; ++k)
                d = d && g[k] <= m[k];
            in = in || d;
        }
        count += in ? 0 : 1;
        std::size_t k = 0;
        while (k < n && ++m[k] > bound)
            m[k++] = 0;
        if (k == n)
            return count;
    }
}

// Generators of I^k for I generated by monomials.
std::vector<Exps> power(const std::vector<Exps> &gens, int k, std::size_t n) {
    std::vector<Exps> cur{Exps(n, 0)};
    for (int s = 0; s < k; ++s) {
        std::vector<Exps> next;
        for (const auto &a : cur)
            for (const auto &g : gens) {
                Exps e(n);
                for (std::size_t t = 0; t < n; ++t)
                    e[t] = a[t] + g[t];
                next.push_back(e);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return cur;
}

Multigerm cusp() { return Multigerm::from_strings(1, 2, {{"x1^2", "x1^3"}}, "cusp"); }
Multigerm identity1() { return Multigerm::from_strings(1, 1, {{"x1"}}, "identity"); }

} // namespace

TEST_CASE("graded delta examples", "[localalg]") {
    CHECK(graded_delta(cusp(), 1) == 2);
    CHECK(graded_delta(corpus_entry("ex3.3-n2").germ(), 1) == 4);
    for (const auto &e : corpus())
        CHECK(graded_delta(e.germ(), 0) == e.delta);
}

TEST_CASE("graded gamma examples", "[localalg]") {
    CHECK(graded_gamma(cusp(), 0) == 1);
    CHECK(graded_gamma(corpus_entry("ex3.6").germ(), 2) == 12);
    for (int i = 0; i <= 3; ++i)
        CHECK(graded_gamma(identity1(), i) == 0);
}

TEST_CASE("closed formulas", "[localalg]") {
    CHECK(predicted_graded(corpus_entry("ex3.3-n2").germ(), 1) == GradedInvariants{1, 4, 2});
    CHECK(predicted_graded(corpus_entry("ex3.7").germ(), 2) == GradedInvariants{2, 40, 30});
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        const auto pg = predicted_graded(g, 0);
        CHECK(pg.delta == e.delta);
        CHECK(pg.gamma == e.delta - static_cast<long>(g.branch_count()));
    }
    CHECK_THROWS_AS(predicted_graded(cusp(), -1), InputError);
}

TEST_CASE("TK_e codimension", "[localalg]") {
    CHECK(tke_codim(identity1()) == 0);
    CHECK(tke_codim(cusp()) == 3);
    CHECK(tke_codim(corpus_entry("ex3.3-n2").germ()) == 3);
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        CHECK(tke_codim(g) == predicted_tke_codim(g, stabilization(g)));
    }
}

TEST_CASE("graded delta matches a monomial-ideal oracle", "[localalg][oracle]") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 1 + trial % 2;
        std::vector<Exps> gens;
        std::vector<std::string> comps;
        if (n == 2) {
            gens.push_back({1, 0});
            comps.push_back("x1");
        }
        for (int extra = 0; extra < 2; ++extra) {
            Exps e(n, 0);
            e.back() = 2 + static_cast<int>(rng() % 3);
            if (n == 2 && extra == 1)
                e[0] = 1 + static_cast<int>(rng() % 2);
            gens.push_back(e);
            std::string t;
            for (std::size_t k = 0; k < n; ++k)
                if (e[k])
                    t += (t.empty() ? "" : "*") + std::string("x") + std::to_string(k + 1) + "^" +
                         std::to_string(e[k]);
            comps.push_back(t);
        }
        const auto g = Multigerm::from_strings(n, comps.size(), {comps});
        for (int i = 0; i <= 3; ++i) {
            const long want = monomial_codim(power(gens, i + 1, n), n, 24) -
                              monomial_codim(power(gens, i, n), n, 24);
            INFO("trial " << trial << " level " << i);
            CHECK(graded_delta(g, i) == want);
        }
    }
}

TEST_CASE("closed formulas hold on the corpus for i <= 3", "[localalg][property]") {
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        const auto s = stabilization(g);
        for (int i = 0; i <= 3; ++i) {
            const GermJets w(g, s, i + 1);
            const auto pg = predicted_graded(g, i, s);
            INFO(e.id << " level " << i);
            CHECK(graded_delta(w, i) == pg.delta);
            CHECK(graded_gamma(w, i) == pg.gamma);
        }
        CHECK(graded_gamma(g, 0) == s.delta - static_cast<long>(g.branch_count()));
    }
}

TEST_CASE("explicit jet orders agree with the minimal order", "[localalg]") {
    for (const char *id : {"ex3.1-n2", "ex3.5.2", "ex3.5.3", "E1"}) {
        const auto g = corpus_entry(id).germ();
        const auto s = stabilization(g);
        for (int i = 0; i <= 2; ++i) {
            const int N = minimal_order(s, i + 1);
            CHECK(graded_delta(g, i, N + 1) == graded_delta(g, i));
            CHECK(graded_gamma(g, i, N + 1) == graded_gamma(g, i));
            CHECK(graded_gamma(g, i, N + 3) == graded_gamma(g, i));
        }
    }
}

TEST_CASE("too small jet orders are rejected", "[localalg]") {
    const auto g = cusp();
    CHECK_THROWS_AS(graded_delta(g, 1, 2), TruncationError);
    CHECK_THROWS_AS(graded_gamma(g, 2, 1), TruncationError);
    CHECK_THROWS_AS(tke_codim(g, 0), TruncationError);
}
