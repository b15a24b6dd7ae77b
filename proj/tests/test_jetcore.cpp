#include "liftvf/jetspace.hpp"
#include "liftvf/parser.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace liftvf;

namespace {

const RingPtr xy = Ring::numbered("source", "x", 2);
const RingPtr XY = target_ring(2);

Polynomial P(const std::string &s, const RingPtr &r = xy) { return parse_poly(s, r); }

Polynomial random_poly(std::mt19937 &rng, const RingPtr &r, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 3), deg(0, max_deg);
    Polynomial p(r);
    for (int t = 0; t < terms; ++t) {
        Monomial m(r->nvars());
        int budget = deg(rng);
        for (std::size_t v = 0; v + 1 < r->nvars(); ++v) {
            std::uniform_int_distribution<int> e(0, budget);
            m[v] = static_cast<Exponent>(e(rng));
            budget -= m[v];
        }
        m[r->nvars() - 1] = static_cast<Exponent>(budget);
        Rational c(coef(rng), den(rng));
        c.canonicalize();
        p.add_term(m, c);
    }
    return p;
}

} // namespace

TEST_CASE("parse examples", "[parse]") {
    const Polynomial p = P("x1^2 - 3/2*x1*x2");
    CHECK(p.size() == 2);
    CHECK(p.coefficient(Monomial({2, 0})) == 1);
    CHECK(p.coefficient(Monomial({1, 1})) == Rational(-3, 2));
    CHECK(P("0").is_zero());
    CHECK(P("x1*(x1 + 1) - x1") == P("x1^2"));
    CHECK(P("-(x1 - x2)^2") == P("-x1^2 + 2*x1*x2 - x2^2"));
    CHECK(P("6/4*x1") == P("3/2*x1"));
    CHECK(P("x1/2") == P("1/2*x1"));
    CHECK(P("2^3") == P("8"));
}

TEST_CASE("parse errors carry positions", "[parse]") {
    try {
        P("x1 + y");
        FAIL("unknown variable accepted");
    } catch (const ParseError &e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(P("2x1"), ParseError);
    CHECK_THROWS_AS(P("x1 x2"), ParseError);
    CHECK_THROWS_AS(P("(x1 + 1"), ParseError);
    CHECK_THROWS_AS(P("x1^-1"), ParseError);
    CHECK_THROWS_AS(P("x1/x2"), ParseError);
    CHECK_THROWS_AS(P("x1/0"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("x1 +"), ParseError);
}

TEST_CASE("canonical printing", "[print]") {
    CHECK(to_string(P("-9*X1*X2^3 + 5*X1^3 + 4*X2^2", XY)) == "4*X2^2 + 5*X1^3 - 9*X1*X2^3");
    CHECK(to_string(P("x2 + x1")) == "x1 + x2");
    CHECK(to_string(P("-x1 + 1")) == "1 - x1");
    CHECK(to_string(P("3/2*x1")) == "3/2*x1");
    CHECK(to_string(P("0")) == "0");
    CHECK(to_string(P("-1")) == "-1");
}

TEST_CASE("arithmetic", "[arith]") {
    const RingPtr r = Ring::numbered("s", "x", 1);
    CHECK((P("x1^2", r) + P("-x1^2", r)).is_zero());
    CHECK(P("x1 + x2") * P("x1 - x2") == P("x1^2 - x2^2"));
    CHECK(P("3*x1") * Rational(2, 3) == P("2*x1"));
    CHECK_THROWS_AS(P("x1") + P("X1", XY), RingError);
}

TEST_CASE("truncate", "[truncate]") {
    const RingPtr r = Ring::numbered("s", "x", 1);
    CHECK(P("x1^5 + x1^3", r).truncate(4) == P("x1^3", r));
    CHECK(P("x1^2 + x1", r).truncate(7) == P("x1^2 + x1", r));
    CHECK(P("1 + x1", r).truncate(0) == P("1", r));
}

TEST_CASE("compose", "[compose]") {
    const RingPtr x = source_ring(1);
    const std::vector<Polynomial> cusp{P("x1^2", x), P("x1^3", x)};
    CHECK(compose(P("X2", XY), cusp, 10) == P("x1^3", x));
    CHECK(compose(P("X1*X2", XY), cusp, 10) == P("x1^5", x));
    CHECK(compose(P("X1*X2", XY), cusp, 4).is_zero());
    CHECK_THROWS_AS(compose(P("X1", XY), {P("1 + x1", x), P("x1", x)}, 3), InputError);
    CHECK_THROWS_AS(compose(P("X1", XY), {P("x1", x)}, 3), RingError);
}

TEST_CASE("partial", "[partial]") {
    CHECK(P("x2^3 + x1*x2").partial(1) == P("3*x2^2 + x1"));
    CHECK(P("7").partial(0).is_zero());
    CHECK(P("x1^2*x2").partial(0) == P("2*x1*x2"));
    CHECK_THROWS_AS(P("x1").partial(2), RingError);
}

TEST_CASE("monomial basis ranks", "[basis]") {
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        const MonomialBasis b(n, 6);
        CHECK(b.size() == static_cast<std::size_t>(binomial(6 + static_cast<std::int64_t>(n),
                                                             static_cast<std::int64_t>(n))));
        for (std::size_t i = 0; i < b.size(); ++i) {
            REQUIRE(b.rank(b.at(i)) == i);
            if (i > 0)
                CHECK(GrlexLess{}(b.monomial(i - 1), b.monomial(i)));
        }
        Monomial high(n);
        high[0] = 7;
        CHECK(b.rank(high) == MonomialBasis::npos);
    }
}

TEST_CASE("algebraic identities on random polynomials", "[property]") {
    std::mt19937 rng(20240611);
    const RingPtr r3 = source_ring(3);
    const RingPtr T3 = target_ring(3);
    for (int trial = 0; trial < 60; ++trial) {
        const Polynomial a = random_poly(rng, r3, 5, 6), b = random_poly(rng, r3, 5, 6);
        const int N = trial % 8;
        // truncation commutes with multiplication
        CHECK((a * b).truncate(N) == Polynomial::multiply(a.truncate(N), b.truncate(N), N));
        // Leibniz rule
        for (std::size_t v = 0; v < 3; ++v)
            CHECK((a * b).partial(v) == a.partial(v) * b + a * b.partial(v));
        // print/parse round trip
        CHECK(parse_poly(to_string(a), r3) == a);
        CHECK(to_string(parse_poly(to_string(a), r3)) == to_string(a));
        // composition is a ring homomorphism at fixed order
        std::vector<Polynomial> images;
        for (int q = 0; q < 3; ++q) {
            Polynomial c = random_poly(rng, r3, 3, 3);
            c.add_term(Monomial(3), -c.constant_term());
            images.push_back(c);
        }
        const Polynomial u = random_poly(rng, T3, 3, 4), w = random_poly(rng, T3, 3, 4);
        CHECK(compose(u * w, images, N) ==
              Polynomial::multiply(compose(u, images, N), compose(w, images, N), N));
        CHECK(compose(u + w, images, N) == compose(u, images, N) + compose(w, images, N));
    }
}

TEST_CASE("echelon normal forms and kernels", "[linalg]") {
    Echelon e(4, true);
    CHECK(e.insert({{0, 1}, {1, 2}}));
    CHECK(e.insert({{1, 1}, {2, 1}}));
    CHECK_FALSE(e.insert({{0, 1}, {1, 3}, {2, 1}}));
    REQUIRE(e.dependencies().size() == 1);
    // v2 = v0 + v1
    const SparseVec dep = e.dependencies().front();
    REQUIRE(dep.size() == 3);
    CHECK(dep[0].val == -1);
    CHECK(dep[1].val == -1);
    CHECK(dep[2].val == 1);
    auto ex = e.express({{0, 2}, {1, 5}, {2, 1}});
    REQUIRE(ex);
    CHECK(!e.express({{3, 1}}));
    e.make_reduced();
    CHECK(e.rows()[0].size() == 2); // x0 - 2 x2 after back substitution
    Echelon a(3), b(3);
    a.insert({{0, 1}});
    a.insert({{1, 1}});
    b.insert({{1, 1}, {2, 1}});
    b.insert({{0, 1}, {1, 1}});
    const Echelon c = intersect(a, b);
    CHECK(c.rank() == 1);
    CHECK(c.contains({{0, 1}, {1, 1}}));
}

TEST_CASE("ideal jets of the cusp ideal", "[jets]") {
    // (x^2, x^3) = (x^2): the quotient jets are spanned by 1, x
    const RingPtr x = source_ring(1);
    const MonomialBasis basis(1, 6);
    const Echelon e = ideal_jets({jet_of(P("x1^2", x), basis), jet_of(P("x1^3", x), basis)}, basis);
    CHECK(basis.size() - e.rank() == 2);
    const MonomialBasis b2(2, 5);
    const Echelon m2 = ideal_jets({jet_of(P("x1", xy), b2), jet_of(P("x2^2", xy), b2)}, b2);
    CHECK(b2.size() - m2.rank() == 2);
    const Echelon floored =
        ideal_jets({jet_of(P("x1", xy), b2), jet_of(P("x2^2", xy), b2)}, b2, 2);
    CHECK(same_span(m2, floored));
}
