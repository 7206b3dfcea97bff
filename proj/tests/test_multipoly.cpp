#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2fun/multipoly.hpp"

using namespace g2fun;

namespace {

// Small random polynomials for property tests.
MultiPoly random_poly(std::mt19937_64& rng, VarSetPtr vs, int max_terms = 5,
                      int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<long> coefd(-9, 9);
    MultiPoly p(vs);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        ExpVec e(vs->size());
        for (auto& k : e) k = expd(rng);
        long num = coefd(rng);
        long den = 1 + std::abs(coefd(rng));
        p += MultiPoly::monomial(vs, e, rat(num, den));
    }
    return p;
}

std::vector<Rat> random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> d(-7, 7);
    std::vector<Rat> pt(n);
    for (auto& v : pt) v = rat(d(rng), 1 + std::abs(d(rng)));
    return pt;
}

} // namespace

TEST_CASE("rational string round trip") {
    CHECK(rat_from_string("2/4") == Rat(1, 2));
    CHECK(rat_from_string("-6/3") == Rat(-2));
    CHECK(rat_to_string(rat(-5, 15)) == "-1/3");
    CHECK_THROWS_AS(rat_from_string("x"), StructuralError);
}

TEST_CASE("ring axioms on random polynomials") {
    auto vs = ring_xyzl();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 40; ++i) {
        MultiPoly a = random_poly(rng, vs);
        MultiPoly b = random_poly(rng, vs);
        MultiPoly c = random_poly(rng, vs);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * MultiPoly::constant(vs, 1) == a);
        CHECK((a * MultiPoly::constant(vs, 0)).is_zero());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto vs = ring_xyzl();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        MultiPoly a = random_poly(rng, vs);
        MultiPoly b = random_poly(rng, vs);
        auto pt = random_point(rng, vs->size());
        CHECK((a + b).eval<Rat>(pt) == a.eval<Rat>(pt) + b.eval<Rat>(pt));
        CHECK((a * b).eval<Rat>(pt) == a.eval<Rat>(pt) * b.eval<Rat>(pt));
    }
}

TEST_CASE("parser handles precedence, powers and constant division") {
    auto vs = ring_xyzl();
    MultiPoly p = parse_poly(vs, "-2*x^6*y*z + x*(y - 3)^2 / 3");
    MultiPoly q = MultiPoly::variable(vs, "x") * Rat(-2) *
                      MultiPoly::variable(vs, "x").pow(5) *
                      MultiPoly::variable(vs, "y") *
                      MultiPoly::variable(vs, "z") +
                  MultiPoly::variable(vs, "x") *
                      (MultiPoly::variable(vs, "y") -
                       MultiPoly::constant(vs, 3))
                          .pow(2) *
                      Rat(1, 3);
    CHECK(p == q);
    CHECK(parse_poly(vs, "x - x").is_zero());
    CHECK_THROWS_AS(parse_poly(vs, "x + w"), StructuralError);
    CHECK_THROWS_AS(parse_poly(vs, "x /"), StructuralError);
    CHECK_THROWS_AS(parse_poly(vs, "x / y"), StructuralError);
    CHECK_THROWS_AS(parse_poly(vs, "(x"), StructuralError);
}

TEST_CASE("string form parses back to the same polynomial") {
    auto vs = ring_sigma();
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        MultiPoly p = random_poly(rng, vs, 8, 4);
        CHECK(parse_poly(vs, p.str()) == p);
    }
}

TEST_CASE("json round trip preserves exact coefficients") {
    auto vs = ring_u();
    MultiPoly p = parse_poly(vs, "u1^3/3 - u3 + 7*u1*u3/2");
    auto j = p.to_json();
    CHECK(MultiPoly::from_json(vs, j) == p);
    CHECK(j["vars"].size() == 2);
    // Deterministic term order: graded lex, low degree first.
    CHECK(j["terms"][0]["exps"] == nlohmann::json::array({0, 1}));
}

TEST_CASE("derivative satisfies the Leibniz rule") {
    auto vs = ring_xyzl();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        MultiPoly a = random_poly(rng, vs);
        MultiPoly b = random_poly(rng, vs);
        for (const char* v : {"x", "y", "z"}) {
            CHECK((a * b).derivative(v) ==
                  a.derivative(v) * b + a * b.derivative(v));
        }
    }
}

TEST_CASE("weighted degree audit") {
    auto vs = ring_xyzl(); // weights x:2 y:4 z:6 l4:4 l6:6 l8:8 l10:10
    MultiPoly p = parse_poly(vs, "x*y^2 - l4*x*y - 2*l6*y + l8*x + 2*l10");
    auto wd = p.weighted_degree();
    CHECK(wd.homogeneous);
    CHECK(wd.weight == 10);
    MultiPoly q = parse_poly(vs, "x + y");
    CHECK_FALSE(q.weighted_degree().homogeneous);
    CHECK(MultiPoly(vs).weighted_degree().homogeneous);
}

TEST_CASE("coefficient extraction and degrees") {
    auto vs = ring_xyzl();
    MultiPoly p = parse_poly(vs, "(x^2+4*y)*z^2 - 2*x*z + y^4");
    CHECK(p.degree_in("z") == 2);
    CHECK(p.coeff_of(vs->index_of("z"), 2) == parse_poly(vs, "x^2+4*y"));
    CHECK(p.coeff_of(vs->index_of("z"), 1) == parse_poly(vs, "-2*x"));
    CHECK(p.coeff_of(vs->index_of("z"), 0) == parse_poly(vs, "y^4"));
    CHECK(p.total_degree() == 4);
    CHECK(MultiPoly(vs).total_degree() == -1);
}

TEST_CASE("exact division recognizes factors and rejects non-factors") {
    auto vs = ring_sigma();
    MultiPoly f = parse_poly(vs, "(s1^2-s*s11)^3*(s1*s3-s*s13)");
    MultiPoly g = parse_poly(vs, "(s1^2-s*s11)^2");
    auto q = MultiPoly::divide_exact(f, g);
    REQUIRE(q.has_value());
    CHECK(*q == parse_poly(vs, "(s1^2-s*s11)*(s1*s3-s*s13)"));
    CHECK_FALSE(
        MultiPoly::divide_exact(f + MultiPoly::constant(vs, 1), g)
            .has_value());
    CHECK_THROWS_AS(MultiPoly::divide_exact(f, MultiPoly(vs)),
                    StructuralError);
}

TEST_CASE("polynomial substitution composes with evaluation") {
    auto src = ring_u();
    MultiPoly p = parse_poly(src, "u1^2*u3 - 2*u3 + 1");
    std::vector<MultiPoly> images{parse_poly(src, "u1 + u3"),
                                  parse_poly(src, "u1*u3")};
    MultiPoly q = p.subs(images);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        auto pt = random_point(rng, 2);
        std::vector<Rat> mapped{images[0].eval<Rat>(pt),
                                images[1].eval<Rat>(pt)};
        CHECK(q.eval<Rat>(pt) == p.eval<Rat>(mapped));
    }
}

TEST_CASE("rational function arithmetic and cross equality") {
    auto vs = ring_u();
    MultiPoly u1 = MultiPoly::variable(vs, "u1");
    MultiPoly u3 = MultiPoly::variable(vs, "u3");
    MultiPoly one = MultiPoly::constant(vs, 1);

    RationalFunction f(u1, u3);
    RationalFunction g(u1 * u1, u1 * u3); // same function, unreduced
    CHECK(cross_equal(f, g));
    CHECK_FALSE(cross_equal(f, RationalFunction(u3, u1)));

    RationalFunction sum = f + f;
    CHECK(cross_equal(sum, RationalFunction(u1 * Rat(2), u3)));
    CHECK(cross_equal(f - g, RationalFunction(MultiPoly(vs), one)));
    // Denominators multiply, they are never cancelled.
    CHECK(sum.den() == u3 * u3);

    CHECK_THROWS_AS(RationalFunction(u1, MultiPoly(vs)), StructuralError);
    CHECK_THROWS_AS(f / RationalFunction(MultiPoly(vs), one),
                    StructuralError);
}

TEST_CASE("substituting rational functions clears denominators correctly") {
    auto vs = ring_xyzl();
    auto dst = ring_u();
    MultiPoly p = parse_poly(vs, "x^2*y - z + l4");
    MultiPoly u1 = MultiPoly::variable(dst, "u1");
    MultiPoly u3 = MultiPoly::variable(dst, "u3");
    MultiPoly one = MultiPoly::constant(dst, 1);
    std::vector<RationalFunction> images{
        RationalFunction(u1, u3),        // x -> u1/u3
        RationalFunction(u3, u1),        // y -> u3/u1
        RationalFunction(u1 * u3, one),  // z -> u1*u3
        RationalFunction(one, one),      // l4 -> 1
        RationalFunction(MultiPoly(dst), one),
        RationalFunction(MultiPoly(dst), one),
        RationalFunction(MultiPoly(dst), one),
    };
    RationalFunction got = substitute(p, images);
    // x^2*y - z + l4 = u1^2/u3^2 * u3/u1 - u1*u3 + 1 = u1/u3 - u1*u3 + 1
    RationalFunction want =
        RationalFunction(u1, u3) -
        RationalFunction(u1 * u3, one) + RationalFunction(one, one);
    CHECK(cross_equal(got, want));
}

TEST_CASE("complex evaluation tracks exact evaluation") {
    auto vs = ring_xyzl();
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        MultiPoly p = random_poly(rng, vs);
        auto pt = random_point(rng, vs->size());
        std::vector<std::complex<double>> cpt(pt.size());
        for (std::size_t k = 0; k < pt.size(); ++k)
            cpt[k] = {to_double(pt[k]), 0.0};
        double exact = to_double(p.eval<Rat>(pt));
        auto approx = p.eval<std::complex<double>>(cpt);
        CHECK(std::abs(approx.real() - exact) <=
              1e-12 * (1.0 + std::abs(exact)));
        CHECK(std::abs(approx.imag()) <= 1e-12 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("mismatched rings are rejected") {
    MultiPoly a = parse_poly(ring_xyzl(), "x");
    MultiPoly b = parse_poly(ring_u(), "u1");
    CHECK_THROWS_AS(a + b, StructuralError);
    CHECK_THROWS_AS(a * b, StructuralError);
    CHECK_THROWS_AS(a.eval<Rat>(std::vector<Rat>{Rat(1)}), StructuralError);
}
