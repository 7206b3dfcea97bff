#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "g2fun/curve.hpp"
#include "g2fun/errors.hpp"

using namespace g2fun;

namespace {

CurveParams reference_curve() {
    CurveParams c;
    c.l10 = -1.0; // Y^2 = X^5 - 1
    return c;
}

CurveParams random_curve(std::mt19937& rng, bool complex_coeffs) {
    std::uniform_real_distribution<double> U(-1.2, 1.2);
    CurveParams c;
    auto draw = [&] { return complex_coeffs ? cd(U(rng), U(rng)) : cd(U(rng)); };
    c.l4 = draw();
    c.l6 = draw();
    c.l8 = draw();
    c.l10 = draw();
    return c;
}

// Independent root oracle: eigenvalues of the companion matrix.
std::array<cd, 5> companion_roots(const CurveParams& c) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(5, 5);
    A(0, 4) = -c.l10;
    A(1, 4) = -c.l8;
    A(2, 4) = -c.l6;
    A(3, 4) = -c.l4;
    for (int i = 1; i < 5; ++i) A(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
    std::array<cd, 5> out;
    for (int i = 0; i < 5; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

} // namespace

TEST_CASE("quintic roots match the companion-matrix eigenvalues") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        CurveParams c = random_curve(rng, trial % 2 == 1);
        std::array<cd, 5> got, want;
        try {
            got = solve_quintic(c);
        } catch (const CurveSingular&) {
            continue; // random draw too clustered; nothing to compare
        }
        want = companion_roots(c);
        double scale = 0.0;
        for (auto r : want) scale = std::max(scale, std::abs(r));
        std::array<bool, 5> used{};
        for (auto r : got) {
            int best = -1;
            double bd = 1e300;
            for (int i = 0; i < 5; ++i) {
                if (used[i]) continue;
                double d = std::abs(r - want[i]);
                if (d < bd) bd = d, best = i;
            }
            REQUIRE(best >= 0);
            used[best] = true;
            CHECK(bd <= 1e-8 * std::max(1.0, scale));
        }
        for (auto r : got)
            CHECK(std::abs(curve_M(c, r)) <= 1e-10 * std::max(1.0, std::pow(scale, 5)));
    }
}

TEST_CASE("quintic roots come back sorted by real then imaginary part") {
    CurveParams c = reference_curve();
    auto r = solve_quintic(c);
    for (int i = 0; i + 1 < 5; ++i) {
        bool ordered = r[i].real() < r[i + 1].real() + 1e-12 &&
                       (std::abs(r[i].real() - r[i + 1].real()) > 1e-12 ||
                        r[i].imag() <= r[i + 1].imag() + 1e-12);
        CHECK(ordered);
    }
}

TEST_CASE("degenerate quintics are rejected") {
    CurveParams c; // X^5: quintuple root
    CHECK_THROWS_AS(solve_quintic(c), CurveSingular);
    c.l4 = -1.0; // X^5 - X^3 = X^3 (X^2 - 1): triple root
    CHECK_THROWS_AS(solve_quintic(c), CurveSingular);
    CHECK_THROWS_AS(compute_periods(CurveParams{}), CurveSingular);
}

TEST_CASE("curve JSON round trip") {
    CurveParams c;
    c.l4 = cd(0.25, -1.5);
    c.l6 = cd(-2.0, 0.0);
    c.l8 = cd(0.0, 3.0);
    c.l10 = cd(1.0, 1.0);
    CurveParams back = CurveParams::from_json(c.to_json());
    CHECK(back.l4 == c.l4);
    CHECK(back.l6 == c.l6);
    CHECK(back.l8 == c.l8);
    CHECK(back.l10 == c.l10);

    // Scalar shorthand is accepted on input.
    auto j = nlohmann::json{{"lambda4", 0.5}, {"lambda6", 0.0},
                            {"lambda8", -1.0}, {"lambda10", 2.0}};
    CurveParams s = CurveParams::from_json(j);
    CHECK(s.l4 == cd(0.5));
    CHECK(s.l8 == cd(-1.0));
}

TEST_CASE("sheet continuation around a branch point flips the sign") {
    CurveParams c = reference_curve();
    auto roots = solve_quintic(c);
    cd center = roots[2];

    // A small circle around one root swaps sheets; around none, it does not.
    auto walk_circle = [&](cd ctr, double rad) {
        cd x0 = ctr + rad;
        cd y = std::sqrt(curve_M(c, x0));
        cd x = x0;
        for (int k = 1; k <= 64; ++k) {
            cd nx = ctr + std::polar(rad, 2.0 * M_PI * k / 64.0);
            y = continue_sheet(c, x, y, nx);
            x = nx;
        }
        return std::make_pair(std::sqrt(curve_M(c, x0)), y);
    };

    auto [y0a, ya] = walk_circle(center, 0.2);
    CHECK(std::abs(ya + y0a) < 1e-9 * std::abs(y0a));

    auto [y0b, yb] = walk_circle(cd(4.0, 4.0), 0.3);
    CHECK(std::abs(yb - y0b) < 1e-9 * std::abs(y0b));
}

TEST_CASE("path integrals negate under reversal and vanish on null loops") {
    CurveParams c = reference_curve();
    std::vector<cd> path{cd(2.0, 0.5), cd(2.5, 1.0), cd(1.5, 2.0)};
    cd y0 = std::sqrt(curve_M(c, path.front()));
    PathIntegral fwd = integrate_forms(c, path, y0, 1e-12);

    std::vector<cd> rev(path.rbegin(), path.rend());
    PathIntegral bwd = integrate_forms(c, rev, fwd.y_end, 1e-12);
    for (int f = 0; f < 4; ++f)
        CHECK(std::abs(fwd.vals[f] + bwd.vals[f]) < 1e-10);
    CHECK(std::abs(bwd.y_end - y0) < 1e-10);

    // Null loop: a square that encloses no branch point.
    std::vector<cd> loop{cd(3.0, 3.0), cd(4.0, 3.0), cd(4.0, 4.0),
                         cd(3.0, 4.0), cd(3.0, 3.0)};
    cd yl = std::sqrt(curve_M(c, loop.front()));
    PathIntegral nul = integrate_forms(c, loop, yl, 1e-12);
    for (int f = 0; f < 4; ++f)
        CHECK(std::abs(nul.vals[f]) < 1e-10);
    CHECK(std::abs(nul.y_end - yl) < 1e-10);
}

TEST_CASE("integration to a branch endpoint matches a stopped plain path") {
    CurveParams c = reference_curve();
    auto roots = solve_quintic(c);
    cd g = roots[1];
    cd x0 = g + cd(0.4, 0.2);
    cd y0 = std::sqrt(curve_M(c, x0));

    auto full = integrate_to_branch(c, x0, y0, g, 1e-12);

    // Plain quadrature to a point 1e-3 short of the branch point, plus the
    // substituted tail from there; the two decompositions must agree.
    cd xs = g + 1e-3 * (x0 - g) / std::abs(x0 - g);
    PathIntegral head = integrate_forms(c, {x0, xs}, y0, 1e-12);
    auto tail = integrate_to_branch(c, xs, head.y_end, g, 1e-12);
    for (int f = 0; f < 4; ++f)
        CHECK(std::abs(full[f] - (head.vals[f] + tail[f])) < 1e-9);
}

TEST_CASE("homology basis: closed lifts, antisymmetric pairing, symplectic cycles") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        CurveParams c = trial == 0 ? reference_curve() : random_curve(rng, trial == 2);
        HomologyBasis hb;
        try {
            hb = build_homology(c);
        } catch (const CurveSingular&) {
            continue;
        }

        for (const auto& loop : hb.loops) {
            REQUIRE(loop.xs.size() == loop.ys.size());
            CHECK(std::abs(loop.xs.front() - loop.xs.back()) < 1e-12);
            // same sheet after the full tour
            CHECK(std::abs(loop.ys.front() - loop.ys.back()) <
                  1e-6 * (1.0 + std::abs(loop.ys.front())));
        }

        Eigen::Matrix4i P = hb.intersection;
        CHECK(P == -P.transpose());
        for (int i = 0; i < 4; ++i) CHECK(P(i, i) == 0);

        Eigen::Matrix4i J = hb.cycles * P * hb.cycles.transpose();
        Eigen::Matrix4i Jstd = Eigen::Matrix4i::Zero();
        Jstd(0, 2) = Jstd(1, 3) = 1;
        Jstd(2, 0) = Jstd(3, 1) = -1;
        CHECK(J == Jstd);
    }
}

TEST_CASE("pairwise loop intersections are antisymmetric") {
    CurveParams c = reference_curve();
    HomologyBasis hb = build_homology(c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int ij = contour_intersection(c, hb.loops[i], hb.loops[j]);
            int ji = contour_intersection(c, hb.loops[j], hb.loops[i]);
            CHECK(ij == -ji);
            CHECK(ij == hb.intersection(i, j));
        }
}

TEST_CASE("period data on the reference curve") {
    PeriodData pd = compute_periods(reference_curve());

    CHECK(pd.tau_asymmetry < 1e-10);
    Eigen::Matrix2d im = pd.tau.imag();
    CHECK(im(0, 0) > 0.0);
    CHECK(im.determinant() > 0.0);
    CHECK(pd.legendre_residual < 1e-9);

    CHECK(pd.vanishing_char == std::array<int, 4>{1, 1, 0, 1});
}

TEST_CASE("branch points halve lattice vectors under the Abel map") {
    CurveParams c = reference_curve();
    PeriodData pd = compute_periods(c);
    for (int k = 0; k < 5; ++k) {
        CurvePoint P{pd.roots[k], 0.0, false};
        Eigen::Vector2cd u = abel_jacobi(pd, P);
        CHECK(lattice_distance(pd, 2.0 * u) < 1e-8);
        // The stored characteristic reproduces u mod lattice. Its top row
        // holds the b-period coefficients, the bottom row the a-period
        // ones, so u = w'*(bottom) + w''*(top) up to a full lattice shift.
        Eigen::Vector2cd v =
            0.5 * (pd.omega1 * Eigen::Vector2d(pd.branch_chars[k][2],
                                               pd.branch_chars[k][3]) +
                   pd.omega2 * Eigen::Vector2d(pd.branch_chars[k][0],
                                               pd.branch_chars[k][1]));
        CHECK(lattice_distance(pd, u - v) < 1e-8);
    }
}

TEST_CASE("Abel map is odd under the hyperelliptic involution") {
    CurveParams c = reference_curve();
    PeriodData pd = compute_periods(c);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.3, 1.3);
    for (int k = 0; k < 5; ++k) {
        cd X(U(rng), U(rng));
        cd Y = std::sqrt(curve_M(c, X));
        Eigen::Vector2cd up = abel_jacobi(pd, {X, Y, false});
        Eigen::Vector2cd um = abel_jacobi(pd, {X, -Y, false});
        CHECK(lattice_distance(pd, up + um) < 1e-8);
    }
}

TEST_CASE("lattice reduction is stable under lattice shifts") {
    PeriodData pd = compute_periods(reference_curve());
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> Z(-3, 3);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    for (int t = 0; t < 6; ++t) {
        Eigen::Vector2cd u(cd(U(rng), U(rng)), cd(U(rng), U(rng)));
        Eigen::Vector2cd shifted = u;
        for (int k = 0; k < 4; ++k)
            shifted += static_cast<double>(Z(rng)) * pd.lattice[k];
        CHECK(lattice_distance(pd, shifted - u) < 1e-9);
        Eigen::Vector2cd r1 = lattice_reduce(pd, u);
        Eigen::Vector2cd r2 = lattice_reduce(pd, shifted);
        CHECK((r1 - r2).norm() < 1e-8);
    }
}

TEST_CASE("period diagnostics hold across a family of curves") {
    std::mt19937 rng(23);
    int done = 0;
    for (int trial = 0; trial < 6 && done < 4; ++trial) {
        CurveParams c = random_curve(rng, trial % 2 == 0);
        PeriodData pd;
        try {
            pd = compute_periods(c);
        } catch (const CurveSingular&) {
            continue;
        }
        ++done;
        CHECK(pd.tau_asymmetry < 1e-9);
        CHECK(pd.tau.imag()(0, 0) > 0.0);
        CHECK(pd.tau.imag().determinant() > 0.0);
        CHECK(pd.legendre_residual < 1e-9);
        CHECK(pd.vanishing_char == std::array<int, 4>{1, 1, 0, 1});
    }
    CHECK(done >= 4);
}
