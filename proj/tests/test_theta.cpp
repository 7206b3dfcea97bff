#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2fun/theta.hpp"

using namespace g2fun;

namespace {

const PeriodData& reference_periods() {
    static PeriodData pd = [] {
        CurveParams c;
        c.l10 = -1.0;
        return compute_periods(c);
    }();
    return pd;
}

const SigmaEvaluator& reference_sigma() {
    static SigmaEvaluator ev(reference_periods());
    return ev;
}

Eigen::Vector2cd rand_u(std::mt19937& rng, double box) {
    std::uniform_real_distribution<double> U(-box, box);
    return Eigen::Vector2cd(cd(U(rng), U(rng)), cd(U(rng), U(rng)));
}

} // namespace

TEST_CASE("theta jet matches finite differences of the value") {
    const PeriodData& pd = reference_periods();
    ThetaChar ch;
    ch.top = Eigen::Vector2d(0.5, 0.5);
    ch.bottom = Eigen::Vector2d(1.0, 0.5);
    Eigen::Vector2cd z(cd(0.17, 0.05), cd(-0.08, 0.11));

    auto val = [&](const Eigen::Vector2cd& w) {
        return theta_jet(ch, w, pd.tau).d[0];
    };
    ThetaJet J = theta_jet(ch, z, pd.tau);
    double h = 1e-4;
    Eigen::Vector2cd e1(1.0, 0.0), e2(0.0, 1.0);

    cd d1 = (val(z + h * e1) - val(z - h * e1)) / (2.0 * h);
    cd d2 = (val(z + h * e2) - val(z - h * e2)) / (2.0 * h);
    CHECK(std::abs(J.d[1] - d1) < 1e-5 * (1.0 + std::abs(d1)));
    CHECK(std::abs(J.d[2] - d2) < 1e-5 * (1.0 + std::abs(d2)));

    cd d11 = (val(z + h * e1) - 2.0 * val(z) + val(z - h * e1)) / (h * h);
    cd d22 = (val(z + h * e2) - 2.0 * val(z) + val(z - h * e2)) / (h * h);
    CHECK(std::abs(J.d[3] - d11) < 1e-4 * (1.0 + std::abs(d11)));
    CHECK(std::abs(J.d[5] - d22) < 1e-4 * (1.0 + std::abs(d22)));

    // third order: difference the second-derivative entries of the jet
    auto d11_of = [&](const Eigen::Vector2cd& w) {
        return theta_jet(ch, w, pd.tau).d[3];
    };
    cd d111 = (d11_of(z + h * e1) - d11_of(z - h * e1)) / (2.0 * h);
    cd d113 = (d11_of(z + h * e2) - d11_of(z - h * e2)) / (2.0 * h);
    CHECK(std::abs(J.d[6] - d111) < 1e-4 * (1.0 + std::abs(d111)));
    CHECK(std::abs(J.d[7] - d113) < 1e-4 * (1.0 + std::abs(d113)));
}

TEST_CASE("theta picks up the characteristic unit under integer shifts") {
    const PeriodData& pd = reference_periods();
    ThetaChar ch;
    ch.top = Eigen::Vector2d(0.5, 0.5);
    ch.bottom = Eigen::Vector2d(1.0, 0.5);
    Eigen::Vector2cd z(cd(0.21, -0.03), cd(0.02, 0.14));
    cd base = theta_jet(ch, z, pd.tau).d[0];

    const Eigen::Vector2d shifts[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& m : shifts) {
        cd shifted =
            theta_jet(ch, z + m.cast<cd>(), pd.tau).d[0];
        cd unit = std::exp(cd(0.0, 2.0 * M_PI) * (ch.top.dot(m)));
        CHECK(std::abs(shifted - unit * base) < 1e-10 * (1.0 + std::abs(base)));
    }
}

TEST_CASE("sigma jet at the origin matches the expansion") {
    const SigmaEvaluator& ev = reference_sigma();
    SigmaJet j = ev.jet(Eigen::Vector2cd::Zero());
    CHECK(std::abs(j.d[0]) < 1e-9);        // sigma(0)
    CHECK(std::abs(j.d[1]) < 1e-9);        // sigma_1(0)
    CHECK(std::abs(j.d[2] + 1.0) < 1e-9);  // sigma_3(0) = -1
    CHECK(std::abs(j.d[3]) < 1e-9);        // sigma_11(0)
    CHECK(std::abs(j.d[4]) < 1e-9);        // sigma_13(0)
    CHECK(std::abs(j.d[5]) < 1e-9);        // sigma_33(0)
    CHECK(std::abs(j.d[6] - 2.0) < 1e-8);  // sigma_111(0) from u1^3/3
    CHECK(std::abs(j.d[7]) < 1e-8);
    CHECK(std::abs(j.d[8]) < 1e-8);
    CHECK(std::abs(j.d[9]) < 1e-8);
}

TEST_CASE("sigma parity alternates with the derivative order") {
    // sigma(-u) = -sigma(u), so each derivative flips the parity: the
    // value and second derivatives are odd, first and third are even.
    const SigmaEvaluator& ev = reference_sigma();
    std::mt19937 rng(3);
    for (int t = 0; t < 4; ++t) {
        Eigen::Vector2cd u = rand_u(rng, 0.5);
        SigmaJet p = ev.jet(u), m = ev.jet(-u);
        double sc = std::max(p.scale, 1e-300);
        for (int i : {0, 3, 4, 5})
            CHECK(std::abs(p.d[i] + m.d[i]) < 1e-10 * sc);
        for (int i : {1, 2, 6, 7, 8, 9})
            CHECK(std::abs(p.d[i] - m.d[i]) < 1e-10 * sc);
    }
}

TEST_CASE("quasi-periodicity law holds on an m-grid") {
    const SigmaEvaluator& ev = reference_sigma();
    std::mt19937 rng(5);
    const Eigen::Vector2i ms[5] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 1}};
    for (int t = 0; t < 3; ++t) {
        Eigen::Vector2cd u = rand_u(rng, 0.4);
        for (const auto& m1 : ms)
            for (const auto& m2 : ms) {
                if (m1.isZero() && m2.isZero()) continue;
                CHECK(ev.quasiperiod_residual(u, m1, m2) < 1e-9);
            }
    }
}

TEST_CASE("the parity sign in the quasi-period factor is load-bearing") {
    const SigmaEvaluator& ev = reference_sigma();
    const PeriodData& pd = reference_periods();
    Eigen::Vector2cd u(cd(0.13, 0.21), cd(-0.09, 0.05));
    Eigen::Vector2i m1(1, 0), m2(0, 0);

    Eigen::Vector2cd Om = pd.omega1 * Eigen::Vector2d(1, 0);
    cd lhs = ev.value(u + Om);
    cd rhs = ev.quasi_factor(u, m1, m2) * ev.value(u);
    double good = std::abs(lhs - rhs) / std::abs(lhs);
    double flipped = std::abs(lhs + rhs) / std::abs(lhs);
    CHECK(good < 1e-9);
    CHECK(flipped > 1.5); // dropping (-1)^... breaks the law by a factor -1
}

TEST_CASE("sigma vanishes exactly on the Abel image") {
    const SigmaEvaluator& ev = reference_sigma();
    const PeriodData& pd = reference_periods();
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int k = 0; k < 20; ++k) {
        cd X(U(rng), U(rng));
        cd Y = std::sqrt(curve_M(pd.curve, X));
        if (k % 2) Y = -Y;
        Eigen::Vector2cd u = abel_jacobi(pd, {X, Y, false});
        CHECK(ev.vanishing_residual(u) < 1e-8);
        // not a higher-order zero: the gradient stays away from 0
        SigmaJet j = ev.jet(u);
        CHECK(std::abs(j.d[1]) + std::abs(j.d[2]) > 1e-6);
        // and off the image sigma is an honest nonzero
        Eigen::Vector2cd off = u + Eigen::Vector2cd(cd(0.1), cd(0.1));
        CHECK(ev.vanishing_residual(off) > 1e-3);
    }
}

TEST_CASE("named partial derivatives agree with the jet") {
    const SigmaEvaluator& ev = reference_sigma();
    Eigen::Vector2cd u(cd(0.11, 0.04), cd(0.07, -0.02));
    SigmaJet j = ev.jet(u);
    CHECK(ev.partial(u, "") == j.d[0]);
    CHECK(ev.partial(u, "1") == j.d[1]);
    CHECK(ev.partial(u, "3") == j.d[2]);
    CHECK(ev.partial(u, "13") == j.d[4]);
    CHECK(ev.partial(u, "333") == j.d[9]);
    CHECK_THROWS_AS(ev.partial(u, "2"), UnsupportedOrder);
    CHECK_THROWS_AS(ev.partial(u, "1111"), UnsupportedOrder);
    CHECK_THROWS_AS(ev.partial(u, "weierstrass"), UnsupportedOrder);
}

TEST_CASE("ray fit recovers the curve-independent leading coefficient") {
    CurveParams a;
    a.l4 = 0.8;
    a.l6 = 0.3;
    a.l8 = 0.2;
    a.l10 = -1.0;
    SigmaEvaluator ea(compute_periods(a));
    const std::vector<double> ts{0.02, 0.0175, 0.015, 0.0125};

    cd a1(0.9), a3(0.3);
    auto [c3, c7] = sigma_ray_fit(ea, a1, a3, ts);
    cd expect = a1 * a1 * a1 / 3.0 - a3;
    CHECK(std::abs(c3 - expect) < 1e-6 * std::abs(expect));

    // on the ray where the leading form cancels, sigma = O(t^7)
    cd b1(0.9), b3 = b1 * b1 * b1 / 3.0;
    auto [z3, z7] = sigma_ray_fit(ea, b1, b3, ts);
    CHECK(std::abs(z3) < 1e-8);

    // scaling all lambdas leaves the leading coefficient alone
    CurveParams b;
    b.l4 = 0.1 * a.l4;
    b.l6 = 0.1 * a.l6;
    b.l8 = 0.1 * a.l8;
    b.l10 = 0.1 * a.l10;
    SigmaEvaluator eb(compute_periods(b));
    auto [c3b, c7b] = sigma_ray_fit(eb, a1, a3, ts);
    CHECK(std::abs(c3b - expect) < 1e-6 * std::abs(expect));
}

TEST_CASE("tightening the theta tolerance is a Cauchy refinement") {
    const PeriodData& pd = reference_periods();
    SigmaEvaluator loose(pd, 1e-8), tight(pd, 1e-14);
    std::mt19937 rng(17);
    for (int t = 0; t < 4; ++t) {
        Eigen::Vector2cd u = rand_u(rng, 0.5);
        cd a = loose.value(u), b = tight.value(u);
        CHECK(std::abs(a - b) < 1e-7 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("kleinian p-functions are lattice-periodic") {
    const SigmaEvaluator& ev = reference_sigma();
    const PeriodData& pd = reference_periods();
    std::mt19937 rng(19);

    auto pij = [&](const Eigen::Vector2cd& u) {
        SigmaJet j = ev.jet(u);
        cd ss = j.d[0] * j.d[0];
        return Eigen::Vector3cd((j.d[1] * j.d[1] - j.d[0] * j.d[3]) / ss,
                                (j.d[1] * j.d[2] - j.d[0] * j.d[4]) / ss,
                                (j.d[2] * j.d[2] - j.d[0] * j.d[5]) / ss);
    };

    for (int t = 0; t < 3; ++t) {
        Eigen::Vector2cd u = rand_u(rng, 0.4);
        Eigen::Vector3cd base = pij(u);
        for (int k = 0; k < 4; ++k) {
            Eigen::Vector3cd shifted = pij(u + pd.lattice[k]);
            for (int i = 0; i < 3; ++i)
                CHECK(std::abs(shifted(i) - base(i)) <
                      1e-8 * (1.0 + std::abs(base(i))));
        }
    }
}
