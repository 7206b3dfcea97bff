#include "g2fun/curve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

namespace g2fun {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

cd read_coef(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return cd(0.0, 0.0);
    const auto& v = j.at(key);
    if (v.is_number()) return cd(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2)
        return cd(v.at(0).get<double>(), v.at(1).get<double>());
    throw StructuralError(std::string("curve coefficient '") + key +
                          "' must be a number or [re, im]");
}

nlohmann::json write_coef(cd v) {
    return nlohmann::json::array({v.real(), v.imag()});
}

// ----- period bookkeeping ------------------------------------------------

struct LoopInts {
    // L[form][loop]
    std::array<std::array<cd, 4>, 4> L{};
};

struct BasisEval {
    Eigen::Matrix2cd w1, w2; // 2w', 2w''
    Eigen::Matrix2cd h1, h2; // eta', eta''
    Eigen::Matrix2cd tau;
    double asym = 0.0;
    bool ok = false;
};

BasisEval eval_basis(const LoopInts& li, const Eigen::Matrix4i& cyc) {
    BasisEval be;
    auto cyc_int = [&](int form, int row) {
        cd v = 0.0;
        for (int k = 0; k < 4; ++k)
            v += static_cast<double>(cyc(row, k)) * li.L[form][k];
        return v;
    };
    be.w1 << cyc_int(0, 0), cyc_int(0, 1), cyc_int(1, 0), cyc_int(1, 1);
    be.w2 << cyc_int(0, 2), cyc_int(0, 3), cyc_int(1, 2), cyc_int(1, 3);
    be.h1 << cyc_int(2, 0), cyc_int(2, 1), cyc_int(3, 0), cyc_int(3, 1);
    be.h2 << cyc_int(2, 2), cyc_int(2, 3), cyc_int(3, 2), cyc_int(3, 3);
    be.h1 *= -0.5;
    be.h2 *= -0.5;
    Eigen::FullPivLU<Eigen::Matrix2cd> lu(be.w1);
    if (!lu.isInvertible()) return be;
    be.tau = lu.solve(be.w2);
    be.asym = (be.tau - be.tau.transpose()).norm();
    Eigen::Matrix2d im = be.tau.imag();
    be.ok = be.asym < 1e-6 && im.trace() > 0.0 && im.determinant() > 0.0;
    return be;
}

// Half-characteristic bits of a half-period u = w' m + w'' n, returned as
// (n1, n2, m1, m2) mod 2, i.e. theta-characteristic top row then bottom row.
std::array<int, 4> char_bits(const BasisEval& be, const Eigen::Vector2cd& u,
                             double* err) {
    Eigen::Matrix4d R;
    R.block<2, 2>(0, 0) = 0.5 * be.w1.real();
    R.block<2, 2>(0, 2) = 0.5 * be.w2.real();
    R.block<2, 2>(2, 0) = 0.5 * be.w1.imag();
    R.block<2, 2>(2, 2) = 0.5 * be.w2.imag();
    Eigen::Vector4d rhs;
    rhs << u(0).real(), u(1).real(), u(0).imag(), u(1).imag();
    Eigen::Vector4d mn = R.fullPivLu().solve(rhs);
    double e = 0.0;
    std::array<long, 4> r{};
    for (int i = 0; i < 4; ++i) {
        r[i] = std::lround(mn(i));
        e = std::max(e, std::abs(mn(i) - static_cast<double>(r[i])));
    }
    if (err) *err = e;
    auto bit = [](long v) { return static_cast<int>(((v % 2) + 2) % 2); };
    // (m1, m2, n1, n2) solved in that order; report top = n, bottom = m.
    return {bit(r[2]), bit(r[3]), bit(r[0]), bit(r[1])};
}

int char_parity(const std::array<int, 4>& ch) {
    return (ch[0] * ch[2] + ch[1] * ch[3]) % 2;
}

// The unique odd characteristic delta with delta + char_k odd for every
// branch point characteristic.
std::array<int, 4> vanishing_from_chars(
    const std::array<std::array<int, 4>, 5>& chars, bool* unique) {
    std::array<int, 4> found{};
    int hits = 0;
    for (int d1 = 0; d1 < 2; ++d1)
        for (int d2 = 0; d2 < 2; ++d2)
            for (int e1 = 0; e1 < 2; ++e1)
                for (int e2 = 0; e2 < 2; ++e2) {
                    std::array<int, 4> del{d1, d2, e1, e2};
                    if (char_parity(del) != 1) continue;
                    bool all_odd = true;
                    for (const auto& ch : chars) {
                        std::array<int, 4> s{(del[0] + ch[0]) % 2,
                                             (del[1] + ch[1]) % 2,
                                             (del[2] + ch[2]) % 2,
                                             (del[3] + ch[3]) % 2};
                        if (char_parity(s) != 1) {
                            all_odd = false;
                            break;
                        }
                    }
                    if (all_odd) {
                        found = del;
                        ++hits;
                    }
                }
    if (unique) *unique = (hits == 1);
    return found;
}

Eigen::Matrix4i std_symplectic_form() {
    Eigen::Matrix4i J;
    J.setZero();
    J(0, 2) = 1;
    J(1, 3) = 1;
    J(2, 0) = -1;
    J(3, 1) = -1;
    return J;
}

const std::vector<Eigen::Matrix4i>& sp4_moves() {
    static const std::vector<Eigen::Matrix4i> moves = [] {
        std::vector<Eigen::Matrix4i> ms;
        auto I = Eigen::Matrix4i::Identity();
        Eigen::Matrix4i g;
        g = I; g(0, 2) = 1; ms.push_back(g);  // a1 += b1
        g = I; g(1, 3) = 1; ms.push_back(g);  // a2 += b2
        g = I; g(2, 0) = 1; ms.push_back(g);  // b1 += a1
        g = I; g(3, 1) = 1; ms.push_back(g);  // b2 += a2
        g = I; g(0, 0) = 0; g(0, 2) = 1; g(2, 0) = -1; g(2, 2) = 0;
        ms.push_back(g);                      // (a1, b1) -> (b1, -a1)
        g = I; g(1, 1) = 0; g(1, 3) = 1; g(3, 1) = -1; g(3, 3) = 0;
        ms.push_back(g);                      // (a2, b2) -> (b2, -a2)
        g.setZero(); g(0, 1) = 1; g(1, 0) = 1; g(2, 3) = 1; g(3, 2) = 1;
        ms.push_back(g);                      // swap the two handles
        g = I; g(0, 1) = 1; g(3, 2) = -1; ms.push_back(g); // a1 += a2, b2 -= b1
        g = I; g(1, 0) = 1; g(2, 3) = -1; ms.push_back(g); // a2 += a1, b1 -= b2
        const Eigen::Matrix4i J = std_symplectic_form();
        for (const auto& m : ms)
            if (m * J * m.transpose() != J)
                throw StructuralError("basis move is not symplectic");
        return ms;
    }();
    return moves;
}

std::array<std::array<int, 4>, 5> branch_chars_for(
    const BasisEval& be, const std::array<Eigen::Vector2cd, 5>& us,
    double tol_half) {
    std::array<std::array<int, 4>, 5> chars{};
    for (int k = 0; k < 5; ++k) {
        double err = 0.0;
        chars[k] = char_bits(be, us[k], &err);
        if (err > tol_half)
            throw PrecisionError(
                "branch point image is not a half-period to working accuracy");
    }
    return chars;
}

Eigen::Matrix4i fix_characteristic(const LoopInts& li,
                                   const Eigen::Matrix4i& cyc0,
                                   const std::array<Eigen::Vector2cd, 5>& us) {
    const std::array<int, 4> target{1, 1, 0, 1};
    std::set<std::array<int, 16>> seen;
    std::deque<std::pair<Eigen::Matrix4i, int>> queue;
    auto key_of = [](const Eigen::Matrix4i& m) {
        std::array<int, 16> k{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) k[4 * i + j] = m(i, j);
        return k;
    };
    queue.emplace_back(cyc0, 0);
    seen.insert(key_of(cyc0));
    std::size_t visited = 0;
    while (!queue.empty()) {
        auto [cyc, depth] = queue.front();
        queue.pop_front();
        if (++visited > 400000)
            throw CalibrationError("characteristic normalization search overflow");
        BasisEval be = eval_basis(li, cyc);
        if (be.ok) {
            auto chars = branch_chars_for(be, us, 1e-5);
            bool unique = false;
            auto delta = vanishing_from_chars(chars, &unique);
            if (unique && delta == target) return cyc;
        }
        if (depth >= 10) continue;
        for (const auto& g : sp4_moves()) {
            Eigen::Matrix4i next = g * cyc;
            if (seen.insert(key_of(next)).second)
                queue.emplace_back(next, depth + 1);
        }
    }
    throw CalibrationError(
        "could not bring the vanishing characteristic to the reference one");
}

// Abel-Jacobi independent of any period basis: series leg at infinity to the
// anchor, then routed quadrature to the target point.
Eigen::Vector2cd aj_raw(const CurveParams& c, const HomologyBasis& hb,
                        const CurvePoint& P, double tol) {
    Eigen::Vector2cd u;
    u.setZero();
    if (P.at_infinity) return u;

    double scale = 1.0;
    for (const cd& r : hb.roots) scale = std::max(scale, std::abs(r));
    const double min_gap = detail::min_root_gap(hb.roots);
    std::vector<cd> obstacles(hb.roots.begin(), hb.roots.end());

    // Leg from infinity: X = 1/t^2, Y = S(t)/t^5 with S(0) = 1; the two
    // holomorphic forms become dt/S and t^2 dt/S.
    detail::SheetIntegrand leg;
    leg.square = [&c](cd t) {
        cd t2 = t * t, t4 = t2 * t2;
        return 1.0 + t4 * (c.l4 + t2 * (c.l6 + t2 * (c.l8 + t2 * c.l10)));
    };
    leg.emit = [](cd t, cd s, std::array<cd, 4>& f) {
        f[0] = 1.0 / s;
        f[1] = t * t / s;
    };
    cd tA = 1.0 / std::sqrt(hb.anchor_x);
    auto lr = detail::integrate_sheeted(leg, cd(0.0), tA, cd(1.0), tol);
    cd yA = lr.s_end / std::pow(tA, 5);
    u << lr.vals[0], lr.vals[1];
    if (std::abs(yA - hb.anchor_y) > std::abs(yA + hb.anchor_y)) {
        u = -u;
        yA = -yA;
    }
    if (std::abs(yA - hb.anchor_y) > 1e-5 * std::abs(hb.anchor_y))
        throw PrecisionError("series leg disagrees with the anchor lift");

    // Nearest root decides whether the endpoint is a branch point.
    int bk = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 5; ++k) {
        double d = std::abs(P.X - hb.roots[k]);
        if (d < bd) {
            bd = d;
            bk = k;
        }
    }
    const double route_clear = 0.3 * min_gap;

    if (bd <= 1e-9 * scale) {
        cd g = hb.roots[bk];
        double local = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 5; ++j)
            if (j != bk) local = std::min(local, std::abs(hb.roots[j] - g));
        cd dir = hb.anchor_x - g;
        dir /= std::abs(dir);
        cd staging = g + 0.45 * local * dir;
        auto path = detail::route_avoiding(hb.anchor_x, staging, obstacles,
                                           route_clear);
        auto pi = integrate_forms(c, path, hb.anchor_y, tol);
        auto tail = integrate_to_branch(c, staging, pi.y_end, g, tol);
        u(0) += pi.vals[0] + tail[0];
        u(1) += pi.vals[1] + tail[1];
        return u;
    }

    cd Mx = curve_M(c, P.X);
    if (std::abs(P.Y * P.Y - Mx) >
        1e-6 * std::max({1.0, std::abs(Mx), std::norm(P.Y)}))
        throw DomainError("point does not satisfy the curve equation");

    double rc = std::min(route_clear, 0.45 * bd);
    auto path = detail::route_avoiding(hb.anchor_x, P.X, obstacles, rc);
    auto pi = integrate_forms(c, path, hb.anchor_y, tol);
    u(0) += pi.vals[0];
    u(1) += pi.vals[1];
    double same = std::abs(pi.y_end - P.Y), flip = std::abs(pi.y_end + P.Y);
    if (std::min(same, flip) > 1e-4 * (1.0 + std::abs(P.Y)))
        throw PrecisionError("sheet tracking mismatch at the target point");
    // Landing on the conjugate sheet reaches the involuted point, whose
    // image is the negative.
    return same <= flip ? u : Eigen::Vector2cd(-u);
}

} // namespace

// ----- curve basics -------------------------------------------------------

CurveParams CurveParams::from_json(const nlohmann::json& j) {
    CurveParams c;
    c.l4 = read_coef(j, "lambda4");
    c.l6 = read_coef(j, "lambda6");
    c.l8 = read_coef(j, "lambda8");
    c.l10 = read_coef(j, "lambda10");
    return c;
}

nlohmann::json CurveParams::to_json() const {
    return {{"lambda4", write_coef(l4)},
            {"lambda6", write_coef(l6)},
            {"lambda8", write_coef(l8)},
            {"lambda10", write_coef(l10)}};
}

cd curve_M(const CurveParams& c, cd X) {
    return (((X * X + c.l4) * X + c.l6) * X + c.l8) * X + c.l10;
}

cd curve_M_prime(const CurveParams& c, cd X) {
    return ((5.0 * X * X + 3.0 * c.l4) * X + 2.0 * c.l6) * X + c.l8;
}

cd form_numerator(const CurveParams& c, int form, cd X) {
    switch (form) {
        case 0: return -X;
        case 1: return cd(-1.0, 0.0);
        case 2: return -X * X;
        case 3: return -c.l4 * X - 3.0 * X * X * X;
        default: throw StructuralError("form index out of range");
    }
}

std::array<cd, 5> solve_quintic(const CurveParams& c) {
    std::array<cd, 5> z;
    double bound = 1.0;
    bound = std::max(bound, std::pow(std::abs(c.l4), 1.0 / 2.0));
    bound = std::max(bound, std::pow(std::abs(c.l6), 1.0 / 3.0));
    bound = std::max(bound, std::pow(std::abs(c.l8), 1.0 / 4.0));
    bound = std::max(bound, std::pow(std::abs(c.l10), 1.0 / 5.0));
    bound *= 1.5;
    for (int i = 0; i < 5; ++i)
        z[i] = std::polar(bound, 2.0 * kPi * i / 5.0 + 0.4);

    auto p = [&c](cd x) { return curve_M(c, x); };
    auto dp = [&c](cd x) { return curve_M_prime(c, x); };
    bool done = false;
    for (int it = 0; it < 500 && !done; ++it) {
        done = true;
        for (int i = 0; i < 5; ++i) {
            cd w = p(z[i]) / dp(z[i]);
            cd s = 0.0;
            for (int j = 0; j < 5; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            cd corr = w / (1.0 - w * s);
            z[i] -= corr;
            if (std::abs(corr) > 1e-14 * std::max(1.0, std::abs(z[i])))
                done = false;
        }
    }
    if (!done) throw PrecisionError("quintic root iteration did not converge");
    for (int i = 0; i < 5; ++i)
        for (int n = 0; n < 2; ++n) z[i] -= p(z[i]) / dp(z[i]);

    double scale = 1.0;
    for (const cd& r : z) scale = std::max(scale, std::abs(r));
    for (const cd& r : z)
        if (std::abs(p(r)) > 1e-8 * std::pow(scale, 5))
            throw PrecisionError("quintic root residual too large");
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (std::abs(z[i] - z[j]) < 1e-8 * scale)
                throw CurveSingular("curve has nearly coincident branch points");
    std::sort(z.begin(), z.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

// ----- periods -------------------------------------------------------------

PeriodData compute_periods(const CurveParams& c, double tol) {
    PeriodData pd;
    pd.curve = c;
    HomologyBasis hb = build_homology(c);
    pd.roots = hb.roots;

    LoopInts li;
    for (int k = 0; k < 4; ++k) {
        const auto& lp = hb.loops[k];
        auto r = integrate_forms(c, lp.xs, lp.ys[0], tol);
        if (std::abs(r.y_end - lp.ys[0]) >
            1e-6 * std::max(1.0, std::abs(lp.ys[0])))
            throw PathError("loop integral did not return to its sheet");
        for (int f = 0; f < 4; ++f) li.L[f][k] = r.vals[f];
    }

    Eigen::Matrix4i cyc = hb.cycles;
    BasisEval be = eval_basis(li, cyc);
    if (!be.ok) {
        cyc = detail::symplectic_basis(Eigen::Matrix4i(-hb.intersection));
        be = eval_basis(li, cyc);
    }
    if (!be.ok)
        throw StructuralError("period matrix is not in the Siegel domain");

    std::array<Eigen::Vector2cd, 5> us;
    for (int k = 0; k < 5; ++k) {
        CurvePoint bp;
        bp.X = hb.roots[k];
        bp.Y = 0.0;
        us[k] = aj_raw(c, hb, bp, tol);
    }

    cyc = fix_characteristic(li, cyc, us);
    be = eval_basis(li, cyc);
    if (!be.ok)
        throw StructuralError("normalized period matrix left the Siegel domain");

    pd.omega1 = be.w1;
    pd.omega2 = be.w2;
    pd.eta1 = be.h1;
    pd.eta2 = be.h2;
    pd.tau = be.tau;
    pd.tau_asymmetry = be.asym;
    pd.cycles = cyc;
    hb.cycles = cyc;

    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(pd.omega1);
    double cond = svd.singularValues()(0) / svd.singularValues()(1);
    if (!(cond < 1e8))
        throw PrecisionError("first period matrix is ill conditioned");

    // Generalized Legendre relation w' h''^T - w'' h'^T = -(i pi / 2) I.
    Eigen::Matrix2cd E = 0.5 * pd.omega1 * pd.eta2.transpose() -
                         0.5 * pd.omega2 * pd.eta1.transpose();
    const cd half_ipi(0.0, 0.5 * kPi);
    pd.legendre_residual =
        (E + half_ipi * Eigen::Matrix2cd::Identity()).norm();

    auto chars = branch_chars_for(be, us, 1e-5);
    pd.branch_chars = chars;
    bool unique = false;
    pd.vanishing_char = vanishing_from_chars(chars, &unique);
    if (!unique)
        throw StructuralError("vanishing characteristic is not unique");

    pd.lattice[0] = pd.omega1.col(0);
    pd.lattice[1] = pd.omega1.col(1);
    pd.lattice[2] = pd.omega2.col(0);
    pd.lattice[3] = pd.omega2.col(1);
    pd.homology = std::move(hb);
    return pd;
}

Eigen::Vector2cd abel_jacobi(const PeriodData& pd, const CurvePoint& P,
                             double tol) {
    return aj_raw(pd.curve, pd.homology, P, tol);
}

Eigen::Vector2cd lattice_reduce(const PeriodData& pd,
                                const Eigen::Vector2cd& u) {
    Eigen::Matrix4d R;
    for (int j = 0; j < 4; ++j) {
        R(0, j) = pd.lattice[j](0).real();
        R(1, j) = pd.lattice[j](1).real();
        R(2, j) = pd.lattice[j](0).imag();
        R(3, j) = pd.lattice[j](1).imag();
    }
    Eigen::Vector4d x;
    x << u(0).real(), u(1).real(), u(0).imag(), u(1).imag();
    Eigen::Vector4d cf = R.fullPivLu().solve(x);
    for (int j = 0; j < 4; ++j) cf(j) -= std::floor(cf(j) + 0.5);
    Eigen::Vector2cd out;
    out.setZero();
    for (int j = 0; j < 4; ++j) out += cf(j) * pd.lattice[j];
    return out;
}

double lattice_distance(const PeriodData& pd, const Eigen::Vector2cd& u) {
    return lattice_reduce(pd, u).norm();
}

} // namespace g2fun
