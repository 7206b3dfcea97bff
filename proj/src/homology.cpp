#include "g2fun/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace g2fun {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

struct GLRule {
    int n = 0;
    std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1,1] via Newton on P_n.
GLRule make_gl(int n) {
    GLRule r;
    r.n = n;
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[k] = x;
        r.w[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GLRule& gl16() {
    static const GLRule r = make_gl(16);
    return r;
}
const GLRule& gl32() {
    static const GLRule r = make_gl(32);
    return r;
}

cd continue_branch_impl(const std::function<cd(cd)>& square, cd x0, cd s0,
                        cd x1, int depth) {
    cd s = std::sqrt(square(x1));
    if (std::abs(s + s0) <= std::abs(s - s0)) s = -s;
    if (std::abs(s - s0) <= 0.5 * std::max(std::abs(s0), std::abs(s))) return s;
    if (depth >= 48)
        throw PathError("sheet continuation lost track near a branch point");
    cd mid = 0.5 * (x0 + x1);
    cd sm = continue_branch_impl(square, x0, s0, mid, depth + 1);
    return continue_branch_impl(square, mid, sm, x1, depth + 1);
}

std::array<cd, 4> eval_rule(const detail::SheetIntegrand& ig, cd a, cd b,
                            cd s_a, const GLRule& r) {
    cd half = 0.5 * (b - a), mid = 0.5 * (a + b);
    cd xp = a, sp = s_a;
    std::array<cd, 4> acc{};
    std::array<cd, 4> f;
    for (int i = 0; i < r.n; ++i) {
        cd x = mid + half * r.x[i];
        cd s = detail::continue_branch(ig.square, xp, sp, x);
        f = {};
        ig.emit(x, s, f);
        for (int j = 0; j < 4; ++j) acc[j] += r.w[i] * f[j];
        xp = x;
        sp = s;
    }
    for (auto& v : acc) v *= half;
    return acc;
}

void panel(const detail::SheetIntegrand& ig, cd a, cd b, cd s_a, double tol,
           int depth, std::array<cd, 4>& out, cd& s_b) {
    auto i16 = eval_rule(ig, a, b, s_a, gl16());
    auto i32 = eval_rule(ig, a, b, s_a, gl32());
    double err = 0.0, mag = 0.0;
    for (int j = 0; j < 4; ++j) {
        err = std::max(err, std::abs(i32[j] - i16[j]));
        mag = std::max(mag, std::abs(i32[j]));
    }
    if (err <= tol * std::max(1.0, mag)) {
        for (int j = 0; j < 4; ++j) out[j] += i32[j];
        s_b = detail::continue_branch(ig.square, a, s_a, b);
        return;
    }
    if (depth >= 30)
        throw PrecisionError("adaptive quadrature did not converge on a panel");
    cd mid = 0.5 * (a + b);
    cd s_mid;
    panel(ig, a, mid, s_a, 0.5 * tol, depth + 1, out, s_mid);
    panel(ig, mid, b, s_mid, 0.5 * tol, depth + 1, out, s_b);
}

double dist_to_segment(cd p, cd a, cd b) {
    cd d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * d.real() + (p - a).imag() * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double cross2(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

void route_impl(cd from, cd to, const std::vector<cd>& obstacles,
                double clearance, int depth, std::vector<cd>& out) {
    cd d = to - from;
    double len = std::abs(d);
    if (len == 0.0) return;
    double worst = std::numeric_limits<double>::infinity();
    cd wr{};
    double wt = 0.0;
    for (const cd& r : obstacles) {
        double t = ((r - from).real() * d.real() + (r - from).imag() * d.imag()) /
                   (len * len);
        t = std::clamp(t, 0.0, 1.0);
        double dist = std::abs(from + t * d - r);
        if (dist < worst) {
            worst = dist;
            wr = r;
            wt = t;
        }
    }
    if (worst >= 0.999 * clearance || depth >= 12) {
        if (depth >= 12 && worst < 0.2 * clearance)
            throw PathError("could not route a path around the branch points");
        out.push_back(to);
        return;
    }
    cd p = from + std::clamp(wt, 0.07, 0.93) * d;
    cd dir = p - wr;
    if (std::abs(dir) < 1e-13 * (1.0 + std::abs(p))) dir = d * cd(0.0, 1.0);
    dir /= std::abs(dir);
    cd w = wr + dir * (1.9 * clearance);
    route_impl(from, w, obstacles, clearance, depth + 1, out);
    route_impl(w, to, obstacles, clearance, depth + 1, out);
}

LoopContour make_capsule(cd A, cd B, double d) {
    LoopContour lc;
    cd e = (B - A) / std::abs(B - A);
    cd n = e * cd(0.0, 1.0);
    double phi = std::arg(e);
    int n_side = std::clamp(
        static_cast<int>(std::ceil(3.0 * std::abs(B - A) / d)), 16, 600);
    const int n_arc = 64;
    auto arc = [&](cd ctr, double th0, double th1) {
        for (int j = 0; j < n_arc; ++j) {
            double th = th0 + (th1 - th0) * j / n_arc;
            lc.xs.push_back(ctr + std::polar(d, th));
        }
    };
    for (int k = 0; k < n_side; ++k)
        lc.xs.push_back(A - d * n + (B - A) * (static_cast<double>(k) / n_side));
    arc(B, phi - 0.5 * kPi, phi + 0.5 * kPi);
    for (int k = 0; k < n_side; ++k)
        lc.xs.push_back(B + d * n - (B - A) * (static_cast<double>(k) / n_side));
    arc(A, phi + 0.5 * kPi, phi + 1.5 * kPi);
    lc.xs.push_back(lc.xs.front());
    return lc;
}

} // namespace

namespace detail {

cd continue_branch(const std::function<cd(cd)>& square, cd x0, cd s0, cd x1) {
    return continue_branch_impl(square, x0, s0, x1, 0);
}

SheetResult integrate_sheeted(const SheetIntegrand& ig, cd a, cd b, cd s_a,
                              double tol) {
    SheetResult r;
    r.s_end = s_a;
    if (a == b) return r;
    panel(ig, a, b, s_a, tol, 0, r.vals, r.s_end);
    return r;
}

std::vector<cd> route_avoiding(cd from, cd to, const std::vector<cd>& obstacles,
                               double clearance) {
    std::vector<cd> out{from};
    route_impl(from, to, obstacles, clearance, 0, out);
    return out;
}

double min_root_gap(const std::array<cd, 5>& roots) {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            g = std::min(g, std::abs(roots[i] - roots[j]));
    return g;
}

Eigen::Matrix4i symplectic_basis(const Eigen::Matrix4i& pairing) {
    using Row = Eigen::RowVector4i;
    std::array<Row, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = Row::Unit(i);
    auto pair = [&](const Row& a, const Row& b) -> int {
        return (a * pairing * b.transpose())(0, 0);
    };
    int pi = -1, pj = -1;
    for (int i = 0; i < 4 && pi < 0; ++i)
        for (int j = i + 1; j < 4 && pi < 0; ++j)
            if (std::abs(pair(v[i], v[j])) == 1) {
                pi = i;
                pj = j;
            }
    if (pi < 0)
        throw StructuralError("intersection pairing has no unimodular pair");
    Row a1 = v[pi], b1 = v[pj];
    if (pair(a1, b1) == -1) b1 = -b1;
    std::vector<Row> rest;
    for (int k = 0; k < 4; ++k) {
        if (k == pi || k == pj) continue;
        Row w = v[k] - pair(v[k], b1) * a1 + pair(v[k], a1) * b1;
        rest.push_back(w);
    }
    int g = pair(rest[0], rest[1]);
    if (std::abs(g) != 1)
        throw StructuralError("intersection pairing is not unimodular");
    Row a2 = rest[0], b2 = (g == 1) ? rest[1] : Row(-rest[1]);
    Eigen::Matrix4i cyc;
    cyc.row(0) = a1;
    cyc.row(1) = a2;
    cyc.row(2) = b1;
    cyc.row(3) = b2;
    return cyc;
}

} // namespace detail

cd continue_sheet(const CurveParams& c, cd x0, cd y0, cd x1) {
    return detail::continue_branch([&c](cd x) { return curve_M(c, x); }, x0, y0,
                                   x1);
}

PathIntegral integrate_forms(const CurveParams& c, const std::vector<cd>& xs,
                             cd y0, double tol) {
    if (xs.size() < 2) throw StructuralError("path needs at least two vertices");
    PathIntegral out;
    out.y_end = y0;
    double L = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i) L += std::abs(xs[i + 1] - xs[i]);
    if (L == 0.0) return out;
    detail::SheetIntegrand ig;
    ig.square = [&c](cd x) { return curve_M(c, x); };
    ig.emit = [&c](cd x, cd s, std::array<cd, 4>& f) {
        cd inv = 1.0 / (2.0 * s);
        for (int k = 0; k < 4; ++k) f[k] = form_numerator(c, k, x) * inv;
    };
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        double len = std::abs(xs[i + 1] - xs[i]);
        if (len == 0.0) continue;
        auto r = detail::integrate_sheeted(ig, xs[i], xs[i + 1], out.y_end,
                                           tol * std::max(len / L, 1e-3));
        for (int j = 0; j < 4; ++j) out.vals[j] += r.vals[j];
        out.y_end = r.s_end;
    }
    return out;
}

std::array<cd, 4> integrate_to_branch(const CurveParams& c, cd x0, cd y0, cd g,
                                      double tol) {
    cd w0 = std::sqrt(x0 - g);
    if (std::abs(w0) == 0.0) return {};
    // Exact Taylor coefficients of M about the root g; M(g + v) = v*q(v).
    cd m1 = curve_M_prime(c, g);
    cd m2 = 10.0 * g * g * g + 3.0 * c.l4 * g + c.l6;
    cd m3 = 10.0 * g * g + c.l4;
    cd m4 = 5.0 * g;
    auto q = [=](cd v) { return m1 + v * (m2 + v * (m3 + v * (m4 + v))); };
    cd s0 = std::sqrt(q(w0 * w0));
    double sgn = (std::abs(w0 * s0 - y0) > std::abs(w0 * s0 + y0)) ? -1.0 : 1.0;
    detail::SheetIntegrand ig;
    ig.square = [q](cd w) { return q(w * w); };
    ig.emit = [&c, g, sgn](cd w, cd s, std::array<cd, 4>& f) {
        cd X = g + w * w;
        for (int k = 0; k < 4; ++k) f[k] = sgn * form_numerator(c, k, X) / s;
    };
    auto r = detail::integrate_sheeted(ig, w0, cd(0.0), s0, tol);
    return r.vals;
}

int contour_intersection(const CurveParams&, const LoopContour& P,
                         const LoopContour& Q) {
    int total = 0;
    for (size_t i = 0; i + 1 < P.xs.size(); ++i) {
        cd p0 = P.xs[i], dp = P.xs[i + 1] - p0;
        for (size_t j = 0; j + 1 < Q.xs.size(); ++j) {
            cd q0 = Q.xs[j], dq = Q.xs[j + 1] - q0;
            double det = cross2(dp, dq);
            if (std::abs(det) < 1e-12 * std::abs(dp) * std::abs(dq)) continue;
            cd rhs = q0 - p0;
            double s = cross2(rhs, dq) / det;
            double t = cross2(rhs, dp) / det;
            if (s < 0.0 || s >= 1.0 || t < 0.0 || t >= 1.0) continue;
            cd yp = P.ys[i] + s * (P.ys[i + 1] - P.ys[i]);
            cd yq = Q.ys[j] + t * (Q.ys[j + 1] - Q.ys[j]);
            if (std::abs(yp - yq) < std::abs(yp + yq)) total += det > 0 ? 1 : -1;
        }
    }
    return total;
}

HomologyBasis build_homology(const CurveParams& c) {
    HomologyBasis hb;
    hb.roots = solve_quintic(c);
    double scale = 1.0;
    for (const cd& r : hb.roots) scale = std::max(scale, std::abs(r));
    hb.anchor_x = cd(10.0 * scale, 0.0);
    hb.anchor_y = std::sqrt(curve_M(c, hb.anchor_x));
    std::vector<cd> obstacles(hb.roots.begin(), hb.roots.end());

    std::array<double, 4> rad{};
    for (int k = 0; k < 4; ++k) {
        cd A = hb.roots[k], B = hb.roots[k + 1];
        double clear = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 5; ++j) {
            if (j == k || j == k + 1) continue;
            clear = std::min(clear, dist_to_segment(hb.roots[j], A, B));
        }
        rad[k] = std::min(0.35 * clear * (1.0 + 0.013 * k), 3.0 * scale);
    }
    double route_clear = 0.8 * *std::min_element(rad.begin(), rad.end());

    for (int k = 0; k < 4; ++k) {
        LoopContour lc = make_capsule(hb.roots[k], hb.roots[k + 1], rad[k]);
        auto path = detail::route_avoiding(hb.anchor_x, lc.xs.front(), obstacles,
                                           route_clear);
        cd y = hb.anchor_y;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            y = continue_sheet(c, path[i], y, path[i + 1]);
        lc.ys.resize(lc.xs.size());
        lc.ys[0] = y;
        for (size_t i = 0; i + 1 < lc.xs.size(); ++i)
            lc.ys[i + 1] = continue_sheet(c, lc.xs[i], lc.ys[i], lc.xs[i + 1]);
        if (std::abs(lc.ys.back() - lc.ys.front()) >
            1e-7 * std::max(1.0, std::abs(lc.ys.front())))
            throw PathError("contour lift failed to close");
        lc.ys.back() = lc.ys.front();
        hb.loops[k] = std::move(lc);
    }

    hb.intersection.setZero();
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            int n = contour_intersection(c, hb.loops[p], hb.loops[q]);
            hb.intersection(p, q) = n;
            hb.intersection(q, p) = -n;
        }
    hb.cycles = detail::symplectic_basis(hb.intersection);
    return hb;
}

} // namespace g2fun
