#include "g2fun/inversion.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace g2fun {

namespace {

int need_index(const VarSetPtr& ring, const char* name) {
    int i = ring->index_of(name);
    if (i < 0)
        throw StructuralError(std::string("ring is missing variable ") + name);
    return i;
}

} // namespace

InversionContext::InversionContext(const PeriodData& pd, double theta_tol)
    : sig_(pd, theta_tol),
      thm_(&theorem_polys()),
      lead_(extract_leading_A1_B1()) {
    const CurveParams& c = pd.curve;

    auto rs = ring_sigma();
    lambdas_sigma_.assign(rs->size(), cd(0.0));
    lambdas_sigma_[need_index(rs, "l4")] = c.l4;
    lambdas_sigma_[need_index(rs, "l6")] = c.l6;
    lambdas_sigma_[need_index(rs, "l8")] = c.l8;
    lambdas_sigma_[need_index(rs, "l10")] = c.l10;
    static const char* snames[6] = {"s", "s1", "s3", "s11", "s13", "s33"};
    for (int k = 0; k < 6; ++k)
        sidx_[k] = need_index(rs, snames[k]);

    auto rx = ring_xyzl();
    lambdas_xyzl_.assign(rx->size(), cd(0.0));
    lambdas_xyzl_[need_index(rx, "l4")] = c.l4;
    lambdas_xyzl_[need_index(rx, "l6")] = c.l6;
    lambdas_xyzl_[need_index(rx, "l8")] = c.l8;
    lambdas_xyzl_[need_index(rx, "l10")] = c.l10;
    static const char* xnames[3] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k)
        xidx_[k] = need_index(rx, xnames[k]);
}

SigmaJet InversionContext::jet_checked(const Eigen::Vector2cd& u) const {
    SigmaJet j = sig_.jet(u);
    if (!(j.scale > 0.0) || !std::isfinite(j.scale))
        throw PrecisionError("sigma jet underflowed or overflowed");
    return j;
}

std::vector<cd> InversionContext::sigma_point(const SigmaJet& j) const {
    std::vector<cd> pt = lambdas_sigma_;
    for (int k = 0; k < 6; ++k)
        pt[sidx_[k]] = j.d[k];
    return pt;
}

cd InversionContext::f2(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    if (std::abs(j.d[1]) < 1e-8 * j.scale)
        throw PoleError("f2 pole: sigma_1 vanishes at this argument");
    return -j.d[2] / j.d[1];
}

cd InversionContext::g2(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(2.0 * u);
    if (std::abs(j.d[0]) < 1e-8 * j.scale)
        throw PoleError("g2 pole: sigma vanishes at doubled argument");
    cd p11 = (j.d[1] * j.d[1] - j.d[0] * j.d[3]) / (j.d[0] * j.d[0]);
    return 0.5 * p11;
}

cd InversionContext::f5(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    if (std::abs(j.d[1]) < 1e-8 * j.scale)
        throw PoleError("f5 pole: sigma_1 vanishes at this argument");
    SigmaJet J = jet_checked(2.0 * u);
    cd s1 = j.d[1];
    return J.d[0] / (2.0 * s1 * s1 * s1 * s1);
}

cd InversionContext::g5(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    cd s1 = j.d[1], s3 = j.d[2], s11 = j.d[3], s13 = j.d[4], s33 = j.d[5];
    if (std::abs(s1) < 1e-8 * j.scale)
        throw PoleError("g5 pole: sigma_1 vanishes at this argument");
    cd num = s1 * s1 * s33 - 2.0 * s1 * s3 * s13 + s3 * s3 * s11;
    return num / (2.0 * s1 * s1 * s1);
}

cd InversionContext::h(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    cd s = j.d[0], s1 = j.d[1], s3 = j.d[2];
    cd s11 = j.d[3], s13 = j.d[4], s33 = j.d[5];
    cd s113 = j.d[7], s133 = j.d[8], s333 = j.d[9];
    return s1 * (s3 * s113 - s1 * s133 - s11 * s33 + 2.0 * s13 * s13)
         - 2.0 * s3 * s3 * s3 - s3 * s11 * s13
         + s * (s11 * s133 - s13 * s113 + 3.0 * s3 * s33)
         - s * s * s333;
}

Eigen::Vector3cd InversionContext::kleinian_xyz(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    cd s = j.d[0];
    if (std::abs(s) < 1e-8 * j.scale)
        throw PoleError("kleinian functions have a pole on the theta divisor");
    cd s1 = j.d[1], s3 = j.d[2], s11 = j.d[3], s13 = j.d[4], s33 = j.d[5];
    cd ss = s * s;
    Eigen::Vector3cd out;
    out(0) = (s1 * s1 - s * s11) / ss;
    out(1) = (s1 * s3 - s * s13) / ss;
    out(2) = (s3 * s3 - s * s33) / ss;
    return out;
}

cd InversionContext::p11_double_direct(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(2.0 * u);
    if (std::abs(j.d[0]) < 1e-8 * j.scale)
        throw PoleError("p11(2u) pole: sigma vanishes at doubled argument");
    return (j.d[1] * j.d[1] - j.d[0] * j.d[3]) / (j.d[0] * j.d[0]);
}

cd InversionContext::p11_double_table(const Eigen::Vector2cd& u) const {
    Eigen::Vector3cd xyz = kleinian_xyz(u);
    std::vector<cd> pt = lambdas_xyzl_;
    for (int k = 0; k < 3; ++k)
        pt[xidx_[k]] = xyz(k);
    const RationalFunction& dup = duplication_p11_reduced();
    cd den = dup.den().eval<cd>(pt);
    if (!(std::abs(den) > 0.0))
        throw PoleError("duplication table denominator vanishes at this argument");
    return dup.num().eval<cd>(pt) / den;
}

double InversionContext::duplication_residual(const Eigen::Vector2cd& u) const {
    cd a = p11_double_direct(u);
    cd b = p11_double_table(u);
    double s = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / s;
}

cd InversionContext::A_value(const Eigen::Vector2cd& u) const {
    return thm_->A.eval<cd>(sigma_point(jet_checked(u)));
}

cd InversionContext::B_value(const Eigen::Vector2cd& u) const {
    return thm_->B.eval<cd>(sigma_point(jet_checked(u)));
}

cd InversionContext::A1_value(const Eigen::Vector2cd& u) const {
    return lead_.A1.eval<cd>(sigma_point(jet_checked(u)));
}

cd InversionContext::B1_value(const Eigen::Vector2cd& u) const {
    return lead_.B1.eval<cd>(sigma_point(jet_checked(u)));
}

InversionContext::PointResiduals
InversionContext::inversion_residuals(const CurvePoint& P, double aj_tol) const {
    if (P.at_infinity)
        throw PoleError("the base point maps to u = 0 where all four functions have poles");
    Eigen::Vector2cd u = abel_jacobi(periods(), P, aj_tol);
    double sX = std::max(1.0, std::abs(P.X));
    double sY = std::max(1.0, std::abs(P.Y));
    PointResiduals r;
    r.f2 = std::abs(f2(u) - P.X) / sX;
    try {
        r.g2 = std::abs(g2(u) - P.X) / sX;
    } catch (const PoleError&) {
        r.g2 = std::numeric_limits<double>::quiet_NaN();
        r.g2_pole = true;
    }
    r.f5 = std::abs(f5(u) - P.Y) / sY;
    r.g5 = std::abs(g5(u) - P.Y) / sY;
    return r;
}

InversionContext::DecompResiduals
InversionContext::decomposition_residuals(const Eigen::Vector2cd& u) const {
    SigmaJet j = jet_checked(u);
    cd s = j.d[0], s1 = j.d[1];
    if (std::abs(s1) < 1e-8 * j.scale)
        throw PoleError("decomposition residuals need sigma_1 != 0");

    std::vector<cd> pt = sigma_point(j);
    cd A = thm_->A.eval<cd>(pt);
    cd B = thm_->B.eval<cd>(pt);
    if (!(std::abs(B) > 0.0))
        throw PoleError("decomposition denominator B vanishes at this argument");

    DecompResiduals r;
    cd lhs2 = f2(u) - g2(u);
    cd rhs2 = s * A / B;
    r.f2g2 = std::abs(lhs2 - rhs2)
           / std::max({1.0, std::abs(lhs2), std::abs(rhs2)});

    cd lhs5 = f5(u) - g5(u);
    cd rhs5 = s * h(u) / (2.0 * s1 * s1 * s1 * s1);
    r.f5g5 = std::abs(lhs5 - rhs5)
           / std::max({1.0, std::abs(lhs5), std::abs(rhs5)});
    return r;
}

namespace {

// Fit F(t)/t^p along a ray to c0 + c1*(t/t0)^4 + c2*(t/t0)^6 and return
// the extrapolated leading value c0. The weight gap between a leading
// term and the next correction is always >= 4 for these series.
cd ray_leading(const std::function<cd(double)>& F, int pow) {
    static const double ts[4] = {0.05, 0.04, 0.03, 0.02};
    Eigen::MatrixXcd M(4, 3);
    Eigen::VectorXcd rhs(4);
    for (int i = 0; i < 4; ++i) {
        double t = ts[i];
        double s = t / ts[0];
        M(i, 0) = 1.0;
        M(i, 1) = std::pow(s, 4);
        M(i, 2) = std::pow(s, 6);
        rhs(i) = F(t) / std::pow(t, pow);
    }
    Eigen::Vector3cd c = M.colPivHouseholderQr().solve(rhs);
    return c(0);
}

Eigen::Vector2cd ray_point(double a1, double a3, double t) {
    return Eigen::Vector2cd(cd(a1 * t), cd(a3 * t * t * t));
}

} // namespace

LeadingFits leading_coefficient_fit(const InversionContext& ctx) {
    const SigmaEvaluator& sig = ctx.sigma();

    // Cross-multiplied difference f2 - g2: numerator of the combination
    // f2n*g2d - f2d*g2n with f2 = -s3/s1 and g2 = p11(2u)/2.
    auto combo2 = [&](const Eigen::Vector2cd& u) {
        SigmaJet j = sig.jet(u);
        SigmaJet J = sig.jet(2.0 * u);
        cd f2n = -j.d[2], f2d = j.d[1];
        cd g2n = J.d[1] * J.d[1] - J.d[0] * J.d[3];
        cd g2d = 2.0 * J.d[0] * J.d[0];
        return f2n * g2d - f2d * g2n;
    };
    // Same for f5 - g5 with f5 = sigma(2u)/(2 s1^4).
    auto combo5 = [&](const Eigen::Vector2cd& u) {
        SigmaJet j = sig.jet(u);
        SigmaJet J = sig.jet(2.0 * u);
        cd s1 = j.d[1], s3 = j.d[2];
        cd s11 = j.d[3], s13 = j.d[4], s33 = j.d[5];
        cd f5n = J.d[0], f5d = 2.0 * s1 * s1 * s1 * s1;
        cd g5n = s1 * s1 * s33 - 2.0 * s1 * s3 * s13 + s3 * s3 * s11;
        cd g5d = 2.0 * s1 * s1 * s1;
        return f5n * g5d - f5d * g5n;
    };

    LeadingFits out;

    // combo2 opens with K(a) * t^6 on the ray u = (a1 t, a3 t^3), where
    // K = c0*a1^6 + c1*a1^3*a3 + c2*a3^2. Four rays, least squares.
    {
        const double rays[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
        Eigen::MatrixXcd M(4, 3);
        Eigen::VectorXcd rhs(4);
        for (int i = 0; i < 4; ++i) {
            double a1 = rays[i][0], a3 = rays[i][1];
            M(i, 0) = std::pow(a1, 6);
            M(i, 1) = std::pow(a1, 3) * a3;
            M(i, 2) = a3 * a3;
            rhs(i) = ray_leading(
                [&](double t) { return combo2(ray_point(a1, a3, t)); }, 6);
        }
        Eigen::Vector3cd c = M.colPivHouseholderQr().solve(rhs);
        out.f2_combo = {c(0), c(1), c(2)};
    }

    // combo5 opens with (c0*a1^9 + c1*a1^6*a3) * t^9.
    {
        const double rays[3][2] = {{1, 0}, {1, 1}, {1, -1}};
        Eigen::MatrixXcd M(3, 2);
        Eigen::VectorXcd rhs(3);
        for (int i = 0; i < 3; ++i) {
            double a1 = rays[i][0], a3 = rays[i][1];
            M(i, 0) = std::pow(a1, 9);
            M(i, 1) = std::pow(a1, 6) * a3;
            rhs(i) = ray_leading(
                [&](double t) { return combo5(ray_point(a1, a3, t)); }, 9);
        }
        Eigen::Vector2cd c = M.colPivHouseholderQr().solve(rhs);
        out.f5_combo = {c(0), c(1)};
    }

    // A1 = c*u1 + (weight >= 5), so A1/t on the ray (1, 0.7) extrapolates
    // to the slope; B1 is even in weight and B1(0) is a direct jet value.
    out.A1_slope = ray_leading(
        [&](double t) { return ctx.A1_value(ray_point(1.0, 0.7, t)); }, 1);
    out.B1_at_zero = ctx.B1_value(Eigen::Vector2cd::Zero());

    return out;
}

} // namespace g2fun
