#pragma once
//
// On-curve inversion functions built from sigma jets, and numeric
// evaluation of the certified symbolic identities on concrete curves:
//
//   f2(u) = -sigma_3/sigma_1           g2(u) = p11(2u)/2
//   f5(u) = sigma(2u)/(2 sigma_1^4)    g5(u) = (s1^2 s33 - 2 s1 s3 s13
//                                               + s3^2 s11)/(2 s1^3)
//
// On the Abel image of the curve, f2 and g2 return X and f5, g5 return Y.
// The differences factor through sigma:
//   f2 - g2 = sigma * A/B        f5 - g5 = sigma * h/(2 sigma_1^4)
// with A, B the certified decomposition polynomials and h the cubic
// combination of sigma derivatives with h(0) = 2.

#include "g2fun/kleinian.hpp"
#include "g2fun/theta.hpp"

namespace g2fun {

class InversionContext {
public:
    explicit InversionContext(const PeriodData& pd, double theta_tol = 1e-13);

    const SigmaEvaluator& sigma() const { return sig_; }
    const PeriodData& periods() const { return sig_.periods(); }

    cd f2(const Eigen::Vector2cd& u) const;
    cd g2(const Eigen::Vector2cd& u) const;
    cd f5(const Eigen::Vector2cd& u) const;
    cd g5(const Eigen::Vector2cd& u) const;
    cd h(const Eigen::Vector2cd& u) const;

    // Kleinian p11, p13, p33 at u, from second logarithmic derivatives.
    Eigen::Vector3cd kleinian_xyz(const Eigen::Vector2cd& u) const;

    // p11(2u) two ways: directly from the jet at 2u, and through the
    // certified duplication tables evaluated at (p11, p13, p33)(u).
    cd p11_double_direct(const Eigen::Vector2cd& u) const;
    cd p11_double_table(const Eigen::Vector2cd& u) const;
    double duplication_residual(const Eigen::Vector2cd& u) const;

    // The decomposition polynomials A and B evaluated on the sigma jet,
    // and their leading parts A1, B1 (A = s1^9 A1 + s A2, B = 2 s1^12 B1
    // + s B2).
    cd A_value(const Eigen::Vector2cd& u) const;
    cd B_value(const Eigen::Vector2cd& u) const;
    cd A1_value(const Eigen::Vector2cd& u) const;
    cd B1_value(const Eigen::Vector2cd& u) const;

    struct PointResiduals {
        double f2, g2, f5, g5;
        // At a branch point the doubled argument lands on the lattice and
        // g2 has a pole; its residual is then NaN and this flag is set.
        bool g2_pole = false;
    };
    // |f2(I(P)) - X| and friends, all relative to max(1, |X|) or (1, |Y|).
    // P at infinity maps to u = 0, a pole of all four: PoleError.
    PointResiduals inversion_residuals(const CurvePoint& P,
                                       double aj_tol = 1e-12) const;

    struct DecompResiduals {
        double f2g2, f5g5;
    };
    // Relative residuals of the two decomposition identities at generic u.
    DecompResiduals decomposition_residuals(const Eigen::Vector2cd& u) const;

private:
    SigmaJet jet_checked(const Eigen::Vector2cd& u) const;
    std::vector<cd> sigma_point(const SigmaJet& j) const;

    SigmaEvaluator sig_;
    const TheoremPolys* thm_;
    LeadingParts lead_;
    std::vector<cd> lambdas_sigma_;  // l-values in ring_sigma order slots
    std::vector<cd> lambdas_xyzl_;   // l-values in ring_xyzl order slots
    std::array<int, 6> sidx_;        // indices of s, s1, s3, s11, s13, s33
    std::array<int, 3> xidx_;        // indices of x, y, z
};

// Small-u leading coefficients recovered numerically by ray fits; the
// expected exact values are given in the comments.
struct LeadingFits {
    std::array<cd, 3> f2_combo; // u1^6, u1^3*u3, u3^2 -> 80/9, -88/3, 8
    std::array<cd, 2> f5_combo; // u1^9, u1^6*u3      -> 4/3, -4
    cd A1_slope;                // coefficient of u1   -> -6
    cd B1_at_zero;              // value at u = 0      -> -1
};
LeadingFits leading_coefficient_fit(const InversionContext& ctx);

} // namespace g2fun
