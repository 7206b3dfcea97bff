#pragma once
//
// Genus-2 theta functions with derivatives through third order, and the
// sigma function assembled from them:
//
//   sigma(u) = C * exp(u^T kappa u / 2) * theta[delta]((2w')^{-1} u, tau)
//
// with kappa = h'(w')^{-1} and the fixed odd characteristic
// delta' = (1/2, 1/2), delta'' = (1, 1/2). The constant C is calibrated so
// that sigma(u) = u1^3/3 - u3 + (terms of weighted degree >= 7).
//
// Jet layout used throughout (indices over the two arguments):
//   0: value, 1: d1, 2: d2, 3: d11, 4: d12, 5: d22,
//   6: d111, 7: d112, 8: d122, 9: d222.
// For sigma the arguments are (u1, u3).

#include <array>
#include <string>

#include <Eigen/Dense>

#include "g2fun/curve.hpp"

namespace g2fun {

struct ThetaChar {
    Eigen::Vector2d top{0.0, 0.0}, bottom{0.0, 0.0};
};

struct ThetaJet {
    std::array<cd, 10> d{};
    double max_term = 0.0; // largest summand magnitude (cancellation scale)
};

// theta[a;b](z,tau) = sum_{n in Z^2} exp(i pi (n+a)^T tau (n+a)
//                                        + 2 i pi (n+a)^T (z+b)),
// derivatives taken in z. Truncation keeps the relative tail below tol.
ThetaJet theta_jet(const ThetaChar& ch, const Eigen::Vector2cd& z,
                   const Eigen::Matrix2cd& tau, double tol = 1e-13);

struct SigmaJet {
    std::array<cd, 10> d{};
    // |C exp(...)| times the largest theta summand: the natural scale
    // against which a small sigma value should be judged.
    double scale = 0.0;
};

class SigmaEvaluator {
public:
    explicit SigmaEvaluator(const PeriodData& pd, double theta_tol = 1e-13);

    SigmaJet jet(const Eigen::Vector2cd& u) const;
    cd value(const Eigen::Vector2cd& u) const;

    // Partial derivative by name: "" (value), "1", "3", "11", "13", "33",
    // "111", "113", "133", "333". Throws UnsupportedOrder otherwise.
    cd partial(const Eigen::Vector2cd& u, const std::string& which) const;

    // Predicted sigma(u + Omega)/sigma(u) for Omega = 2w' m1 + 2w'' m2.
    cd quasi_factor(const Eigen::Vector2cd& u, const Eigen::Vector2i& m1,
                    const Eigen::Vector2i& m2) const;

    // Relative error of the quasi-periodicity law at u for that Omega.
    double quasiperiod_residual(const Eigen::Vector2cd& u,
                                const Eigen::Vector2i& m1,
                                const Eigen::Vector2i& m2) const;

    // |sigma(u)| / scale: near zero iff u lies on the sigma divisor.
    double vanishing_residual(const Eigen::Vector2cd& u) const;

    const PeriodData& periods() const { return pd_; }
    cd calibration() const { return C_; }
    const ThetaChar& characteristic() const { return delta_; }

private:
    cd uncalibrated(const Eigen::Vector2cd& u, double* scale) const;

    PeriodData pd_;
    double theta_tol_;
    Eigen::Matrix2cd B_;     // (2w')^{-1}
    Eigen::Matrix2cd kappa_; // h'(w')^{-1}, symmetrized
    ThetaChar delta_;
    cd C_{1.0};
};

// Least-squares fit of sigma(t*a1, t^3*a3) to c3*t^3 + c7*t^7 over the
// samples ts; returns (c3, c7). The exact leading coefficient is
// a1^3/3 - a3 independently of the curve, and weight-8 terms vanish by
// parity, so the model error is O(t^9).
std::pair<cd, cd> sigma_ray_fit(const SigmaEvaluator& ev, cd a1, cd a3,
                                const std::vector<double>& ts);

} // namespace g2fun
