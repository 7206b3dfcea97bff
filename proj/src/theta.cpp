#include "g2fun/theta.hpp"

#include <cmath>
#include <numbers>

namespace g2fun {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// Flat jet indices for symmetric derivative multisets over two variables.
int idx2(int i, int j) { return 3 + i + j; }
int idx3(int i, int j, int k) { return 6 + i + j + k; }

} // namespace

ThetaJet theta_jet(const ThetaChar& ch, const Eigen::Vector2cd& z,
                   const Eigen::Matrix2cd& tau, double tol) {
    Eigen::Matrix2d om = tau.imag();
    double tr = om.trace(), det = om.determinant();
    if (!(tr > 0.0 && det > 0.0))
        throw DomainError("tau is not in the Siegel upper half space");
    double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    double lmin = 0.5 * tr - disc;

    Eigen::Vector2d y(z(0).imag(), z(1).imag());
    Eigen::Vector2d pstar = -om.fullPivLu().solve(y);
    if (kPi * (-y.dot(pstar)) > 650.0)
        throw PrecisionError("theta argument too large for double range");
    long n01 = std::lround(pstar(0) - ch.top(0));
    long n02 = std::lround(pstar(1) - ch.top(1));

    double safe_tol = std::max(tol * 1e-3, 1e-300);
    int R =
        static_cast<int>(std::ceil(std::sqrt(-std::log(safe_tol) / (kPi * lmin)))) +
        3;
    if (R > 80) throw PrecisionError("theta truncation radius exploded");

    ThetaJet out;
    const cd ipi(0.0, kPi), twopii(0.0, 2.0 * kPi);
    for (long n1 = n01 - R; n1 <= n01 + R; ++n1) {
        for (long n2 = n02 - R; n2 <= n02 + R; ++n2) {
            cd p0 = static_cast<double>(n1) + ch.top(0);
            cd p1 = static_cast<double>(n2) + ch.top(1);
            cd quad = p0 * (tau(0, 0) * p0 + tau(0, 1) * p1) +
                      p1 * (tau(1, 0) * p0 + tau(1, 1) * p1);
            cd lin = p0 * (z(0) + ch.bottom(0)) + p1 * (z(1) + ch.bottom(1));
            cd t = std::exp(ipi * quad + twopii * lin);
            out.max_term = std::max(out.max_term, std::abs(t));
            cd f0 = twopii * p0, f1 = twopii * p1;
            out.d[0] += t;
            out.d[1] += f0 * t;
            out.d[2] += f1 * t;
            out.d[3] += f0 * f0 * t;
            out.d[4] += f0 * f1 * t;
            out.d[5] += f1 * f1 * t;
            out.d[6] += f0 * f0 * f0 * t;
            out.d[7] += f0 * f0 * f1 * t;
            out.d[8] += f0 * f1 * f1 * t;
            out.d[9] += f1 * f1 * f1 * t;
        }
    }
    return out;
}

SigmaEvaluator::SigmaEvaluator(const PeriodData& pd, double theta_tol)
    : pd_(pd), theta_tol_(theta_tol) {
    Eigen::Matrix2cd w1h = 0.5 * pd_.omega1;
    B_ = pd_.omega1.fullPivLu().inverse();
    kappa_ = pd_.eta1 * w1h.fullPivLu().inverse();
    double asym = (kappa_ - kappa_.transpose()).norm();
    if (asym > 1e-8 * (1.0 + kappa_.norm()))
        throw CalibrationError("sigma quadratic form is not symmetric");
    kappa_ = 0.5 * (kappa_ + kappa_.transpose()).eval();
    delta_.top << 0.5, 0.5;
    delta_.bottom << 1.0, 0.5;

    // Calibrate C against sigma(u) = u1^3/3 - u3 + O(weight 7) along two
    // rays u = (a1 t, a3 t^3); sigma is odd, so the estimate behaves as
    // C (1 - alpha t^4 - beta t^6 - gamma t^8 - ...).
    auto on_ray = [&](double a1, double a3) {
        double lead = a1 * a1 * a1 / 3.0 - a3;
        if (std::abs(lead) <
            0.05 * (std::abs(a1 * a1 * a1) + std::abs(a3)))
            throw DegenerateRay("calibration ray lies along the sigma divisor");
        const std::array<double, 6> ts{0.15, 0.12, 0.09, 0.06, 0.04, 0.03};
        Eigen::MatrixXcd M(6, 4);
        Eigen::VectorXcd rhs(6);
        for (int i = 0; i < 6; ++i) {
            double t = ts[i];
            Eigen::Vector2cd u(a1 * t, a3 * t * t * t);
            cd g = uncalibrated(u, nullptr);
            if (std::abs(g) == 0.0)
                throw CalibrationError("sigma vanished along a calibration ray");
            cd chat = lead * t * t * t / g;
            double s = t / ts[0];
            M(i, 0) = 1.0;
            M(i, 1) = std::pow(s, 4);
            M(i, 2) = std::pow(s, 6);
            M(i, 3) = std::pow(s, 8);
            rhs(i) = chat;
        }
        Eigen::Vector4cd sol = M.colPivHouseholderQr().solve(rhs);
        double res = (M * sol - rhs).norm();
        if (!(std::abs(sol(0)) > 0.0) || res > 1e-6 * std::abs(sol(0)))
            throw CalibrationError("calibration fit did not converge");
        return sol(0);
    };
    cd c1 = on_ray(1.0, -0.5);
    cd c2 = on_ray(0.8, 0.4);
    if (std::abs(c1 - c2) > 1e-7 * std::abs(c1))
        throw CalibrationError("calibration rays disagree");
    C_ = 0.5 * (c1 + c2);
}

cd SigmaEvaluator::uncalibrated(const Eigen::Vector2cd& u,
                                double* scale) const {
    Eigen::Vector2cd z = B_ * u;
    cd q = 0.5 * (u(0) * (kappa_(0, 0) * u(0) + kappa_(0, 1) * u(1)) +
                  u(1) * (kappa_(1, 0) * u(0) + kappa_(1, 1) * u(1)));
    ThetaJet tj = theta_jet(delta_, z, pd_.tau, theta_tol_);
    cd E = std::exp(q);
    if (scale) *scale = std::abs(E) * tj.max_term;
    return E * tj.d[0];
}

SigmaJet SigmaEvaluator::jet(const Eigen::Vector2cd& u) const {
    Eigen::Vector2cd z = B_ * u;
    ThetaJet tj = theta_jet(delta_, z, pd_.tau, theta_tol_);

    // Theta jet pulled back to u variables through z = B u.
    std::array<cd, 10> T{};
    T[0] = tj.d[0];
    for (int i = 0; i < 2; ++i)
        T[1 + i] = B_(0, i) * tj.d[1] + B_(1, i) * tj.d[2];
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            cd acc = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s)
                    acc += B_(r, i) * B_(s, j) * tj.d[idx2(r, s)];
            T[idx2(i, j)] = acc;
        }
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                cd acc = 0.0;
                for (int r = 0; r < 2; ++r)
                    for (int s = 0; s < 2; ++s)
                        for (int t = 0; t < 2; ++t)
                            acc += B_(r, i) * B_(s, j) * B_(t, k) *
                                   tj.d[idx3(r, s, t)];
                T[idx3(i, j, k)] = acc;
            }

    // Jet of exp(q) with q quadratic: gradient kappa u, Hessian kappa.
    cd q = 0.5 * (u(0) * (kappa_(0, 0) * u(0) + kappa_(0, 1) * u(1)) +
                  u(1) * (kappa_(1, 0) * u(0) + kappa_(1, 1) * u(1)));
    Eigen::Vector2cd qg = kappa_ * u;
    cd E = std::exp(q);
    std::array<cd, 10> Ej{};
    Ej[0] = E;
    for (int i = 0; i < 2; ++i) Ej[1 + i] = qg(i) * E;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            Ej[idx2(i, j)] = (kappa_(i, j) + qg(i) * qg(j)) * E;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k)
                Ej[idx3(i, j, k)] =
                    (qg(i) * qg(j) * qg(k) + kappa_(i, j) * qg(k) +
                     kappa_(i, k) * qg(j) + kappa_(j, k) * qg(i)) *
                    E;

    SigmaJet out;
    out.scale = std::abs(C_) * std::abs(E) * tj.max_term;
    out.d[0] = Ej[0] * T[0];
    for (int i = 0; i < 2; ++i)
        out.d[1 + i] = Ej[1 + i] * T[0] + Ej[0] * T[1 + i];
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            out.d[idx2(i, j)] = Ej[idx2(i, j)] * T[0] + Ej[1 + i] * T[1 + j] +
                                Ej[1 + j] * T[1 + i] + Ej[0] * T[idx2(i, j)];
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k)
                out.d[idx3(i, j, k)] =
                    Ej[idx3(i, j, k)] * T[0] + Ej[idx2(i, j)] * T[1 + k] +
                    Ej[idx2(i, k)] * T[1 + j] + Ej[idx2(j, k)] * T[1 + i] +
                    Ej[1 + i] * T[idx2(j, k)] + Ej[1 + j] * T[idx2(i, k)] +
                    Ej[1 + k] * T[idx2(i, j)] + Ej[0] * T[idx3(i, j, k)];
    for (auto& v : out.d) v *= C_;
    return out;
}

cd SigmaEvaluator::value(const Eigen::Vector2cd& u) const {
    return C_ * uncalibrated(u, nullptr);
}

cd SigmaEvaluator::partial(const Eigen::Vector2cd& u,
                           const std::string& which) const {
    static const std::array<std::pair<const char*, int>, 10> names{{
        {"", 0},
        {"1", 1},
        {"3", 2},
        {"11", 3},
        {"13", 4},
        {"33", 5},
        {"111", 6},
        {"113", 7},
        {"133", 8},
        {"333", 9},
    }};
    for (const auto& [n, i] : names)
        if (which == n) return jet(u).d[i];
    throw UnsupportedOrder("sigma derivative '" + which +
                           "' is not available (orders 0..3 over u1, u3)");
}

cd SigmaEvaluator::quasi_factor(const Eigen::Vector2cd& u,
                                const Eigen::Vector2i& m1,
                                const Eigen::Vector2i& m2) const {
    Eigen::Vector2cd md1(static_cast<double>(m1(0)), static_cast<double>(m1(1)));
    Eigen::Vector2cd md2(static_cast<double>(m2(0)), static_cast<double>(m2(1)));
    Eigen::Vector2cd ell = 2.0 * (pd_.eta1 * md1 + pd_.eta2 * md2);
    Eigen::Vector2cd mid = u + 0.5 * (pd_.omega1 * md1 + pd_.omega2 * md2);
    int par = m1(0) + m1(1) + 2 * m2(0) + m2(1) + m1(0) * m2(0) + m1(1) * m2(1);
    double psi = (((par % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    return psi * std::exp(ell(0) * mid(0) + ell(1) * mid(1));
}

double SigmaEvaluator::quasiperiod_residual(const Eigen::Vector2cd& u,
                                            const Eigen::Vector2i& m1,
                                            const Eigen::Vector2i& m2) const {
    Eigen::Vector2cd md1(static_cast<double>(m1(0)), static_cast<double>(m1(1)));
    Eigen::Vector2cd md2(static_cast<double>(m2(0)), static_cast<double>(m2(1)));
    Eigen::Vector2cd Om = pd_.omega1 * md1 + pd_.omega2 * md2;
    cd lhs = value(u + Om);
    cd rhs = quasi_factor(u, m1, m2) * value(u);
    double sc = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / sc;
}

double SigmaEvaluator::vanishing_residual(const Eigen::Vector2cd& u) const {
    double scale = 0.0;
    cd v = uncalibrated(u, &scale);
    if (scale == 0.0) throw PrecisionError("theta scale underflow");
    return std::abs(v) / scale;
}

std::pair<cd, cd> sigma_ray_fit(const SigmaEvaluator& ev, cd a1, cd a3,
                                const std::vector<double>& ts) {
    if (ts.size() < 2)
        throw StructuralError("sigma_ray_fit needs at least two samples");
    Eigen::MatrixXcd M(ts.size(), 2);
    Eigen::VectorXcd rhs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double t = ts[i];
        M(i, 0) = std::pow(t, 3);
        M(i, 1) = std::pow(t, 7);
        rhs(i) = ev.value(Eigen::Vector2cd(t * a1, t * t * t * a3));
    }
    Eigen::Vector2cd c = M.colPivHouseholderQr().solve(rhs);
    return {c(0), c(1)};
}

} // namespace g2fun
