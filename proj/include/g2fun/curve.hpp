#pragma once
//
// Numerics on a concrete genus-2 curve  Y^2 = X^5 + l4 X^3 + l6 X^2
// + l8 X + l10  with distinct roots: root solving, a homology basis made
// of explicit lifted contours, quadrature of the four standard
// differentials, period matrices with a canonical theta characteristic,
// and the Abel-Jacobi map based at infinity.
//
// Differentials (index order used everywhere):
//   0: omega1 = -X/(2Y) dX          1: omega3 = -1/(2Y) dX
//   2: eta1   = -X^2/(2Y) dX        3: eta3 = (-l4*X - 3X^3)/(2Y) dX
// Period conventions: 2w' = (int_{a_j} omega_i), 2w'' = (int_{b_j} omega_i),
// -2h' = (int_{a_j} eta_i), -2h'' = (int_{b_j} eta_i), tau = w'^{-1} w''.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "g2fun/errors.hpp"

namespace g2fun {

using cd = std::complex<double>;

struct CurveParams {
    cd l4{0.0}, l6{0.0}, l8{0.0}, l10{0.0};

    static CurveParams from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// M(X) and M'(X).
cd curve_M(const CurveParams& c, cd X);
cd curve_M_prime(const CurveParams& c, cd X);

// All five roots, Aberth-Ehrlich iteration, sorted by (Re, Im).
// Throws CurveSingular when two roots nearly collide.
std::array<cd, 5> solve_quintic(const CurveParams& c);

struct CurvePoint {
    cd X{0.0}, Y{0.0};
    bool at_infinity = false;

    static CurvePoint infinity() { return {0.0, 0.0, true}; }
};

// Numerator f of the differential f(X)/(2Y) dX for form index 0..3.
cd form_numerator(const CurveParams& c, int form, cd X);

// Continue Y along the straight segment x0 -> x1 starting from the lift
// (x0, y0); adaptive step control keeps |dY| < |Y|/2 per step.
cd continue_sheet(const CurveParams& c, cd x0, cd y0, cd x1);

// Integrals of all four differentials along a polyline starting on the
// lift (xs[0], y0). Returns the values and the final Y for closure checks.
struct PathIntegral {
    std::array<cd, 4> vals{};
    cd y_end{0.0};
};
PathIntegral integrate_forms(const CurveParams& c, const std::vector<cd>& xs,
                             cd y0, double tol);

// Same integral along a straight segment ending at a branch point g,
// where Y ~ sqrt(X - g); uses the w^2 = X - g substitution, so the
// integrand stays analytic.
std::array<cd, 4> integrate_to_branch(const CurveParams& c, cd x0, cd y0,
                                      cd g, double tol);

// One explicit closed contour (a "stadium" around a pair of roots),
// lifted: ys[k] is the Y value over xs[k]. xs.front() == xs.back().
struct LoopContour {
    std::vector<cd> xs, ys;
};

struct HomologyBasis {
    std::array<cd, 5> roots; // sorted
    cd anchor_x{0.0}, anchor_y{0.0};
    std::array<LoopContour, 4> loops;   // around (roots[k], roots[k+1])
    Eigen::Matrix4i intersection;       // loop pairing, rows/cols 0..3
    // cycles.row(r) expresses cycle r (order a1, a2, b1, b2) over loops.
    Eigen::Matrix4i cycles;
};

HomologyBasis build_homology(const CurveParams& c);

// Intersection number of two lifted contours (sum of signed same-sheet
// crossings). Exposed for tests.
int contour_intersection(const CurveParams& c, const LoopContour& p,
                         const LoopContour& q);

struct PeriodData {
    CurveParams curve;
    std::array<cd, 5> roots;
    Eigen::Matrix2cd omega1, omega2; // 2w', 2w''
    Eigen::Matrix2cd eta1, eta2;     // h', h''
    Eigen::Matrix2cd tau;
    std::array<Eigen::Vector2cd, 4> lattice; // columns of (2w' | 2w'')
    double tau_asymmetry = 0.0;
    double legendre_residual = 0.0;
    // 2*characteristic bits of I(branch point k): (eps1', eps2', eps1'', eps2'').
    std::array<std::array<int, 4>, 5> branch_chars{};
    // 2*characteristic of the vanishing (Riemann constant) class, same layout.
    std::array<int, 4> vanishing_char{};
    // Cycles in terms of the elementary loops (after the basis search).
    Eigen::Matrix4i cycles;
    HomologyBasis homology;
};

// Builds periods on a symplectic basis chosen so that the vanishing
// characteristic equals delta' = (1/2, 1/2), delta'' = (0, 1/2) mod 1 and
// Im(tau) is positive definite. tol controls the quadrature.
PeriodData compute_periods(const CurveParams& c, double tol = 1e-11);

// Abel-Jacobi image of P, base point infinity, defined modulo the period
// lattice. Uses a series leg near infinity plus routed quadrature.
Eigen::Vector2cd abel_jacobi(const PeriodData& pd, const CurvePoint& P,
                             double tol = 1e-11);

// Reduce u modulo the lattice to coordinates in [-1/2, 1/2) over the four
// generators.
Eigen::Vector2cd lattice_reduce(const PeriodData& pd,
                                const Eigen::Vector2cd& u);

// Distance from u to the lattice point 0 after reduction (diagnostic).
double lattice_distance(const PeriodData& pd, const Eigen::Vector2cd& u);

namespace detail {

// Lower-level plumbing shared by the period and Abel-Jacobi code; exposed
// mainly so tests can exercise it directly.

// sqrt(square(x)) continued from the known value s0 at x0 along the
// straight segment to x1.
cd continue_branch(const std::function<cd(cd)>& square, cd x0, cd s0, cd x1);

// A 4-vector integrand whose only multivaluedness is a tracked square root.
struct SheetIntegrand {
    std::function<cd(cd)> square;
    std::function<void(cd x, cd s, std::array<cd, 4>&)> emit;
};
struct SheetResult {
    std::array<cd, 4> vals{};
    cd s_end{0.0};
};
// Adaptive Gauss-Legendre (16/32 pair) over the straight segment a->b.
SheetResult integrate_sheeted(const SheetIntegrand& ig, cd a, cd b, cd s_a,
                              double tol);

// Polyline from 'from' to 'to' keeping the given clearance from obstacles.
std::vector<cd> route_avoiding(cd from, cd to, const std::vector<cd>& obstacles,
                               double clearance);

double min_root_gap(const std::array<cd, 5>& roots);

// Rows (a1, a2, b1, b2) of an integer basis that brings the antisymmetric
// pairing to the standard symplectic form.
Eigen::Matrix4i symplectic_basis(const Eigen::Matrix4i& pairing);

} // namespace detail

} // namespace g2fun
