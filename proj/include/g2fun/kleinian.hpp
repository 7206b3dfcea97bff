#pragma once
//
// Exact symbolic layer for the genus-2 Kleinian functions attached to
//
//     Y^2 = X^5 + l4*X^3 + l6*X^2 + l8*X + l10.
//
// Everything here works in the polynomial ring Q[x, y, z, l4, l6, l8, l10]
// where x, y, z stand for P11, P13, P33 (second logarithmic derivatives of
// sigma). The odd functions P111 and P113 generate a rank-3 module over
// that ring: products of two odd generators are again polynomial, via the
// known quadratic relations. This file re-derives the duplication formula
// for P11(2u) from those relations and certifies it, together with the
// decomposition of f2 - g2, against the reference tables.

#include <array>
#include <map>

#include "g2fun/multipoly.hpp"
#include "g2fun/report.hpp"

namespace g2fun {

// Element c1 + cp*P111 + cq*P113 with polynomial coefficients.
struct OddElement {
    MultiPoly c1, cp, cq;

    bool is_pure() const { return cp.is_zero() && cq.is_zero(); }
    OddElement operator+(const OddElement& o) const {
        return {c1 + o.c1, cp + o.cp, cq + o.cq};
    }
    OddElement operator-(const OddElement& o) const {
        return {c1 - o.c1, cp - o.cp, cq - o.cq};
    }
};

// Quadratic relations: the three products of odd generators expressed in
// the even ring, plus P1111 and P1113 (used by the formal derivative).
struct PRelations {
    MultiPoly p111_sq;   // P111^2
    MultiPoly p111_p113; // P111*P113
    MultiPoly p113_sq;   // P113^2
    MultiPoly p1111;     // d(P111)/du1
    MultiPoly p1113;     // d(P113)/du1

    static const PRelations& standard();
};

// Kummer quartic in the form lead*z^2 = 2*S*z - T with lead = x^2 + 4y.
struct KummerData {
    MultiPoly S, T, lead;

    static const KummerData& standard();
};

// Reference tables for the closed-form duplication and decomposition
// results: numerator entries c_w (w in {0,4,6,8,10}) and a_{ijkl},
// denominator entries d_w and b_{ijkl}, where (i,j,k,l) indexes the
// prefactor l4^i * l6^j * l8^k * l10^l.
struct DuplicationTables {
    std::map<int, MultiPoly> c, d;
    std::map<std::array<int, 4>, MultiPoly> a, b;

    // Sum with lambda prefactors: the full printed numerator/denominator.
    MultiPoly numerator() const;
    MultiPoly denominator() const;

    static const DuplicationTables& printed();
};

// Product of module elements; closed because odd*odd reduces to the even
// ring through rel.
OddElement odd_product(const OddElement& a, const OddElement& b,
                       const PRelations& rel);

// Product that is required to land in the even ring (odd parts cancel);
// throws StructuralError otherwise.
MultiPoly odd_mul(const OddElement& a, const OddElement& b,
                  const PRelations& rel);

// Formal d/du1: acts on x, y, z by P111, P113, P133 = y*P111 - x*P113 and
// on the generators by the known second derivatives.
OddElement d_u1(const OddElement& e, const PRelations& rel);

struct PhiFamily {
    OddElement phi;   // odd
    MultiPoly phi1;   // even: d(phi)/du1
    OddElement phi11; // odd: d^2(phi)/du1^2
};

PhiFamily build_phi_family(const PRelations& rel);

// P11(2u) as a rational function of x, y, z and the curve coefficients,
// derived from the phi family (no table input).
RationalFunction duplication_p11(const PRelations& rel);

// Rewrite f so that numerator and denominator have z-degree <= 1 on the
// Kummer surface, multiplying both by the minimal power of (x^2 + 4y).
RationalFunction kummer_reduce(const RationalFunction& f,
                               const KummerData& k);

struct TableComparison {
    CertReport report;
    // When the derived pair is exactly a common polynomial multiple of the
    // printed pair, that factor (as a string) is recorded here.
    std::optional<std::string> common_factor;
};

// Cross-equality of the derived, reduced duplication formula against the
// printed tables, with an exact-factor report as a secondary diagnostic.
TableComparison verify_duplication_tables();

// Certification of the decomposition theorem in the sigma ring:
//   (i)  each beta_w equals sigma^16 * d_w under the substitution
//        x -> (s1^2 - s*s11)/s^2 etc., and B = -2*s1*D';
//   (ii) s*A = s1*N' + 2*s3*D' as an exact polynomial identity, where
//        N', D' are the substituted numerator/denominator and A, B the
//        printed factors.
// Returns one report per sub-identity plus a combined verdict.
std::vector<CertReport> verify_theorem_AB();

struct LeadingParts {
    MultiPoly A1, B1;         // extracted from A, B at s = 0
    MultiPoly A1_printed, B1_printed;
    bool match = false;
};

// A|_{s=0} must be divisible by s1^9 with quotient A1; B|_{s=0} must be
// -2*s1^12*B1. Throws CertificationError if the divisibility fails.
LeadingParts extract_leading_A1_B1();

// The curve-independent limit lambda -> 0 with sigma -> u1^3/3 - u3:
// f2 - g2 = sigma * 3*(10*u1^3 - 3*u3) / (u1^2 * (4*u1^3 - 3*u3)^2),
// certified exactly, plus the spot value -14 at u = (1, 1).
CertReport verify_rational_limit();

// The sigma-ring polynomials A and B of the decomposition (printed form),
// and the substituted N', D'. Exposed for numeric cross-checks.
struct TheoremPolys {
    MultiPoly A, B, Nsub, Dsub;
};
const TheoremPolys& theorem_polys();

// Derived duplication formula after Kummer reduction (cached).
const RationalFunction& duplication_p11_reduced();

// Search for a small integer point where p does not vanish; used to build
// failure witnesses. Returns assignments in ring order.
std::vector<Rat> nonvanishing_witness(const MultiPoly& p);

} // namespace g2fun
