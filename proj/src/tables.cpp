// Reference data for the duplication formula of P11 and the f2 - g2
// decomposition: the quadratic relations among odd derivatives, the Kummer
// surface coefficients, and the closed-form coefficient tables, all
// transcribed as parseable strings and checked elsewhere by weighted-degree
// audits and independent re-derivation.

#include "g2fun/kleinian.hpp"

namespace g2fun {

namespace {

MultiPoly P(const char* text) { return parse_poly(ring_xyzl(), text); }

} // namespace

const PRelations& PRelations::standard() {
    static const PRelations rel{
        P("4*z + 4*l4*x + 4*x^3 + 4*y*x + 4*l6"),
        P("2*l8 + 2*y^2 - 2*z*x + 2*l4*y + 4*y*x^2"),
        P("4*l10 - 4*z*y + 4*x*y^2"),
        P("6*x^2 + 4*y + 2*l4"),
        P("6*x*y - 2*z"),
    };
    return rel;
}

const KummerData& KummerData::standard() {
    static const KummerData k{
        P("x*y^2 - l4*x*y - 2*l6*y + l8*x + 2*l10"),
        P("y^4 + 2*l4*y^3 - 4*l6*x*y^2 + 2*l8*y*(y+2*x^2)"
          " - 4*l10*x*(x^2+y) + l4^2*y^2 + 2*l4*l8*y - 4*l4*l10*x"
          " - 4*l6*l10 + l8^2"),
        P("x^2 + 4*y"),
    };
    return k;
}

const DuplicationTables& DuplicationTables::printed() {
    static const DuplicationTables t = [] {
        DuplicationTables t;
        t.c[0] = P("x^2*y^4*(5*x*z-3*y^2)");
        t.c[4] = P("x^4*y^2*(3*x*z-y^2)");
        t.c[6] = P("-2*x^6*y*z");
        t.c[8] = P("x^6*(x*z+y^2)");
        t.c[10] = P("-2*x^7*y");

        t.d[0] = P("-x^3*y^5");
        t.d[4] = P("-x^5*y^3");
        t.d[6] = P("x^6*y^2");
        t.d[8] = P("-x^7*y");
        t.d[10] = P("x^8");

        auto& a = t.a;
        a[{0, 0, 0, 0}] = P("4*y^5*(x*z-y^2)");
        a[{1, 0, 0, 0}] = P("y^3*(4*y+3*x^2)*(2*x*z-3*y^2)");
        a[{0, 1, 0, 0}] =
            P("2*y^2*(24*y^2*z+6*x^2*y*z-2*x^4*z+6*x*y^3+5*x^3*y^2)");
        a[{0, 0, 1, 0}] =
            P("-y^2*(56*x*y*z+22*x^3*z+76*y^3+41*x^2*y^2+8*x^4*y)");
        a[{2, 0, 0, 0}] = P("y^2*(20*x*y*z+9*x^3*z+4*y^3-x^2*y^2-x^4*y)");
        a[{0, 0, 0, 1}] = P("2*(40*y^3*z+50*x^2*y^2*z+20*x^4*y*z+3*x^6*z"
                            "+70*x*y^4+30*x^3*y^3+2*x^5*y^2)");
        a[{1, 1, 0, 0}] = P("2*y*(2*y+x^2)*(4*y*z-3*x^2*z-6*x*y^2+x^3*y)");
        a[{1, 0, 1, 0}] = P("8*x*y^2*z+6*x^3*y*z+3*x^5*z-88*y^4-50*x^2*y^3"
                            "-10*x^4*y^2-3*x^6*y");
        a[{0, 2, 0, 0}] = P("-4*y*(4*x*y*z+2*x^3*z-16*y^3-12*x^2*y^2-3*x^4*y)");
        a[{3, 0, 0, 0}] = P("y^3*(12*y+5*x^2)");
        a[{1, 0, 0, 1}] = P("2*(24*y^2*z+18*x^2*y*z+5*x^4*z+60*x*y^3"
                            "+44*x^3*y^2+11*x^5*y+2*x^7)");
        a[{0, 1, 1, 0}] =
            P("-4*(4*y^2*z+x^2*y*z-x^4*z+14*x*y^3+10*x^3*y^2+3*x^5*y)");
        a[{2, 1, 0, 0}] = P("-2*x*y^2*(2*y+x^2)");
        a[{0, 1, 0, 1}] = P("4*(4*x*y*z+3*x^3*z+36*y^3+27*x^2*y^2+8*x^4*y"
                            "+2*x^6)");
        a[{0, 0, 2, 0}] = P("4*x*y*z+5*x^3*z-76*y^3-41*x^2*y^2-8*x^4*y+x^6");
        a[{2, 0, 1, 0}] = P("y*(4*y^2-x^2*y-x^4)");
        a[{0, 0, 1, 1}] = P("4*(4*y*z+5*x^2*z+18*x*y^2+11*x^3*y+4*x^5)");
        a[{2, 0, 0, 1}] = P("4*x*(3*y^2+3*x^2*y+x^4)");
        a[{1, 1, 1, 0}] = P("-4*x*y*(2*y+x^2)");
        a[{0, 0, 0, 2}] = P("4*(4*x*z+16*y^2+12*x^2*y+5*x^4)");
        a[{1, 1, 0, 1}] = P("4*(y+x^2)*(4*y+3*x^2)");
        a[{1, 0, 2, 0}] = P("-12*y^2-9*x^2*y-x^4");
        a[{1, 0, 1, 1}] = P("4*x*(2*y+3*x^2)");
        a[{0, 2, 0, 1}] = P("8*x*(2*y+x^2)");
        a[{0, 1, 2, 0}] = P("-2*x*(2*y+x^2)");
        a[{1, 0, 0, 2}] = P("16*x^2");
        a[{0, 1, 1, 1}] = P("4*(4*y+3*x^2)");
        a[{0, 0, 3, 0}] = P("-4*y-3*x^2");
        a[{0, 1, 0, 2}] = P("16*x");
        a[{0, 0, 2, 1}] = P("-4*x");

        auto& b = t.b;
        b[{0, 0, 0, 0}] = P("-y^4*(36*y*z+5*x^2*z+6*x*y^2)");
        b[{1, 0, 0, 0}] =
            P("-y^2*(24*y^2*z+26*x^2*y*z+3*x^4*z+26*x*y^3+10*x^3*y^2)");
        b[{0, 1, 0, 0}] =
            P("x*y*(24*y^2*z+18*x^2*y*z+2*x^4*z+39*x*y^3+12*x^3*y^2)");
        b[{0, 0, 1, 0}] = P("24*y^3*z-2*x^2*y^2*z-8*x^4*y*z-x^6*z-46*x*y^4"
                            "-58*x^3*y^3-14*x^5*y^2");
        b[{2, 0, 0, 0}] = P("-y^2*(4*y*z-3*x^2*z+2*x*y^2+x^3*y)");
        b[{0, 0, 0, 1}] = P("-4*(20*x*y^2*z+10*x^3*y*z+x^5*z-15*y^4"
                            "-30*x^2*y^3-20*x^4*y^2-4*x^6*y)");
        b[{1, 1, 0, 0}] = P("2*x*y*(4*y*z-x^2*z-5*x*y^2)");
        b[{1, 0, 1, 0}] = P("8*y^2*z-2*x^2*y*z+x^4*z+4*x*y^3+14*x^3*y^2"
                            "+x^5*y");
        b[{0, 2, 0, 0}] = P("-4*x^2*y*(z-x*y)");
        b[{3, 0, 0, 0}] = P("2*x*y^3");
        b[{1, 0, 0, 1}] = P("2*(2*x^3*z+28*y^3+8*x^2*y^2-8*x^4*y-x^6)");
        b[{0, 1, 1, 0}] = P("-2*x*(4*y*z-x^2*z-3*x*y^2+2*x^3*y)");
        b[{2, 1, 0, 0}] = P("-x^2*y^2");
        b[{0, 1, 0, 1}] = P("4*x*(2*x*z-22*y^2-14*x^2*y-x^4)");
        b[{0, 0, 2, 0}] = P("-4*y*z+3*x^2*z+22*x*y^2+7*x^3*y+2*x^5");
        b[{2, 0, 1, 0}] = P("2*x*y^2");
        b[{0, 0, 1, 1}] = P("8*(2*x*z-y^2-x^2*y+x^4)");
        b[{2, 0, 0, 1}] = P("12*y^2+x^4");
        b[{1, 1, 1, 0}] = P("-2*x^2*y");
        b[{0, 0, 0, 2}] = P("16*(z+x*y+x^3)");
        b[{1, 1, 0, 1}] = P("-4*x*(2*y-x^2)");
        b[{1, 0, 2, 0}] = P("-2*x*y");
        b[{1, 0, 1, 1}] = P("-8*(y-x^2)");
        b[{0, 2, 0, 1}] = P("4*x^2");
        b[{0, 1, 2, 0}] = P("-x^2");
        b[{1, 0, 0, 2}] = P("16*x");
        b[{0, 1, 1, 1}] = P("8*x");
        b[{0, 0, 3, 0}] = P("-2*x");
        b[{0, 1, 0, 2}] = P("16");
        b[{0, 0, 2, 1}] = P("-4");
        return t;
    }();
    return t;
}

namespace {

// lambda4^i * lambda6^j * lambda8^k * lambda10^l as a monomial.
MultiPoly lambda_monomial(const std::array<int, 4>& e) {
    auto vs = ring_xyzl();
    ExpVec exps(vs->size(), 0);
    exps[static_cast<std::size_t>(vs->index_of("l4"))] = e[0];
    exps[static_cast<std::size_t>(vs->index_of("l6"))] = e[1];
    exps[static_cast<std::size_t>(vs->index_of("l8"))] = e[2];
    exps[static_cast<std::size_t>(vs->index_of("l10"))] = e[3];
    return MultiPoly::monomial(vs, exps, Rat(1));
}

MultiPoly lambda_single(int w) {
    auto vs = ring_xyzl();
    if (w == 0) return MultiPoly::constant(vs, 1);
    return MultiPoly::variable(vs, "l" + std::to_string(w));
}

MultiPoly assemble(const std::map<int, MultiPoly>& singles,
                   const std::map<std::array<int, 4>, MultiPoly>& grid) {
    MultiPoly acc(ring_xyzl());
    for (const auto& [w, p] : singles) acc += lambda_single(w) * p;
    for (const auto& [e, p] : grid) acc += lambda_monomial(e) * p;
    return acc;
}

} // namespace

MultiPoly DuplicationTables::numerator() const { return assemble(c, a); }

MultiPoly DuplicationTables::denominator() const { return assemble(d, b); }

} // namespace g2fun
