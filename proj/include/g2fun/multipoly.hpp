#pragma once
//
// Exact sparse multivariate polynomial arithmetic over GMP rationals.
//
// A MultiPoly lives in a ring described by a VarSet (variable names plus
// integer weights for the weighted-degree audit). Terms are kept in a
// std::map under a graded-lexicographic order, so iteration, printing and
// serialization are deterministic. Zero coefficients are never stored.
//
// A RationalFunction is an unreduced numerator/denominator pair; equality
// of f and g is decided by cross multiplication, never by GCD extraction.

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "g2fun/errors.hpp"

namespace g2fun {

using Rat = mpq_class;

// Accepts "n", "-n", "n/d"; canonicalizes sign and gcd.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

// mpq_class(n, d) does not canonicalize; this does.
inline Rat rat(long n, long d = 1) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

struct VarSet {
    std::vector<std::string> names;
    std::vector<int> weights;

    static std::shared_ptr<const VarSet>
    make(const std::vector<std::pair<std::string, int>>& vars);

    std::size_t size() const { return names.size(); }
    // -1 when the name is not present.
    int index_of(std::string_view name) const;
    bool operator==(const VarSet& o) const = default;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

// x, y, z, l4, l6, l8, l10 with weights 2, 4, 6, 4, 6, 8, 10.
VarSetPtr ring_xyzl();
// s, s1, s3, s11, s13, s33, l4, l6, l8, l10; ordinary degree (weights 1,
// except the l's keep 4, 6, 8, 10 so lambda-prefactor audits still work).
VarSetPtr ring_sigma();
// u1, u3 with weights 1, 3.
VarSetPtr ring_u();

using ExpVec = std::vector<int>;

struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

struct WeightedDegree {
    bool homogeneous = false;
    long weight = 0; // meaningful only when homogeneous; 0 for the zero poly
};

class MultiPoly {
  public:
    using TermMap = std::map<ExpVec, Rat, GrlexLess>;

    MultiPoly() = default; // invalid until assigned; kept for containers
    explicit MultiPoly(VarSetPtr vs) : vars_(std::move(vs)) {}

    static MultiPoly constant(VarSetPtr vs, const Rat& c);
    static MultiPoly variable(VarSetPtr vs, std::string_view name);
    static MultiPoly monomial(VarSetPtr vs, ExpVec e, Rat c);

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly operator*(const Rat& c) const;
    MultiPoly& operator*=(const Rat& c);
    MultiPoly pow(unsigned n) const;

    // Total (unweighted) degree; -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int var) const;
    int degree_in(std::string_view name) const;
    // Sum over terms with weighted degree; homogeneous iff all terms agree.
    WeightedDegree weighted_degree() const;

    // Coefficient of var^power, as a polynomial in the same ring with that
    // variable's exponent stripped.
    MultiPoly coeff_of(int var, int power) const;

    MultiPoly derivative(int var) const;
    MultiPoly derivative(std::string_view name) const;

    // Polynomial substitution: images[i] replaces variable i. All images
    // must share one target ring.
    MultiPoly subs(const std::vector<MultiPoly>& images) const;

    // Exact single-divisor division: returns the quotient iff the division
    // is exact, std::nullopt otherwise.
    static std::optional<MultiPoly> divide_exact(const MultiPoly& num,
                                                 const MultiPoly& den);

    template <class T> T eval(const std::vector<T>& point) const;
    Rat eval_rat(const std::map<std::string, Rat>& point) const;
    std::complex<double>
    eval_c(const std::map<std::string, std::complex<double>>& point) const;

    nlohmann::json to_json() const;
    static MultiPoly from_json(VarSetPtr vs, const nlohmann::json& j);
    std::string str() const;

  private:
    VarSetPtr vars_;
    TermMap terms_;

    void add_term(const ExpVec& e, const Rat& c);
    void require_same_ring(const MultiPoly& o) const;
    friend class RationalFunction;
};

inline MultiPoly operator*(const Rat& c, const MultiPoly& p) { return p * c; }

class RationalFunction {
  public:
    RationalFunction() = default;
    RationalFunction(MultiPoly num, MultiPoly den);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    VarSetPtr vars() const { return num_.vars(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;

    bool is_zero() const { return num_.is_zero(); }

    template <class T> T eval(const std::vector<T>& point) const {
        return num_.eval<T>(point) / den_.eval<T>(point);
    }

    nlohmann::json to_json() const;

  private:
    MultiPoly num_, den_;
};

// f == g as rational functions, decided exactly by cross multiplication.
bool cross_equal(const RationalFunction& f, const RationalFunction& g);

// Substitute rational functions for the variables of p.
RationalFunction substitute(const MultiPoly& p,
                            const std::vector<RationalFunction>& images);

// Grammar: sums of products of powers; explicit '*' and '^'; '/' divides by
// a constant factor; parentheses; unary minus. E.g. "-2*x^6*y*z + u1^3/3".
MultiPoly parse_poly(VarSetPtr vs, std::string_view text);

// --- templated implementations -------------------------------------------

namespace detail {
template <class T> T coeff_cast(const Rat& q);
template <> inline Rat coeff_cast<Rat>(const Rat& q) { return q; }
template <> inline double coeff_cast<double>(const Rat& q) {
    return q.get_d();
}
template <>
inline std::complex<double> coeff_cast<std::complex<double>>(const Rat& q) {
    return {q.get_d(), 0.0};
}
} // namespace detail

template <class T> T MultiPoly::eval(const std::vector<T>& point) const {
    if (point.size() != vars_->size())
        throw StructuralError("eval: wrong number of coordinates");
    // Power tables keep the cost linear in the support size.
    std::vector<std::vector<T>> pw(vars_->size());
    for (std::size_t v = 0; v < pw.size(); ++v) {
        int d = degree_in(static_cast<int>(v));
        pw[v].resize(static_cast<std::size_t>(std::max(d, 0)) + 1);
        pw[v][0] = T(1);
        for (int k = 1; k <= d; ++k) pw[v][k] = pw[v][k - 1] * point[v];
    }
    T acc(0);
    for (const auto& [e, c] : terms_) {
        T m = detail::coeff_cast<T>(c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) m = m * pw[v][e[v]];
        acc = acc + m;
    }
    return acc;
}

} // namespace g2fun
