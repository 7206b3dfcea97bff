#include "g2fun/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace g2fun {

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw StructuralError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::shared_ptr<const VarSet>
VarSet::make(const std::vector<std::pair<std::string, int>>& vars) {
    auto vs = std::make_shared<VarSet>();
    for (const auto& [n, w] : vars) {
        vs->names.push_back(n);
        vs->weights.push_back(w);
    }
    return vs;
}

int VarSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

VarSetPtr ring_xyzl() {
    static VarSetPtr vs = VarSet::make({{"x", 2},
                                        {"y", 4},
                                        {"z", 6},
                                        {"l4", 4},
                                        {"l6", 6},
                                        {"l8", 8},
                                        {"l10", 10}});
    return vs;
}

VarSetPtr ring_sigma() {
    static VarSetPtr vs = VarSet::make({{"s", 1},
                                        {"s1", 1},
                                        {"s3", 1},
                                        {"s11", 1},
                                        {"s13", 1},
                                        {"s33", 1},
                                        {"l4", 4},
                                        {"l6", 6},
                                        {"l8", 8},
                                        {"l10", 10}});
    return vs;
}

VarSetPtr ring_u() {
    static VarSetPtr vs = VarSet::make({{"u1", 1}, {"u3", 3}});
    return vs;
}

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                        b.end());
}

MultiPoly MultiPoly::constant(VarSetPtr vs, const Rat& c) {
    MultiPoly p(vs);
    if (c != 0) p.terms_.emplace(ExpVec(vs->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(VarSetPtr vs, std::string_view name) {
    int i = vs->index_of(name);
    if (i < 0)
        throw StructuralError("variable not in ring: " + std::string(name));
    ExpVec e(vs->size(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(vs, std::move(e), Rat(1));
}

MultiPoly MultiPoly::monomial(VarSetPtr vs, ExpVec e, Rat c) {
    if (e.size() != vs->size())
        throw StructuralError("monomial: exponent vector length mismatch");
    for (int k : e)
        if (k < 0) throw StructuralError("monomial: negative exponent");
    MultiPoly p(vs);
    if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return *vars_ == *o.vars_ && terms_ == o.terms_;
}

void MultiPoly::require_same_ring(const MultiPoly& o) const {
    if (!(*vars_ == *o.vars_))
        throw StructuralError("operands live in different rings");
}

void MultiPoly::add_term(const ExpVec& e, const Rat& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_ring(o);
    MultiPoly r(vars_);
    ExpVec e(vars_->size());
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
    MultiPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

MultiPoly& MultiPoly::operator*=(const Rat& c) {
    *this = *this * c;
    return *this;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly acc = constant(vars_, 1);
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1u) acc *= base;
        n >>= 1u;
        if (n > 0) base *= base;
    }
    return acc;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        d = std::max(d, s);
    }
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
}

int MultiPoly::degree_in(std::string_view name) const {
    int i = vars_->index_of(name);
    if (i < 0)
        throw StructuralError("degree_in: unknown variable " +
                              std::string(name));
    return degree_in(i);
}

WeightedDegree MultiPoly::weighted_degree() const {
    WeightedDegree wd;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long w = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            w += static_cast<long>(e[i]) * vars_->weights[i];
        if (first) {
            wd.weight = w;
            wd.homogeneous = true;
            first = false;
        } else if (w != wd.weight) {
            wd.homogeneous = false;
            wd.weight = 0;
            return wd;
        }
    }
    if (first) { // zero polynomial: homogeneous of every weight
        wd.homogeneous = true;
        wd.weight = 0;
    }
    return wd;
}

MultiPoly MultiPoly::coeff_of(int var, int power) const {
    MultiPoly r(vars_);
    auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_)
        if (e[v] == power) {
            ExpVec e2 = e;
            e2[v] = 0;
            r.terms_.emplace(std::move(e2), c);
        }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly r(vars_);
    auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_)
        if (e[v] > 0) {
            ExpVec e2 = e;
            e2[v] -= 1;
            r.add_term(e2, c * e[v]);
        }
    return r;
}

MultiPoly MultiPoly::derivative(std::string_view name) const {
    int i = vars_->index_of(name);
    if (i < 0)
        throw StructuralError("derivative: unknown variable " +
                              std::string(name));
    return derivative(i);
}

MultiPoly MultiPoly::subs(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_->size())
        throw StructuralError("subs: need one image per variable");
    VarSetPtr target = images.empty() ? vars_ : images[0].vars();
    for (const auto& g : images)
        if (!(*g.vars() == *target))
            throw StructuralError("subs: images in different rings");
    // Power tables over the images.
    std::vector<std::vector<MultiPoly>> pw(images.size());
    for (std::size_t v = 0; v < images.size(); ++v) {
        int d = degree_in(static_cast<int>(v));
        pw[v].reserve(static_cast<std::size_t>(d) + 1);
        pw[v].push_back(MultiPoly::constant(target, 1));
        for (int k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * images[v]);
    }
    MultiPoly acc(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly m = MultiPoly::constant(target, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) m *= pw[v][static_cast<std::size_t>(e[v])];
        acc += m;
    }
    return acc;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& num,
                                                 const MultiPoly& den) {
    num.require_same_ring(den);
    if (den.is_zero()) throw StructuralError("divide_exact: zero divisor");
    MultiPoly q(num.vars_);
    MultiPoly r = num;
    const auto& lead = *den.terms_.rbegin(); // grlex-largest term
    while (!r.is_zero()) {
        const auto& top = *r.terms_.rbegin();
        ExpVec e(top.first.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = top.first[i] - lead.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        Rat c = top.second / lead.second;
        MultiPoly t = MultiPoly::monomial(num.vars_, e, c);
        q += t;
        r -= t * den;
    }
    return q;
}

Rat MultiPoly::eval_rat(const std::map<std::string, Rat>& point) const {
    std::vector<Rat> v;
    v.reserve(vars_->size());
    for (const auto& n : vars_->names) {
        auto it = point.find(n);
        if (it == point.end())
            throw StructuralError("eval: missing assignment for " + n);
        v.push_back(it->second);
    }
    return eval<Rat>(v);
}

std::complex<double> MultiPoly::eval_c(
    const std::map<std::string, std::complex<double>>& point) const {
    std::vector<std::complex<double>> v;
    v.reserve(vars_->size());
    for (const auto& n : vars_->names) {
        auto it = point.find(n);
        if (it == point.end())
            throw StructuralError("eval: missing assignment for " + n);
        v.push_back(it->second);
    }
    return eval<std::complex<double>>(v);
}

nlohmann::json MultiPoly::to_json() const {
    nlohmann::json j;
    j["vars"] = vars_->names;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::json t;
        t["exps"] = e;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

MultiPoly MultiPoly::from_json(VarSetPtr vs, const nlohmann::json& j) {
    const auto& names = j.at("vars");
    if (names.size() != vs->size())
        throw StructuralError("from_json: variable count mismatch");
    for (std::size_t i = 0; i < vs->size(); ++i)
        if (names[i].get<std::string>() != vs->names[i])
            throw StructuralError("from_json: variable name mismatch");
    MultiPoly p(vs);
    for (const auto& t : j.at("terms")) {
        ExpVec e = t.at("exps").get<ExpVec>();
        Rat num = rat_from_string(t.at("num").get<std::string>());
        Rat den = rat_from_string(t.at("den").get<std::string>());
        if (den == 0) throw StructuralError("from_json: zero denominator");
        p.add_term(e, num / den);
    }
    return p;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        std::ostringstream vars;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any_var) vars << "*";
            vars << vars_->names[i];
            if (e[i] > 1) vars << "^" << e[i];
            any_var = true;
        }
        if (!any_var) {
            os << rat_to_string(a);
        } else if (a == 1) {
            os << vars.str();
        } else {
            os << rat_to_string(a) << "*" << vars.str();
        }
    }
    return os.str();
}

// --- rational functions ---------------------------------------------------

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    num_.require_same_ring(den_);
    if (den_.is_zero())
        throw StructuralError("rational function with zero denominator");
}

RationalFunction RationalFunction::operator-() const {
    return {-num_, den_};
}

RationalFunction
RationalFunction::operator+(const RationalFunction& o) const {
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunction
RationalFunction::operator-(const RationalFunction& o) const {
    return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}

RationalFunction
RationalFunction::operator*(const RationalFunction& o) const {
    return {num_ * o.num_, den_ * o.den_};
}

RationalFunction
RationalFunction::operator/(const RationalFunction& o) const {
    if (o.num_.is_zero())
        throw StructuralError("division by the zero rational function");
    return {num_ * o.den_, den_ * o.num_};
}

nlohmann::json RationalFunction::to_json() const {
    nlohmann::json j;
    j["num"] = num_.to_json();
    j["den"] = den_.to_json();
    return j;
}

bool cross_equal(const RationalFunction& f, const RationalFunction& g) {
    return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

RationalFunction substitute(const MultiPoly& p,
                            const std::vector<RationalFunction>& images) {
    if (images.size() != p.vars()->size())
        throw StructuralError("substitute: need one image per variable");
    VarSetPtr target = images.empty() ? p.vars() : images[0].vars();
    // Common denominator: product over v of den_v^{E_v} with E_v the
    // largest exponent of v in p; each term then clears to a polynomial.
    std::vector<int> emax(images.size(), 0);
    for (std::size_t v = 0; v < images.size(); ++v)
        emax[v] = p.degree_in(static_cast<int>(v));
    std::vector<std::vector<MultiPoly>> npow(images.size()),
        dpow(images.size());
    for (std::size_t v = 0; v < images.size(); ++v) {
        npow[v].push_back(MultiPoly::constant(target, 1));
        dpow[v].push_back(MultiPoly::constant(target, 1));
        for (int k = 1; k <= emax[v]; ++k) {
            npow[v].push_back(npow[v].back() * images[v].num());
            dpow[v].push_back(dpow[v].back() * images[v].den());
        }
    }
    MultiPoly num(target);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly m = MultiPoly::constant(target, c);
        for (std::size_t v = 0; v < e.size(); ++v) {
            m *= npow[v][static_cast<std::size_t>(e[v])];
            m *= dpow[v][static_cast<std::size_t>(emax[v] - e[v])];
        }
        num += m;
    }
    MultiPoly den = MultiPoly::constant(target, 1);
    for (std::size_t v = 0; v < images.size(); ++v)
        den *= dpow[v][static_cast<std::size_t>(emax[v])];
    return {std::move(num), std::move(den)};
}

// --- parser ---------------------------------------------------------------

namespace {

struct Parser {
    VarSetPtr vs;
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw StructuralError("parse error at offset " + std::to_string(pos) +
                              ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    MultiPoly parse_expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        MultiPoly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc += parse_term();
            } else if (c == '-') {
                ++pos;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly parse_term() {
        MultiPoly acc = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc *= parse_factor();
            } else if (c == '/') {
                ++pos;
                MultiPoly d = parse_factor();
                if (d.term_count() != 1 || d.total_degree() != 0)
                    fail("'/' needs a constant divisor");
                Rat c0 = d.terms().begin()->second;
                if (c0 == 0) fail("division by zero");
                acc *= Rat(1) / c0;
            } else {
                return acc;
            }
        }
    }

    MultiPoly parse_factor() {
        MultiPoly base = parse_base();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() &&
                   std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            if (pos == start) fail("expected exponent");
            unsigned long n =
                std::stoul(std::string(s.substr(start, pos - start)));
            return base.pow(static_cast<unsigned>(n));
        }
        return base;
    }

    MultiPoly parse_base() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            MultiPoly e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') { // unary minus inside a product, e.g. 2*(-x)
            ++pos;
            return -parse_base();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            Rat q = rat_from_string(std::string(s.substr(start, pos - start)));
            return MultiPoly::constant(vs, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                    s[pos] == '_'))
                ++pos;
            std::string name(s.substr(start, pos - start));
            if (vs->index_of(name) < 0) fail("unknown variable " + name);
            return MultiPoly::variable(vs, name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

MultiPoly parse_poly(VarSetPtr vs, std::string_view text) {
    Parser p{std::move(vs), text};
    MultiPoly r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace g2fun
