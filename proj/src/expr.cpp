#include "vorcal/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace vorcal {

// ---------------------------------------------------------------------------
// ChartSpec
// ---------------------------------------------------------------------------

ChartSpec::ChartSpec(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw ExprError("chart must have at least one coordinate");
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw ExprError("chart coordinate names must be nonempty");
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw ExprError("duplicate coordinate name '" + names_[i] + "' in chart");
    }
}

std::optional<int> ChartSpec::index_of(std::string_view coordinate) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == coordinate) return static_cast<int>(i);
    return std::nullopt;
}

ChartPtr make_chart(std::vector<std::string> names) {
    return std::make_shared<const ChartSpec>(std::move(names));
}

namespace detail {

// ---------------------------------------------------------------------------
// Normal form: Fraction of polynomials over atoms {variables, pi, exp(...)}
// ---------------------------------------------------------------------------

struct Atom {
    enum class Kind : std::uint8_t { Var, Pi, Exp };
    Kind kind = Kind::Var;
    int var = -1;
    FracPtr arg;  // Exp only
};

int frac_cmp(const Fraction& a, const Fraction& b);

int atom_cmp(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;  // Var < Pi < Exp
    switch (a.kind) {
        case Atom::Kind::Var: return a.var < b.var ? -1 : (a.var > b.var ? 1 : 0);
        case Atom::Kind::Pi: return 0;
        case Atom::Kind::Exp: return frac_cmp(*a.arg, *b.arg);
    }
    return 0;
}

using Monomial = std::vector<std::pair<Atom, int>>;  // sorted by atom, exponents >= 1

int mono_total_degree(const Monomial& m) {
    int d = 0;
    for (auto& [a, e] : m) d += e;
    return d;
}

// Graded lexicographic order (multiplicative, so leading terms of products
// multiply): total degree first, then exponent-vector lex over atoms in
// increasing atom order, larger exponent on the earlier atom winning.
int mono_cmp(const Monomial& a, const Monomial& b) {
    int da = mono_total_degree(a), db = mono_total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i >= a.size()) return -1;  // b has a smaller atom with positive exponent
        if (j >= b.size()) return 1;
        int c = atom_cmp(a[i].first, b[j].first);
        if (c < 0) return 1;   // a has positive exponent on an earlier atom
        if (c > 0) return -1;  // b does
        if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
        ++i, ++j;
    }
    return 0;
}

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) < 0; }
};

using Poly = std::map<Monomial, Rational, MonoLess>;

struct Fraction {
    Poly num;
    Poly den;  // never zero; canonicalized
};

int poly_cmp(const Poly& a, const Poly& b) {
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        int c = mono_cmp(ia->first, ib->first);
        if (c != 0) return c;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

int frac_cmp(const Fraction& a, const Fraction& b) {
    int c = poly_cmp(a.num, b.num);
    if (c != 0) return c;
    return poly_cmp(a.den, b.den);
}

Poly p_const(const Rational& r) {
    Poly p;
    if (r != 0) p.emplace(Monomial{}, r);
    return p;
}

Poly p_one() { return p_const(1); }

bool p_is_zero(const Poly& p) { return p.empty(); }

void p_insert(Poly& p, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly p_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b) p_insert(r, m, c);
    return r;
}

Poly p_neg(const Poly& a) {
    Poly r;
    for (auto& [m, c] : a) r.emplace(m, -c);
    return r;
}

Poly p_sub(const Poly& a, const Poly& b) { return p_add(a, p_neg(b)); }

Monomial m_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = atom_cmp(a[i].first, b[j].first);
        if (c < 0)
            r.push_back(a[i++]);
        else if (c > 0)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

Poly p_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) p_insert(r, m_mul(ma, mb), ca * cb);
    return r;
}

Poly p_scale(const Poly& a, const Rational& s) {
    Poly r;
    if (s == 0) return r;
    for (auto& [m, c] : a) r.emplace(m, c * s);
    return r;
}

// m divides n?  (componentwise exponents)
bool m_divides(const Monomial& m, const Monomial& n) {
    size_t j = 0;
    for (auto& [a, e] : m) {
        while (j < n.size() && atom_cmp(n[j].first, a) < 0) ++j;
        if (j >= n.size() || atom_cmp(n[j].first, a) != 0 || n[j].second < e) return false;
    }
    return true;
}

Monomial m_div(const Monomial& n, const Monomial& m) {
    Monomial r;
    size_t j = 0;
    for (auto& [a, e] : n) {
        int sub = 0;
        if (j < m.size() && atom_cmp(m[j].first, a) == 0) {
            sub = m[j].second;
            ++j;
        }
        if (e - sub > 0) r.emplace_back(a, e - sub);
    }
    return r;
}

// gcd of two monomials (componentwise min).
Monomial m_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = atom_cmp(a[i].first, b[j].first);
        if (c < 0)
            ++i;
        else if (c > 0)
            ++j;
        else {
            r.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
            ++i, ++j;
        }
    }
    return r;
}

// Exact polynomial division in the graded order; nullopt when not divisible.
std::optional<Poly> p_divide_exact(const Poly& a, const Poly& b) {
    if (p_is_zero(b)) return std::nullopt;
    Poly rem = a, quot;
    const auto& ltb = *b.rbegin();
    while (!rem.empty()) {
        const auto& ltr = *rem.rbegin();
        if (!m_divides(ltb.first, ltr.first)) return std::nullopt;
        Monomial qm = m_div(ltr.first, ltb.first);
        Rational qc = ltr.second / ltb.second;
        p_insert(quot, qm, qc);
        Poly stamp;
        stamp.emplace(qm, qc);
        rem = p_sub(rem, p_mul(stamp, b));
    }
    return quot;
}

using BigInt = boost::multiprecision::cpp_int;

// Positive rational g with P/g having coprime integer coefficients.
Rational p_content(const Poly& p) {
    if (p.empty()) return 1;
    BigInt g = 0, l = 1;
    for (auto& [m, c] : p) {
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
        l = boost::multiprecision::lcm(l, denominator(c));
    }
    if (g == 0) g = 1;
    return Rational(g, l);
}

FracPtr make_frac(Poly num, Poly den) {
    if (p_is_zero(den)) throw ExprError("division by an expression that is identically zero");
    if (p_is_zero(num)) return std::make_shared<Fraction>(Fraction{Poly{}, p_one()});

    // fast paths: unit and constant denominators (the overwhelmingly common
    // case in polynomial work)
    if (den.size() == 1 && den.begin()->first.empty()) {
        const Rational& c = den.begin()->second;
        if (c == 1) return std::make_shared<Fraction>(Fraction{std::move(num), std::move(den)});
        Poly scaled;
        for (auto& [m, v] : num) scaled.emplace(m, v / c);
        return std::make_shared<Fraction>(Fraction{std::move(scaled), p_one()});
    }

    // strip common monomial content
    Monomial common;
    bool first = true;
    for (const Poly* p : {&num, &den})
        for (auto& [m, c] : *p) {
            common = first ? m : m_gcd(common, m);
            first = false;
            if (common.empty()) break;
        }
    if (!common.empty()) {
        Poly n2, d2;
        for (auto& [m, c] : num) n2.emplace(m_div(m, common), c);
        for (auto& [m, c] : den) d2.emplace(m_div(m, common), c);
        num = std::move(n2);
        den = std::move(d2);
    }

    // trial exact division both ways
    if (auto q = p_divide_exact(num, den)) {
        num = std::move(*q);
        den = p_one();
    } else if (auto q2 = p_divide_exact(den, num)) {
        num = p_one();
        den = std::move(*q2);
    }

    // canonical scale: denominator primitive with positive leading coefficient
    Rational t = p_content(den);
    if (den.rbegin()->second < 0) t = -t;
    if (t != 1) {
        Poly n2, d2;
        for (auto& [m, c] : num) n2.emplace(m, c / t);
        for (auto& [m, c] : den) d2.emplace(m, c / t);
        num = std::move(n2);
        den = std::move(d2);
    }
    return std::make_shared<Fraction>(Fraction{std::move(num), std::move(den)});
}

FracPtr frac_zero() {
    static FracPtr z = std::make_shared<Fraction>(Fraction{Poly{}, p_one()});
    return z;
}

FracPtr frac_const(const Rational& r) { return make_frac(p_const(r), p_one()); }

// Shared-denominator additions and cross-cancelling products keep the
// rational arithmetic from blowing up when many terms share a determinant
// denominator (the common shape in coupling-bivector computations).

FracPtr f_add(const Fraction& a, const Fraction& b) {
    if (poly_cmp(a.den, b.den) == 0) return make_frac(p_add(a.num, b.num), a.den);
    if (auto q = p_divide_exact(b.den, a.den))  // b.den = a.den * q
        return make_frac(p_add(p_mul(a.num, *q), b.num), b.den);
    if (auto q = p_divide_exact(a.den, b.den))
        return make_frac(p_add(a.num, p_mul(b.num, *q)), a.den);
    return make_frac(p_add(p_mul(a.num, b.den), p_mul(b.num, a.den)), p_mul(a.den, b.den));
}

FracPtr f_neg(const Fraction& a) { return make_frac(p_neg(a.num), a.den); }

FracPtr f_sub(const Fraction& a, const Fraction& b) {
    if (poly_cmp(a.den, b.den) == 0) return make_frac(p_sub(a.num, b.num), a.den);
    if (auto q = p_divide_exact(b.den, a.den))
        return make_frac(p_sub(p_mul(a.num, *q), b.num), b.den);
    if (auto q = p_divide_exact(a.den, b.den))
        return make_frac(p_sub(a.num, p_mul(b.num, *q)), a.den);
    return make_frac(p_sub(p_mul(a.num, b.den), p_mul(b.num, a.den)), p_mul(a.den, b.den));
}

FracPtr f_mul(const Fraction& a, const Fraction& b) {
    Poly an = a.num, bd = b.den, bn = b.num, ad = a.den;
    if (!p_is_zero(an) && !p_is_zero(bd)) {
        if (auto q = p_divide_exact(an, bd)) {
            an = std::move(*q);
            bd = p_one();
        } else if (auto q2 = p_divide_exact(bd, an)) {
            bd = std::move(*q2);
            an = p_one();
        }
    }
    if (!p_is_zero(bn) && !p_is_zero(ad)) {
        if (auto q = p_divide_exact(bn, ad)) {
            bn = std::move(*q);
            ad = p_one();
        } else if (auto q2 = p_divide_exact(ad, bn)) {
            ad = std::move(*q2);
            bn = p_one();
        }
    }
    return make_frac(p_mul(an, bn), p_mul(ad, bd));
}

FracPtr f_div(const Fraction& a, const Fraction& b) {
    if (p_is_zero(b.num)) throw ExprError("division by an expression that is identically zero");
    Fraction recip{b.den, b.num};
    return f_mul(a, recip);
}

FracPtr f_pow(const Fraction& a, long long k) {
    if (k == 0) return frac_const(1);
    bool inv = k < 0;
    unsigned long long n = inv ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
                               : static_cast<unsigned long long>(k);
    Fraction base = a;
    FracPtr acc = frac_const(1);
    while (n) {
        if (n & 1) acc = f_mul(*acc, base);
        Fraction sq = *f_mul(base, base);
        base = sq;
        n >>= 1;
    }
    if (inv) return f_div(Fraction{p_one(), p_one()}, *acc);
    return acc;
}

bool f_has_exp(const Fraction& f);

bool mono_has_exp(const Monomial& m) {
    for (auto& [a, e] : m)
        if (a.kind == Atom::Kind::Exp) return true;
    return false;
}

bool p_has_exp(const Poly& p) {
    for (auto& [m, c] : p)
        if (mono_has_exp(m)) return true;
    return false;
}

bool f_has_exp(const Fraction& f) { return p_has_exp(f.num) || p_has_exp(f.den); }

bool f_has_pi(const Fraction& f);

bool p_has_pi(const Poly& p) {
    for (auto& [m, c] : p)
        for (auto& [a, e] : m) {
            if (a.kind == Atom::Kind::Pi) return true;
            if (a.kind == Atom::Kind::Exp && f_has_pi(*a.arg)) return true;
        }
    return false;
}

bool f_has_pi(const Fraction& f) { return p_has_pi(f.num) || p_has_pi(f.den); }

// derivative of a polynomial is a fraction (exp arguments may be quotients)
FracPtr f_diff(const Fraction& f, int i);

FracPtr p_diff(const Poly& p, int i) {
    FracPtr acc = frac_zero();
    for (auto& [m, c] : p) {
        for (size_t k = 0; k < m.size(); ++k) {
            const Atom& a = m[k].first;
            int e = m[k].second;
            FracPtr da;
            switch (a.kind) {
                case Atom::Kind::Var: da = (a.var == i) ? frac_const(1) : frac_zero(); break;
                case Atom::Kind::Pi: da = frac_zero(); break;
                case Atom::Kind::Exp: {
                    FracPtr darg = f_diff(*a.arg, i);
                    if (p_is_zero(darg->num)) {
                        da = frac_zero();
                    } else {
                        Monomial em{{a, 1}};
                        Poly ep;
                        ep.emplace(em, Rational(1));
                        da = f_mul(Fraction{ep, p_one()}, *darg);
                    }
                    break;
                }
            }
            if (p_is_zero(da->num)) continue;
            // term: c * e * m/a * da
            Monomial rest;
            for (size_t j = 0; j < m.size(); ++j) {
                int ee = m[j].second - (j == k ? 1 : 0);
                if (ee > 0) rest.emplace_back(m[j].first, ee);
            }
            Poly restp;
            restp.emplace(rest, c * e);
            acc = f_add(*acc, *f_mul(Fraction{restp, p_one()}, *da));
        }
    }
    return acc;
}

FracPtr f_diff(const Fraction& f, int i) {
    FracPtr dn = p_diff(f.num, i);
    FracPtr dd = p_diff(f.den, i);
    // (n/d)' = (n' d - n d') / d^2
    Fraction nd{f.num, p_one()}, dd_whole{f.den, p_one()};
    FracPtr t1 = f_mul(*dn, dd_whole);
    FracPtr t2 = f_mul(nd, *dd);
    FracPtr numerator_part = f_sub(*t1, *t2);
    Fraction d2{p_mul(f.den, f.den), p_one()};
    return f_div(*numerator_part, d2);
}

int f_max_var(const Fraction& f);

int p_max_var(const Poly& p) {
    int mv = -1;
    for (auto& [m, c] : p)
        for (auto& [a, e] : m) {
            if (a.kind == Atom::Kind::Var) mv = std::max(mv, a.var);
            if (a.kind == Atom::Kind::Exp) mv = std::max(mv, f_max_var(*a.arg));
        }
    return mv;
}

int f_max_var(const Fraction& f) { return std::max(p_max_var(f.num), p_max_var(f.den)); }

void f_collect_vars(const Fraction& f, std::set<int>& out);

void p_collect_vars(const Poly& p, std::set<int>& out) {
    for (auto& [m, c] : p)
        for (auto& [a, e] : m) {
            if (a.kind == Atom::Kind::Var) out.insert(a.var);
            if (a.kind == Atom::Kind::Exp) f_collect_vars(*a.arg, out);
        }
}

void f_collect_vars(const Fraction& f, std::set<int>& out) {
    p_collect_vars(f.num, out);
    p_collect_vars(f.den, out);
}

std::size_t f_hash(const Fraction& f);

std::size_t combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t rat_hash(const Rational& r) {
    std::size_t h = 1469598103934665603ULL;
    h = combine(h, std::hash<std::string>{}(numerator(r).str()));
    h = combine(h, std::hash<std::string>{}(denominator(r).str()));
    return h;
}

std::size_t p_hash(const Poly& p) {
    std::size_t h = 14695981039346656037ULL;
    for (auto& [m, c] : p) {
        for (auto& [a, e] : m) {
            h = combine(h, static_cast<std::size_t>(a.kind));
            if (a.kind == Atom::Kind::Var) h = combine(h, static_cast<std::size_t>(a.var));
            if (a.kind == Atom::Kind::Exp) h = combine(h, f_hash(*a.arg));
            h = combine(h, static_cast<std::size_t>(e));
        }
        h = combine(h, rat_hash(c));
    }
    return h;
}

std::size_t f_hash(const Fraction& f) { return combine(p_hash(f.num), p_hash(f.den)); }

// --- substitution ----------------------------------------------------------

FracPtr f_subst(const Fraction& f, const std::vector<std::optional<ScalarExpr>>& repl);

FracPtr p_subst(const Poly& p, const std::vector<std::optional<ScalarExpr>>& repl) {
    FracPtr acc = frac_zero();
    for (auto& [m, c] : p) {
        FracPtr term = frac_const(c);
        for (auto& [a, e] : m) {
            FracPtr base;
            switch (a.kind) {
                case Atom::Kind::Var:
                    if (a.var >= 0 && a.var < static_cast<int>(repl.size()) && repl[a.var]) {
                        base = repl[a.var]->rep();
                    } else {
                        Poly vp;
                        vp.emplace(Monomial{{a, 1}}, Rational(1));
                        base = std::make_shared<Fraction>(Fraction{vp, p_one()});
                    }
                    break;
                case Atom::Kind::Pi: {
                    Poly vp;
                    vp.emplace(Monomial{{a, 1}}, Rational(1));
                    base = std::make_shared<Fraction>(Fraction{vp, p_one()});
                    break;
                }
                case Atom::Kind::Exp: {
                    FracPtr sarg = f_subst(*a.arg, repl);
                    if (p_is_zero(sarg->num)) {
                        base = frac_const(1);
                    } else {
                        Atom na{Atom::Kind::Exp, -1, sarg};
                        Poly vp;
                        vp.emplace(Monomial{{na, 1}}, Rational(1));
                        base = std::make_shared<Fraction>(Fraction{vp, p_one()});
                    }
                    break;
                }
            }
            term = f_mul(*term, *f_pow(*base, e));
        }
        acc = f_add(*acc, *term);
    }
    return acc;
}

FracPtr f_subst(const Fraction& f, const std::vector<std::optional<ScalarExpr>>& repl) {
    FracPtr n = p_subst(f.num, repl);
    FracPtr d = p_subst(f.den, repl);
    if (p_is_zero(d->num)) throw EvalError("substitution makes a denominator identically zero");
    return f_div(*n, *d);
}

// --- evaluation -------------------------------------------------------------

Rational p_eval_rational(const Poly& p, const std::vector<Rational>& pt) {
    Rational acc = 0;
    for (auto& [m, c] : p) {
        Rational t = c;
        for (auto& [a, e] : m) {
            if (a.kind != Atom::Kind::Var)
                throw EvalError("exact evaluation requires a rational expression");
            if (a.var < 0 || a.var >= static_cast<int>(pt.size()))
                throw EvalError("evaluation point has too few coordinates");
            Rational base = pt[static_cast<size_t>(a.var)];
            for (int k = 0; k < e; ++k) t *= base;
        }
        acc += t;
    }
    return acc;
}

long double rat_to_ld(const Rational& r) {
    return numerator(r).convert_to<long double>() / denominator(r).convert_to<long double>();
}

long double f_eval_double(const Fraction& f, const std::vector<Rational>& pt);

long double p_eval_double(const Poly& p, const std::vector<Rational>& pt) {
    long double acc = 0;
    for (auto& [m, c] : p) {
        long double t = rat_to_ld(c);
        for (auto& [a, e] : m) {
            long double base = 0;
            switch (a.kind) {
                case Atom::Kind::Var:
                    if (a.var < 0 || a.var >= static_cast<int>(pt.size()))
                        throw EvalError("evaluation point has too few coordinates");
                    base = rat_to_ld(pt[static_cast<size_t>(a.var)]);
                    break;
                case Atom::Kind::Pi: base = 3.141592653589793238462643383279502884L; break;
                case Atom::Kind::Exp: base = std::exp(f_eval_double(*a.arg, pt)); break;
            }
            for (int k = 0; k < e; ++k) t *= base;
        }
        acc += t;
    }
    return acc;
}

long double f_eval_double(const Fraction& f, const std::vector<Rational>& pt) {
    // exact pole detection on the exp/pi-free part of the denominator
    if (!p_has_exp(f.den) && !p_has_pi(f.den)) {
        if (p_eval_rational(f.den, pt) == 0) throw EvalError("pole: denominator vanishes at the point");
        return p_eval_double(f.num, pt) / p_eval_double(f.den, pt);
    }
    long double d = p_eval_double(f.den, pt);
    if (d == 0.0L) throw EvalError("pole: denominator vanishes at the point");
    return p_eval_double(f.num, pt) / d;
}

// --- printing ---------------------------------------------------------------

std::string f_str(const Fraction& f, const ScalarExpr::Namer& namer);

std::string rat_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::string mono_str(const Monomial& m, const ScalarExpr::Namer& namer) {
    std::string s;
    for (auto& [a, e] : m) {
        if (!s.empty()) s += "*";
        switch (a.kind) {
            case Atom::Kind::Var: s += namer(a.var); break;
            case Atom::Kind::Pi: s += "pi"; break;
            case Atom::Kind::Exp: s += "exp(" + f_str(*a.arg, namer) + ")"; break;
        }
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string p_str(const Poly& p, const ScalarExpr::Namer& namer) {
    if (p.empty()) return "0";
    std::string s;
    for (auto& [m, c] : p) {
        Rational ac = c < 0 ? Rational(-c) : c;
        std::string piece;
        if (m.empty())
            piece = rat_str(ac);
        else if (ac == 1)
            piece = mono_str(m, namer);
        else
            piece = rat_str(ac) + "*" + mono_str(m, namer);
        if (s.empty())
            s = (c < 0 ? "-" : "") + piece;
        else
            s += (c < 0 ? " - " : " + ") + piece;
    }
    return s;
}

std::string f_str(const Fraction& f, const ScalarExpr::Namer& namer) {
    bool unit_den = f.den.size() == 1
                    && f.den.begin()->first.empty() && f.den.begin()->second == 1;
    if (unit_den) return p_str(f.num, namer);
    return "(" + p_str(f.num, namer) + ")/(" + p_str(f.den, namer) + ")";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ScalarExpr
// ---------------------------------------------------------------------------

using namespace detail;

ScalarExpr::ScalarExpr() : rep_(frac_zero()) {}

ScalarExpr ScalarExpr::rational(Rational r) { return ScalarExpr(frac_const(r)); }

ScalarExpr ScalarExpr::integer(long long n) { return rational(Rational(n)); }

ScalarExpr ScalarExpr::var(int index) {
    if (index < 0) throw ExprError("variable index must be nonnegative");
    Atom a{Atom::Kind::Var, index, nullptr};
    Poly p;
    p.emplace(Monomial{{a, 1}}, Rational(1));
    return ScalarExpr(std::make_shared<Fraction>(Fraction{p, p_one()}));
}

ScalarExpr ScalarExpr::pi() {
    Atom a{Atom::Kind::Pi, -1, nullptr};
    Poly p;
    p.emplace(Monomial{{a, 1}}, Rational(1));
    return ScalarExpr(std::make_shared<Fraction>(Fraction{p, p_one()}));
}

ScalarExpr ScalarExpr::exp(const ScalarExpr& argument) {
    if (argument.is_structural_zero()) return one();
    Atom a{Atom::Kind::Exp, -1, argument.rep()};
    Poly p;
    p.emplace(Monomial{{a, 1}}, Rational(1));
    return ScalarExpr(std::make_shared<Fraction>(Fraction{p, p_one()}));
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) { return ScalarExpr(f_add(*a.rep_, *b.rep_)); }
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return ScalarExpr(f_sub(*a.rep_, *b.rep_)); }
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) { return ScalarExpr(f_mul(*a.rep_, *b.rep_)); }
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) { return ScalarExpr(f_div(*a.rep_, *b.rep_)); }
ScalarExpr ScalarExpr::operator-() const { return ScalarExpr(f_neg(*rep_)); }

ScalarExpr ScalarExpr::pow(long long k) const { return ScalarExpr(f_pow(*rep_, k)); }

ScalarExpr ScalarExpr::diff(int i) const {
    if (i < 0) throw ExprError("derivative index out of range");
    return ScalarExpr(f_diff(*rep_, i));
}

ScalarExpr ScalarExpr::subst(const std::vector<std::optional<ScalarExpr>>& repl) const {
    return ScalarExpr(f_subst(*rep_, repl));
}

ScalarExpr ScalarExpr::subst_var(int i, const ScalarExpr& value) const {
    std::vector<std::optional<ScalarExpr>> repl(static_cast<size_t>(i) + 1);
    repl[static_cast<size_t>(i)] = value;
    return subst(repl);
}

bool ScalarExpr::is_structural_zero() const { return p_is_zero(rep_->num); }

bool ScalarExpr::is_one() const {
    return rep_->num.size() == 1 && rep_->num.begin()->first.empty() &&
           rep_->num.begin()->second == 1 && rep_->den.size() == 1 &&
           rep_->den.begin()->first.empty() && rep_->den.begin()->second == 1;
}

bool ScalarExpr::exp_free() const { return !f_has_exp(*rep_); }

bool ScalarExpr::pi_free() const { return !(p_has_pi(rep_->num) || p_has_pi(rep_->den)); }

std::optional<Rational> ScalarExpr::as_rational_constant() const {
    if (is_structural_zero()) return Rational(0);
    if (rep_->num.size() == 1 && rep_->num.begin()->first.empty() && rep_->den.size() == 1 &&
        rep_->den.begin()->first.empty())
        return rep_->num.begin()->second / rep_->den.begin()->second;
    return std::nullopt;
}

int ScalarExpr::max_var() const { return f_max_var(*rep_); }

void ScalarExpr::collect_vars(std::set<int>& out) const { f_collect_vars(*rep_, out); }

std::size_t ScalarExpr::hash() const { return f_hash(*rep_); }

bool ScalarExpr::operator==(const ScalarExpr& o) const { return frac_cmp(*rep_, *o.rep_) == 0; }

std::string ScalarExpr::str(const Namer& namer) const { return f_str(*rep_, namer); }

std::string ScalarExpr::str(const ChartSpec& chart) const {
    return str([&chart](int i) { return chart.name(i); });
}

std::string ScalarExpr::str() const {
    return str([](int i) { return "x" + std::to_string(i); });
}

Rational ScalarExpr::eval_rational(const std::vector<Rational>& point) const {
    if (!exp_free() || !pi_free())
        throw EvalError("exact evaluation requires an expression rational in its variables");
    Rational d = p_eval_rational(rep_->den, point);
    if (d == 0) throw EvalError("pole: denominator vanishes at the point");
    return p_eval_rational(rep_->num, point) / d;
}

long double ScalarExpr::eval_double(const std::vector<Rational>& point) const {
    return f_eval_double(*rep_, point);
}

EvalResult ScalarExpr::eval(const std::vector<Rational>& point) const {
    EvalResult r;
    if (exp_free() && pi_free()) {
        r.exact = true;
        r.rational = eval_rational(point);
        r.approx = rat_to_ld(r.rational);
    } else {
        r.exact = false;
        r.approx = eval_double(point);
    }
    return r;
}

// ---------------------------------------------------------------------------
// zero testing
// ---------------------------------------------------------------------------

ZeroResult is_zero(const ScalarExpr& e, const ZeroConfig& config) {
    if (e.is_structural_zero()) return {ZeroVerdict::ProvenZero, Regime::Exact};
    if (e.exp_free()) {
        // nonzero polynomial/rational function in variables (and the
        // transcendental constant pi): nonzero as a function
        return {ZeroVerdict::ProvenNonzero, Regime::Exact};
    }
    std::set<int> vars;
    e.collect_vars(vars);
    int dim = vars.empty() ? 0 : (*vars.rbegin() + 1);

    std::mt19937_64 rng(config.seed ^ e.hash());
    std::uniform_int_distribution<int> den_dist(1, 7);
    int evaluated = 0;
    bool nonzero_seen = false;
    for (int s = 0; s < config.samples && !nonzero_seen; ++s) {
        for (int attempt = 0; attempt < 50; ++attempt) {
            std::vector<Rational> pt(static_cast<size_t>(dim), Rational(0));
            for (int v : vars) {
                int d = den_dist(rng);
                std::uniform_int_distribution<int> num_dist(-2 * d, 2 * d);
                pt[static_cast<size_t>(v)] = Rational(num_dist(rng), d);
            }
            try {
                long double val = e.eval_double(pt);
                ++evaluated;
                if ((val < 0 ? -val : val) >= static_cast<long double>(config.epsilon))
                    nonzero_seen = true;
                break;
            } catch (const EvalError&) {
                continue;  // pole: resample
            }
        }
    }
    if (evaluated == 0)
        throw InconclusiveError("zero test inconclusive: every sampled point hit a pole");
    if (nonzero_seen) return {ZeroVerdict::ProvenNonzero, Regime::Numeric};
    return {ZeroVerdict::NumericallyZero, Regime::Numeric};
}

}  // namespace vorcal
