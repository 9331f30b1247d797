#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vorcal/error.hpp"

namespace vorcal {

using Rational = boost::multiprecision::cpp_rational;

// Ordered list of coordinate names; the chart every field lives on.
class ChartSpec {
  public:
    explicit ChartSpec(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view coordinate) const;

    bool operator==(const ChartSpec& o) const { return names_ == o.names_; }
    bool operator!=(const ChartSpec& o) const { return !(*this == o); }

  private:
    std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const ChartSpec>;

ChartPtr make_chart(std::vector<std::string> names);

namespace detail {
struct Fraction;
using FracPtr = std::shared_ptr<const Fraction>;
}  // namespace detail

enum class ZeroVerdict { ProvenZero, ProvenNonzero, NumericallyZero };
enum class Regime { Exact, Numeric };

struct ZeroConfig {
    int samples = 64;
    double epsilon = 1e-9;
    std::uint64_t seed = 0x5ec7a11e5ULL;
};

struct ZeroResult {
    ZeroVerdict verdict = ZeroVerdict::ProvenZero;
    Regime regime = Regime::Exact;
    bool passed() const { return verdict != ZeroVerdict::ProvenNonzero; }
};

// Result of evaluating at a rational point: exact where possible,
// long double on the transcendental path.
struct EvalResult {
    bool exact = false;
    Rational rational;       // valid when exact
    long double approx = 0;  // always set
};

// Exact scalar coefficient function on a chart.  Values are immutable and
// always kept in normal form: a quotient of two collected, atom-sorted
// polynomials in the variables, the constant pi and opaque exp(...) atoms.
// exp atoms are never merged (exp(a)*exp(b) stays a product), so structural
// zero testing on the transcendental path is deliberately incomplete and
// falls back to sampling.
class ScalarExpr {
  public:
    ScalarExpr();  // zero

    static ScalarExpr rational(Rational r);
    static ScalarExpr integer(long long n);
    static ScalarExpr var(int index);
    static ScalarExpr pi();
    static ScalarExpr zero() { return ScalarExpr(); }
    static ScalarExpr one() { return integer(1); }
    static ScalarExpr exp(const ScalarExpr& arg);

    friend ScalarExpr operator+(const ScalarExpr&, const ScalarExpr&);
    friend ScalarExpr operator-(const ScalarExpr&, const ScalarExpr&);
    friend ScalarExpr operator*(const ScalarExpr&, const ScalarExpr&);
    friend ScalarExpr operator/(const ScalarExpr&, const ScalarExpr&);
    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

    ScalarExpr pow(long long k) const;

    // Partial derivative with respect to coordinate index i.
    ScalarExpr diff(int i) const;

    // Substitute variables; repl[i] empty means "keep x_i".  Indices past
    // repl.size() are kept.  Throws EvalError if a denominator collapses.
    ScalarExpr subst(const std::vector<std::optional<ScalarExpr>>& repl) const;

    // Convenience: set one variable to an expression.
    ScalarExpr subst_var(int i, const ScalarExpr& value) const;

    bool is_structural_zero() const;
    bool is_one() const;
    // True when free of exp atoms (pi allowed): the subring where zero
    // testing is decided exactly.
    bool exp_free() const;
    bool pi_free() const;
    std::optional<Rational> as_rational_constant() const;

    int max_var() const;  // -1 when constant
    void collect_vars(std::set<int>& out) const;

    std::size_t hash() const;
    bool operator==(const ScalarExpr& o) const;
    bool operator!=(const ScalarExpr& o) const { return !(*this == o); }

    using Namer = std::function<std::string(int)>;
    std::string str(const Namer& namer) const;
    std::string str(const ChartSpec& chart) const;
    std::string str() const;  // x0, x1, ...

    // Exact evaluation; requires exp-free and pi-free, throws EvalError
    // otherwise or on a pole.
    Rational eval_rational(const std::vector<Rational>& point) const;
    // Long-double evaluation (handles exp and pi); throws EvalError on a pole.
    long double eval_double(const std::vector<Rational>& point) const;
    // Exact when possible, approximate otherwise.
    EvalResult eval(const std::vector<Rational>& point) const;

    const detail::FracPtr& rep() const { return rep_; }
    explicit ScalarExpr(detail::FracPtr rep) : rep_(std::move(rep)) {}

  private:
    detail::FracPtr rep_;
};

// Tri-state zero test.  Exact on the exp-free subring; otherwise samples
// config.samples random rational points with |coordinate| <= 2, avoiding
// poles.  Throws InconclusiveError when every sampled point hits a pole.
ZeroResult is_zero(const ScalarExpr& e, const ZeroConfig& config = {});

}  // namespace vorcal
