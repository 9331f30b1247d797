#pragma once

#include <array>
#include <map>
#include <tuple>

#include "vorcal/multivec.hpp"

namespace vorcal {

// A nonzero component exhibited as evidence for a failed check.
struct Witness {
    MultiIndex index;
    ScalarExpr value;
    std::string context;
};

struct JacobiStatus {
    enum class Kind { Unverified, Verified, Failed, Inconclusive };
    Kind kind = Kind::Unverified;
    // For Verified: the weakest regime that was needed (Numeric when any
    // component needed sampling).
    Regime regime = Regime::Exact;
    std::vector<Witness> witnesses;

    bool verified() const { return kind == Kind::Verified; }
};

struct PoissonStructure {
    MultivectorField bivector;
    JacobiStatus status;

    const ChartSpec& chart() const { return bivector.chart(); }
    const ChartPtr& chart_ptr() const { return bivector.chart_ptr(); }
};

// Structure constants c[i][j][m], antisymmetric in (i,j), satisfying the
// Jacobi identity (checked exactly on construction).
class LieAlgebraSpec {
  public:
    LieAlgebraSpec(int dim, const std::vector<std::tuple<int, int, int, Rational>>& entries);

    int dim() const { return dim_; }
    Rational c(int i, int j, int m) const;

  private:
    int dim_;
    std::map<std::array<int, 3>, Rational> c_;  // keyed with i < j
};

struct CasimirVerdict {
    bool casimir = false;
    Regime regime = Regime::Exact;
    std::vector<Witness> witnesses;
};

struct WeightedFactor {
    PoissonStructure structure;
    ScalarExpr casimir;
};

// Two Poisson factors with designated Casimirs; validated on construction:
// each Casimir annihilates its factor and is nonvanishing on the sampled
// verification set.
class WeightedProductSpec {
  public:
    WeightedProductSpec(WeightedFactor factor1, WeightedFactor factor2,
                        const ZeroConfig& config = {});

    const WeightedFactor& factor1() const { return f1_; }
    const WeightedFactor& factor2() const { return f2_; }

  private:
    WeightedFactor f1_, f2_;
};

struct EngineConfig {
    ZeroConfig zero;
    bool parallel = false;
};

// Classify [pi,pi] componentwise and attach the verdict.
PoissonStructure jacobi_check(const MultivectorField& pi, const EngineConfig& config = {});

// The linear Poisson structure on the dual of the Lie algebra; chart defaults
// to coordinates x1..xk.  Always Verified(exact).
PoissonStructure lie_poisson(const LieAlgebraSpec& algebra, ChartPtr chart = nullptr);

// Recover structure constants from a bivector with homogeneous-linear
// rational components; nullopt when the bivector is not of that shape.
std::optional<LieAlgebraSpec> extract_lie_algebra(const MultivectorField& pi);

// df as a 1-form on the chart.
DifferentialForm differential(const ScalarExpr& f, ChartPtr chart);

// contract(pi, df) = 0, componentwise, with regime labels.
CasimirVerdict casimir_check(const ScalarExpr& f, const PoissonStructure& pi,
                             const ZeroConfig& config = {});

// Bracket of 1-forms on a Poisson manifold:
//   [a, b] = L_{Lam#a} b - L_{Lam#b} a - d(Lam(a,b)).
DifferentialForm koszul_bracket(const DifferentialForm& alpha, const DifferentialForm& beta,
                                const MultivectorField& lambda);

// Chart of the product (factor-1 coordinates first); throws on name clashes.
ChartPtr product_chart(const ChartSpec& a, const ChartSpec& b);

// Re-index an expression on a factor chart into the product chart.
ScalarExpr shift_vars(const ScalarExpr& e, int offset);

// (pr2* f2)(pr1* pi1) + (pr1* f1)(pr2* pi2) on the product chart, with the
// Jacobi verdict computed.
PoissonStructure weighted_product(const WeightedProductSpec& spec, const EngineConfig& config = {});

}  // namespace vorcal
