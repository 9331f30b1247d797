#pragma once

#include <array>
#include <utility>

#include "vorcal/poisson.hpp"

namespace vorcal {

// Chart with a declared base/fiber split, base coordinates first; the zero
// section is {fiber = 0}.
class FiberedChart {
  public:
    FiberedChart(ChartPtr total, int base_dim);
    static FiberedChart split(std::vector<std::string> base, std::vector<std::string> fiber);

    const ChartSpec& total() const { return *total_; }
    const ChartPtr& total_ptr() const { return total_; }
    int base_dim() const { return base_dim_; }
    int fiber_dim() const { return total_->dim() - base_dim_; }
    bool is_base(int index) const { return index < base_dim_; }
    int fiber_index(int a) const { return base_dim_ + a; }

    // substitution sending every fiber coordinate to zero
    std::vector<std::optional<ScalarExpr>> zero_section() const;

    bool operator==(const FiberedChart& o) const {
        return *total_ == *o.total_ && base_dim_ == o.base_dim_;
    }

  private:
    ChartPtr total_;
    int base_dim_;
};

// Horizontal lift of d/dq_i is  Xbar_i = d/dq_i + sum_a gamma[a][i] d/dy_a.
class EhresmannConnection {
  public:
    explicit EhresmannConnection(FiberedChart chart) : chart_(std::move(chart)) {}

    const FiberedChart& chart() const { return chart_; }
    void set(int fiber_a, int base_i, ScalarExpr gamma);
    ScalarExpr gamma(int fiber_a, int base_i) const;
    bool flat() const { return gamma_.empty(); }

    MultivectorField lift_basis(int base_i) const;
    // dy_a - sum_i gamma[a][i] dq_i; annihilates the horizontal subbundle
    DifferentialForm vertical_coframe(int fiber_a) const;

  private:
    FiberedChart chart_;
    std::map<std::pair<int, int>, ScalarExpr> gamma_;  // (a, i) -> coefficient
};

// Lift of a vector field with base components only.
MultivectorField horizontal_lift(const MultivectorField& base_field,
                                 const EhresmannConnection& conn);

// Curv(X_i, X_j) = [Xbar_i, Xbar_j] for coordinate fields (their bracket
// vanishes); always vertical.
MultivectorField curvature(const EhresmannConnection& conn, int base_i, int base_j);

// Base-indexed k-form with total-chart coefficients: Omega^k(S) (x) C(N).
class BaseIndexedForm {
  public:
    BaseIndexedForm(FiberedChart chart, int degree);

    const FiberedChart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<MultiIndex, ScalarExpr>& components() const { return comps_; }

    ScalarExpr at(const MultiIndex& idx) const;
    void set(MultiIndex idx, ScalarExpr value);
    void add(const MultiIndex& idx, const ScalarExpr& value);

    // coefficients evaluated on the zero section
    BaseIndexedForm restrict_to_zero_section() const;

    BaseIndexedForm operator-(const BaseIndexedForm& o) const;
    bool operator==(const BaseIndexedForm& o) const {
        return chart_ == o.chart_ && degree_ == o.degree_ && comps_ == o.comps_;
    }

  private:
    FiberedChart chart_;
    int degree_;
    std::map<MultiIndex, ScalarExpr> comps_;
};

// Vorobjev triple (Gamma, nu, phi) on a fibered chart.  Construction
// validates: nu purely vertical; base dimension even and >= 2; omega := phi
// at the zero section closed and nondegenerate there.  (nu need not vanish
// on the zero section; that extra property makes the zero section a leaf and
// is checked where required.)
class GeometricData {
  public:
    GeometricData(EhresmannConnection connection, MultivectorField nu, BaseIndexedForm phi,
                  const EngineConfig& config = {});

    const FiberedChart& chart() const { return connection_.chart(); }
    const EhresmannConnection& connection() const { return connection_; }
    const MultivectorField& nu() const { return nu_; }
    const BaseIndexedForm& phi() const { return phi_; }

    BaseIndexedForm omega() const { return phi_.restrict_to_zero_section(); }
    BaseIndexedForm remainder() const { return phi_ - omega(); }

  private:
    EhresmannConnection connection_;
    MultivectorField nu_;
    BaseIndexedForm phi_;
};

// omega-hat = p* phi extended to annihilate the vertical bundle:
// sum_{i<j} phi_ij dq_i ^ dq_j on the total chart.
DifferentialForm coupling_form(const GeometricData& data);

// mu = sum_{i<j} (-Phi^{-1})_{ij} Xbar_i ^ Xbar_j.  The matrix map
// Phi |-> -Phi^{-1} is fixed by the required component outputs; with it the
// coupling identity holds as  omega-hat(mu a, mu b) = +mu(a, b).
// Throws DataError when det Phi vanishes on the zero section or the inverse
// has a pole there.
MultivectorField horizontal_coupling_bivector(const GeometricData& data,
                                              const EngineConfig& config = {});

struct ConditionResult {
    int condition = 0;  // 1..4
    bool passed = true;
    bool inconclusive = false;
    Regime regime = Regime::Exact;
    std::vector<Witness> witnesses;
};

struct IntegrabilityReport {
    std::array<ConditionResult, 4> conditions;

    bool integrable() const {
        for (auto& c : conditions)
            if (!c.passed || c.inconclusive) return false;
        return true;
    }
    Regime regime() const {
        for (auto& c : conditions)
            if (c.regime == Regime::Numeric) return Regime::Numeric;
        return Regime::Exact;
    }
};

// The four integrability conditions over the coordinate base frame:
//   1.  [nu, nu] = 0
//   2.  [Xbar_i, nu] = 0
//   3.  Curv(X_i, X_j) = nu(., d(omega-hat(Xbar_i, Xbar_j)))   (second slot)
//   4.  d omega-hat on lift triples = 0, cross-checked against the
//       partial-gamma path (the two paths must agree exactly).
IntegrabilityReport integrability_check(const GeometricData& data, const EngineConfig& config = {});

// mu + nu without the integrability gate (status Unverified).
PoissonStructure assemble(const GeometricData& data, const EngineConfig& config = {});

// Checked composition: requires integrability, re-verifies Jacobi.
PoissonStructure compose(const GeometricData& data, const EngineConfig& config = {});

// Inverse of compose: horizontal nondegeneracy and the leaf property at the
// zero section are required; satisfies compose(decompose(pi)) == pi.
GeometricData decompose(const PoissonStructure& pi, const FiberedChart& chart,
                        const EngineConfig& config = {});

// (partial_Gamma F)(X_{i0},...,X_{ik}) = sum_j (-1)^j Xbar_{ij}(F(..hat..))
// over the coordinate base frame.
BaseIndexedForm partial_gamma(const BaseIndexedForm& f, const EhresmannConnection& conn);

// Frame components of a trivector graded by (horizontal, vertical) slot
// counts; nonzero entries grouped by degree.  Used to match a failed
// integrability condition with the degree component of [pi,pi].
std::map<std::pair<int, int>, std::vector<Witness>> degree_components(
    const MultivectorField& trivector, const EhresmannConnection& conn,
    const ZeroConfig& config = {});

}  // namespace vorcal
