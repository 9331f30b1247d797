#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vorcal/expr.hpp"

namespace vorcal {

// Strictly increasing list of coordinate indices.
using MultiIndex = std::vector<int>;

enum class Variance { Contra, Co };

// Sparse degree-k antisymmetric tensor field on a chart; absent components
// are zero.  Shared container for multivector fields (Contra) and
// differential forms (Co).
template <Variance V>
class TensorField {
  public:
    TensorField(ChartPtr chart, int degree);

    const ChartSpec& chart() const { return *chart_; }
    const ChartPtr& chart_ptr() const { return chart_; }
    int degree() const { return degree_; }
    int dim() const { return chart_->dim(); }

    const std::map<MultiIndex, ScalarExpr>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }

    // Component at a strictly increasing index (zero when absent).
    ScalarExpr at(const MultiIndex& idx) const;
    // Signed component lookup for an arbitrary index tuple.
    ScalarExpr at_any_order(MultiIndex idx) const;

    void set(MultiIndex idx, ScalarExpr value);
    void add(MultiIndex idx, const ScalarExpr& value);
    // Signed insertion: sorts the index, flips sign per permutation parity,
    // kills repeated indices.
    void add_any_order(MultiIndex idx, ScalarExpr value);

    TensorField& operator+=(const TensorField& o);
    TensorField& operator-=(const TensorField& o);
    friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
    friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
    friend TensorField operator*(const ScalarExpr& s, const TensorField& t) {
        TensorField r(t.chart_ptr(), t.degree());
        for (auto& [k, v] : t.components()) r.add(k, s * v);
        return r;
    }
    TensorField operator-() const;

    bool structurally_zero() const { return comps_.empty(); }
    bool operator==(const TensorField& o) const;

    // Substitute coordinates inside every coefficient.
    TensorField subst_coeffs(const std::vector<std::optional<ScalarExpr>>& repl) const;

    std::string str() const;

  private:
    ChartPtr chart_;
    int degree_;
    std::map<MultiIndex, ScalarExpr> comps_;
};

using MultivectorField = TensorField<Variance::Contra>;
using DifferentialForm = TensorField<Variance::Co>;

void require_same_chart(const ChartSpec& a, const ChartSpec& b, const char* op);

// Sign of sorting the concatenation of two disjoint increasing multi-indices;
// 0 when they intersect.
int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out);

template <Variance V>
TensorField<V> wedge(const TensorField<V>& a, const TensorField<V>& b);

// Interior product in the first slot: (i_alpha A)(...) = A(alpha, ...).
MultivectorField contract(const MultivectorField& a, const DifferentialForm& alpha);
// Interior product of a form by a vector field, first slot.
DifferentialForm interior(const MultivectorField& x, const DifferentialForm& w);

// Full evaluation A(alpha_1, ..., alpha_k) / w(X_1, ..., X_k).
ScalarExpr evaluate(const MultivectorField& a, const std::vector<DifferentialForm>& forms);
ScalarExpr evaluate(const DifferentialForm& w, const std::vector<MultivectorField>& vectors);

// <alpha, X> for a 1-form and a vector field.
ScalarExpr pairing(const DifferentialForm& alpha, const MultivectorField& x);

// Exterior derivative.
DifferentialForm d(const DifferentialForm& w);

// Lie bracket of vector fields.
MultivectorField lie_bracket(const MultivectorField& x, const MultivectorField& y);

// Schouten-Nijenhuis bracket, classical (Lichnerowicz) sign convention:
// reduces to the Lie bracket on vector fields, to X(f) on (vector, function),
// is graded antisymmetric with weight -(-1)^((a-1)(b-1)), and satisfies
//   -1/2 [L,L](alpha,beta,gamma)
//      = L(dL(alpha,beta),gamma) + <alpha,[L#beta,L#gamma]> + c.p.
// literally (the normative sign identity for this code base).
MultivectorField schouten(const MultivectorField& a, const MultivectorField& b);

MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& a);
DifferentialForm lie_derivative(const MultivectorField& x, const DifferentialForm& w);

// Smooth map between charts given by one target-coordinate expression per
// component; optional declared inverse (verified on construction).
class ChartMap {
  public:
    ChartMap(ChartPtr source, ChartPtr target, std::vector<ScalarExpr> components,
             std::optional<std::vector<ScalarExpr>> inverse = std::nullopt,
             const ZeroConfig& config = {});

    static ChartMap identity(ChartPtr chart);

    const ChartSpec& source() const { return *source_; }
    const ChartSpec& target() const { return *target_; }
    const ChartPtr& source_ptr() const { return source_; }
    const ChartPtr& target_ptr() const { return target_; }
    const std::vector<ScalarExpr>& components() const { return comps_; }
    bool has_inverse() const { return inverse_.has_value(); }
    const std::vector<ScalarExpr>& inverse_components() const;
    Regime inverse_check_regime() const { return inverse_regime_; }

    // d psi_t / d x_s on the source chart.
    ScalarExpr jacobian(int t, int s) const { return comps_.at(static_cast<size_t>(t)).diff(s); }
    ScalarExpr jacobian_determinant() const;

    // Compose a function on the target with the map: e(psi(x)).
    ScalarExpr pull_function(const ScalarExpr& on_target) const;
    // Compose with the inverse: e(psi^{-1}(y)).
    ScalarExpr push_function(const ScalarExpr& on_source) const;

  private:
    ChartPtr source_;
    ChartPtr target_;
    std::vector<ScalarExpr> comps_;
    std::optional<std::vector<ScalarExpr>> inverse_;
    Regime inverse_regime_ = Regime::Exact;
};

// Transport a multivector field along a chart map with declared inverse:
// contravariant slots transform by the Jacobian, base points through the
// inverse.  Throws ChartError when the inverse is missing or the Jacobian
// determinant vanishes (symbolically or at sampled points).
MultivectorField pushforward(const ChartMap& psi, const MultivectorField& a,
                             const ZeroConfig& config = {});

extern template class TensorField<Variance::Contra>;
extern template class TensorField<Variance::Co>;

}  // namespace vorcal
