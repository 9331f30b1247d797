#include "vorcal/multivec.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace vorcal {

void require_same_chart(const ChartSpec& a, const ChartSpec& b, const char* op) {
    if (a != b) throw ChartError(std::string(op) + ": fields live on different charts");
}

int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    long inversions = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            inversions += static_cast<long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return (inversions % 2 == 0) ? 1 : -1;
}

namespace {

bool strictly_increasing(const MultiIndex& idx) {
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] >= idx[i]) return false;
    return true;
}

// sort an index tuple in place, returning permutation sign (0 on repeats)
int sort_sign(MultiIndex& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

template <Variance V>
TensorField<V>::TensorField(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
    if (!chart_) throw ChartError("tensor field requires a chart");
    if (degree_ < 0) throw ChartError("tensor degree must be nonnegative");
}

template <Variance V>
ScalarExpr TensorField<V>::at(const MultiIndex& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? ScalarExpr::zero() : it->second;
}

template <Variance V>
ScalarExpr TensorField<V>::at_any_order(MultiIndex idx) const {
    int s = sort_sign(idx);
    if (s == 0) return ScalarExpr::zero();
    ScalarExpr v = at(idx);
    return s < 0 ? -v : v;
}

template <Variance V>
void TensorField<V>::set(MultiIndex idx, ScalarExpr value) {
    if (static_cast<int>(idx.size()) != degree_)
        throw ChartError("component index length does not match tensor degree");
    if (!strictly_increasing(idx)) throw ChartError("component index must be strictly increasing");
    if (!idx.empty() && (idx.front() < 0 || idx.back() >= dim()))
        throw ChartError("component index out of chart range");
    if (value.max_var() >= dim())
        throw ChartError("coefficient references a coordinate outside the chart");
    if (value.is_structural_zero())
        comps_.erase(idx);
    else
        comps_[std::move(idx)] = std::move(value);
}

template <Variance V>
void TensorField<V>::add(MultiIndex idx, const ScalarExpr& value) {
    if (value.is_structural_zero()) return;
    ScalarExpr cur = at(idx);
    set(std::move(idx), cur + value);
}

template <Variance V>
void TensorField<V>::add_any_order(MultiIndex idx, ScalarExpr value) {
    int s = sort_sign(idx);
    if (s == 0) return;
    add(std::move(idx), s < 0 ? -value : value);
}

template <Variance V>
TensorField<V>& TensorField<V>::operator+=(const TensorField& o) {
    require_same_chart(chart(), o.chart(), "add");
    if (degree_ != o.degree_) throw ChartError("add: degree mismatch");
    for (auto& [k, v] : o.comps_) add(k, v);
    return *this;
}

template <Variance V>
TensorField<V>& TensorField<V>::operator-=(const TensorField& o) {
    require_same_chart(chart(), o.chart(), "subtract");
    if (degree_ != o.degree_) throw ChartError("subtract: degree mismatch");
    for (auto& [k, v] : o.comps_) add(k, -v);
    return *this;
}

template <Variance V>
TensorField<V> TensorField<V>::operator-() const {
    TensorField r(chart_, degree_);
    for (auto& [k, v] : comps_) r.comps_.emplace(k, -v);
    return r;
}

template <Variance V>
bool TensorField<V>::operator==(const TensorField& o) const {
    return *chart_ == *o.chart_ && degree_ == o.degree_ && comps_ == o.comps_;
}

template <Variance V>
TensorField<V> TensorField<V>::subst_coeffs(const std::vector<std::optional<ScalarExpr>>& repl) const {
    TensorField r(chart_, degree_);
    for (auto& [k, v] : comps_) r.add(k, v.subst(repl));
    return r;
}

template <Variance V>
std::string TensorField<V>::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : comps_) {
        if (!first) os << " + ";
        first = false;
        std::string coeff = v.str(*chart_);
        bool simple = coeff.find_first_of("+-") == std::string::npos ||
                      (coeff.size() && coeff[0] == '(' && coeff.back() == ')');
        if (k.empty()) {
            os << coeff;
            continue;
        }
        os << (simple ? coeff : "(" + coeff + ")") << " ";
        for (size_t i = 0; i < k.size(); ++i) {
            if (i) os << "^";
            os << (V == Variance::Contra ? "@" : "d") << chart_->name(k[i]);
        }
    }
    if (first) os << "0";
    return os.str();
}

template class TensorField<Variance::Contra>;
template class TensorField<Variance::Co>;

template <Variance V>
TensorField<V> wedge(const TensorField<V>& a, const TensorField<V>& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    TensorField<V> r(a.chart_ptr(), a.degree() + b.degree());
    if (r.degree() > a.dim()) return r;  // above top degree everything vanishes
    MultiIndex merged;
    for (auto& [ia, va] : a.components())
        for (auto& [ib, vb] : b.components()) {
            int s = merge_sign(ia, ib, merged);
            if (s == 0) continue;
            ScalarExpr prod = va * vb;
            r.add(merged, s < 0 ? -prod : prod);
        }
    return r;
}

template MultivectorField wedge(const MultivectorField&, const MultivectorField&);
template DifferentialForm wedge(const DifferentialForm&, const DifferentialForm&);

namespace {

template <Variance VA, Variance VB>
TensorField<VA> interior_first_slot(const TensorField<VA>& a, const TensorField<VB>& one) {
    require_same_chart(a.chart(), one.chart(), "contract");
    if (one.degree() != 1) throw ChartError("contraction expects a degree-1 argument");
    if (a.degree() < 1) throw ChartError("contraction expects degree >= 1");
    TensorField<VA> r(a.chart_ptr(), a.degree() - 1);
    for (auto& [idx, coeff] : a.components()) {
        for (size_t pos = 0; pos < idx.size(); ++pos) {
            ScalarExpr c = one.at({idx[pos]});
            if (c.is_structural_zero()) continue;
            MultiIndex rest;
            rest.reserve(idx.size() - 1);
            for (size_t j = 0; j < idx.size(); ++j)
                if (j != pos) rest.push_back(idx[j]);
            ScalarExpr term = c * coeff;
            r.add(rest, (pos % 2 == 1) ? -term : term);
        }
    }
    return r;
}

}  // namespace

MultivectorField contract(const MultivectorField& a, const DifferentialForm& alpha) {
    return interior_first_slot(a, alpha);
}

DifferentialForm interior(const MultivectorField& x, const DifferentialForm& w) {
    return interior_first_slot(w, x);
}

ScalarExpr evaluate(const MultivectorField& a, const std::vector<DifferentialForm>& forms) {
    if (static_cast<int>(forms.size()) != a.degree())
        throw ChartError("evaluate: argument count must equal degree");
    MultivectorField cur = a;
    for (auto& f : forms) cur = contract(cur, f);
    return cur.at({});
}

ScalarExpr evaluate(const DifferentialForm& w, const std::vector<MultivectorField>& vectors) {
    if (static_cast<int>(vectors.size()) != w.degree())
        throw ChartError("evaluate: argument count must equal degree");
    DifferentialForm cur = w;
    for (auto& x : vectors) cur = interior(x, cur);
    return cur.at({});
}

ScalarExpr pairing(const DifferentialForm& alpha, const MultivectorField& x) {
    require_same_chart(alpha.chart(), x.chart(), "pairing");
    if (alpha.degree() != 1 || x.degree() != 1) throw ChartError("pairing expects degree-1 fields");
    ScalarExpr acc;
    for (auto& [k, v] : x.components()) acc += alpha.at(k) * v;
    return acc;
}

DifferentialForm d(const DifferentialForm& w) {
    DifferentialForm r(w.chart_ptr(), w.degree() + 1);
    if (r.degree() > w.dim()) return r;
    MultiIndex merged;
    for (auto& [idx, coeff] : w.components()) {
        for (int j = 0; j < w.dim(); ++j) {
            ScalarExpr dc = coeff.diff(j);
            if (dc.is_structural_zero()) continue;
            MultiIndex dj{j};
            int s = merge_sign(dj, idx, merged);
            if (s == 0) continue;
            r.add(merged, s < 0 ? -dc : dc);
        }
    }
    return r;
}

MultivectorField lie_bracket(const MultivectorField& x, const MultivectorField& y) {
    require_same_chart(x.chart(), y.chart(), "lie_bracket");
    if (x.degree() != 1 || y.degree() != 1)
        throw ChartError("lie_bracket expects two vector fields");
    MultivectorField r(x.chart_ptr(), 1);
    for (auto& [ik, vx] : x.components())
        for (auto& [jk, vy] : y.components()) {
            int i = ik[0], j = jk[0];
            r.add({j}, vx * vy.diff(i));
            r.add({i}, -(vy * vx.diff(j)));
        }
    return r;
}

MultivectorField schouten(const MultivectorField& A, const MultivectorField& B) {
    require_same_chart(A.chart(), B.chart(), "schouten");
    const int a = A.degree(), b = B.degree();
    if (a == 0 && b == 0) return MultivectorField(A.chart_ptr(), 0);
    MultivectorField r(A.chart_ptr(), a + b - 1);
    // classical convention: sigma * (decomposable-axiom monomial formula)
    const int sigma = ((a - 1) * (b - 1)) % 2 ? -1 : 1;
    const int s0 = -sigma;
    MultiIndex merged;
    for (auto& [I, f] : A.components()) {
        for (auto& [J, g] : B.components()) {
            for (size_t jp = 0; jp < J.size(); ++jp) {
                ScalarExpr df = f.diff(J[jp]);
                if (df.is_structural_zero()) continue;
                MultiIndex Jrem;
                for (size_t t = 0; t < J.size(); ++t)
                    if (t != jp) Jrem.push_back(J[t]);
                int ms = merge_sign(Jrem, I, merged);
                if (ms == 0) continue;
                int sign = s0 * ms * (((b - 1 - static_cast<int>(jp)) % 2) ? -1 : 1);
                ScalarExpr term = g * df;
                r.add(merged, sign < 0 ? -term : term);
            }
            for (size_t ip = 0; ip < I.size(); ++ip) {
                ScalarExpr dg = g.diff(I[ip]);
                if (dg.is_structural_zero()) continue;
                MultiIndex Irem;
                for (size_t t = 0; t < I.size(); ++t)
                    if (t != ip) Irem.push_back(I[t]);
                int ms = merge_sign(Irem, J, merged);
                if (ms == 0) continue;
                int sign = ms * (((a - 1 - static_cast<int>(ip)) % 2) ? -1 : 1);
                ScalarExpr term = f * dg;
                r.add(merged, sign < 0 ? -term : term);
            }
        }
    }
    if (sigma < 0) return -r;
    return r;
}

MultivectorField lie_derivative(const MultivectorField& x, const MultivectorField& a) {
    if (x.degree() != 1) throw ChartError("lie_derivative expects a vector field");
    return schouten(x, a);
}

DifferentialForm lie_derivative(const MultivectorField& x, const DifferentialForm& w) {
    if (x.degree() != 1) throw ChartError("lie_derivative expects a vector field");
    if (w.degree() == 0) {
        DifferentialForm r(w.chart_ptr(), 0);
        ScalarExpr f = w.at({});
        ScalarExpr acc;
        for (auto& [k, v] : x.components()) acc += v * f.diff(k[0]);
        r.add({}, acc);
        return r;
    }
    return interior(x, d(w)) + d(interior(x, w));
}

// ---------------------------------------------------------------------------
// ChartMap / pushforward
// ---------------------------------------------------------------------------

namespace {

// Laplace expansion over explicit row/column index lists.
ScalarExpr minor_det(const std::function<ScalarExpr(int, int)>& entry, std::vector<int> rows,
                     std::vector<int> cols) {
    if (rows.empty()) return ScalarExpr::one();
    ScalarExpr acc;
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> subcols;
        subcols.reserve(cols.size() - 1);
        for (size_t cc = 0; cc < cols.size(); ++cc)
            if (cc != c) subcols.push_back(cols[cc]);
        ScalarExpr term = entry(rows.front(), cols[c]) * minor_det(entry, subrows, subcols);
        acc += (c % 2 == 1) ? -term : term;
    }
    return acc;
}

}  // namespace

ChartMap::ChartMap(ChartPtr source, ChartPtr target, std::vector<ScalarExpr> components,
                   std::optional<std::vector<ScalarExpr>> inverse, const ZeroConfig& config)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)),
      inverse_(std::move(inverse)) {
    if (!source_ || !target_) throw ChartError("chart map requires source and target charts");
    if (static_cast<int>(comps_.size()) != target_->dim())
        throw ChartError("chart map needs one component per target coordinate");
    for (auto& c : comps_)
        if (c.max_var() >= source_->dim())
            throw ChartError("chart map component references a coordinate outside the source chart");
    if (inverse_) {
        if (static_cast<int>(inverse_->size()) != source_->dim())
            throw ChartError("declared inverse needs one component per source coordinate");
        for (auto& c : *inverse_)
            if (c.max_var() >= target_->dim())
                throw ChartError("inverse component references a coordinate outside the target chart");
        Regime regime = Regime::Exact;
        std::vector<std::optional<ScalarExpr>> fwd(comps_.begin(), comps_.end());
        for (int i = 0; i < source_->dim(); ++i) {
            ScalarExpr resid = (*inverse_)[static_cast<size_t>(i)].subst(fwd) - ScalarExpr::var(i);
            ZeroResult zr = is_zero(resid, config);
            if (zr.verdict == ZeroVerdict::ProvenNonzero)
                throw ChartError("declared inverse fails to invert source coordinate " +
                                 source_->name(i));
            if (zr.regime == Regime::Numeric) regime = Regime::Numeric;
        }
        std::vector<std::optional<ScalarExpr>> bwd(inverse_->begin(), inverse_->end());
        for (int t = 0; t < target_->dim(); ++t) {
            ScalarExpr resid = comps_[static_cast<size_t>(t)].subst(bwd) - ScalarExpr::var(t);
            ZeroResult zr = is_zero(resid, config);
            if (zr.verdict == ZeroVerdict::ProvenNonzero)
                throw ChartError("declared inverse fails to invert target coordinate " +
                                 target_->name(t));
            if (zr.regime == Regime::Numeric) regime = Regime::Numeric;
        }
        inverse_regime_ = regime;
    }
}

ChartMap ChartMap::identity(ChartPtr chart) {
    std::vector<ScalarExpr> comps, inv;
    for (int i = 0; i < chart->dim(); ++i) {
        comps.push_back(ScalarExpr::var(i));
        inv.push_back(ScalarExpr::var(i));
    }
    ChartPtr target = chart;
    return ChartMap(std::move(chart), std::move(target), std::move(comps), std::move(inv));
}

const std::vector<ScalarExpr>& ChartMap::inverse_components() const {
    if (!inverse_) throw ChartError("chart map has no declared inverse");
    return *inverse_;
}

ScalarExpr ChartMap::jacobian_determinant() const {
    int n = target_->dim();
    if (n != source_->dim()) throw ChartError("jacobian determinant needs equal dimensions");
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    return minor_det([this](int t, int s) { return jacobian(t, s); }, all, all);
}

ScalarExpr ChartMap::pull_function(const ScalarExpr& on_target) const {
    std::vector<std::optional<ScalarExpr>> repl(comps_.begin(), comps_.end());
    return on_target.subst(repl);
}

ScalarExpr ChartMap::push_function(const ScalarExpr& on_source) const {
    const auto& inv = inverse_components();
    std::vector<std::optional<ScalarExpr>> repl(inv.begin(), inv.end());
    return on_source.subst(repl);
}

MultivectorField pushforward(const ChartMap& psi, const MultivectorField& a,
                             const ZeroConfig& config) {
    require_same_chart(psi.source(), a.chart(), "pushforward");
    ZeroResult detz = is_zero(psi.jacobian_determinant(), config);
    if (detz.verdict != ZeroVerdict::ProvenNonzero)
        throw ChartError("pushforward: Jacobian determinant vanishes (symbolically or at samples)");
    if (!psi.has_inverse()) throw ChartError("pushforward requires a declared inverse");

    const int k = a.degree();
    const int tn = psi.target().dim();
    MultivectorField on_source(psi.source_ptr(), k);
    auto entry = [&psi](int t, int s) { return psi.jacobian(t, s); };
    std::vector<int> J(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            ScalarExpr acc;
            for (auto& [I, coeff] : a.components()) {
                std::vector<int> rows(J.begin(), J.end());
                std::vector<int> cols(I.begin(), I.end());
                acc += minor_det(entry, rows, cols) * coeff;
            }
            if (!acc.is_structural_zero()) on_source.add(MultiIndex(J.begin(), J.end()), acc);
            return;
        }
        for (int v = start; v < tn; ++v) {
            J[static_cast<size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);

    MultivectorField result(psi.target_ptr(), k);
    const auto& inv = psi.inverse_components();
    std::vector<std::optional<ScalarExpr>> repl(inv.begin(), inv.end());
    for (auto& [idx, coeff] : on_source.components()) result.add(idx, coeff.subst(repl));
    return result;
}

}  // namespace vorcal
