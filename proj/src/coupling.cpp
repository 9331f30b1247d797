#include "vorcal/coupling.hpp"

#include <algorithm>
#include <functional>

#include "vorcal/parallel.hpp"

namespace vorcal {

// ---------------------------------------------------------------------------
// FiberedChart / EhresmannConnection
// ---------------------------------------------------------------------------

FiberedChart::FiberedChart(ChartPtr total, int base_dim)
    : total_(std::move(total)), base_dim_(base_dim) {
    if (!total_) throw ChartError("fibered chart requires a chart");
    if (base_dim_ < 1 || base_dim_ > total_->dim())
        throw ChartError("fibered chart base dimension out of range");
}

FiberedChart FiberedChart::split(std::vector<std::string> base, std::vector<std::string> fiber) {
    int d = static_cast<int>(base.size());
    for (auto& f : fiber) base.push_back(std::move(f));
    return FiberedChart(make_chart(std::move(base)), d);
}

std::vector<std::optional<ScalarExpr>> FiberedChart::zero_section() const {
    std::vector<std::optional<ScalarExpr>> repl(static_cast<size_t>(total_->dim()));
    for (int a = base_dim_; a < total_->dim(); ++a) repl[static_cast<size_t>(a)] = ScalarExpr::zero();
    return repl;
}

void EhresmannConnection::set(int fiber_a, int base_i, ScalarExpr gamma) {
    if (fiber_a < 0 || fiber_a >= chart_.fiber_dim() || base_i < 0 || base_i >= chart_.base_dim())
        throw ChartError("connection coefficient index out of range");
    if (gamma.max_var() >= chart_.total().dim())
        throw ChartError("connection coefficient references a coordinate outside the chart");
    if (gamma.is_structural_zero())
        gamma_.erase({fiber_a, base_i});
    else
        gamma_[{fiber_a, base_i}] = std::move(gamma);
}

ScalarExpr EhresmannConnection::gamma(int fiber_a, int base_i) const {
    auto it = gamma_.find({fiber_a, base_i});
    return it == gamma_.end() ? ScalarExpr::zero() : it->second;
}

MultivectorField EhresmannConnection::lift_basis(int base_i) const {
    if (base_i < 0 || base_i >= chart_.base_dim())
        throw ChartError("lift index must name a base coordinate");
    MultivectorField x(chart_.total_ptr(), 1);
    x.add({base_i}, ScalarExpr::one());
    for (int a = 0; a < chart_.fiber_dim(); ++a) {
        ScalarExpr g = gamma(a, base_i);
        if (!g.is_structural_zero()) x.add({chart_.fiber_index(a)}, g);
    }
    return x;
}

DifferentialForm EhresmannConnection::vertical_coframe(int fiber_a) const {
    DifferentialForm w(chart_.total_ptr(), 1);
    w.add({chart_.fiber_index(fiber_a)}, ScalarExpr::one());
    for (int i = 0; i < chart_.base_dim(); ++i) {
        ScalarExpr g = gamma(fiber_a, i);
        if (!g.is_structural_zero()) w.add({i}, -g);
    }
    return w;
}

MultivectorField horizontal_lift(const MultivectorField& base_field,
                                 const EhresmannConnection& conn) {
    require_same_chart(base_field.chart(), conn.chart().total(), "horizontal_lift");
    if (base_field.degree() != 1) throw ChartError("horizontal_lift expects a vector field");
    MultivectorField out(conn.chart().total_ptr(), 1);
    for (auto& [idx, coeff] : base_field.components()) {
        if (!conn.chart().is_base(idx[0]))
            throw ChartError("horizontal_lift: input has fiber components");
        out += coeff * conn.lift_basis(idx[0]);
    }
    return out;
}

MultivectorField curvature(const EhresmannConnection& conn, int base_i, int base_j) {
    return lie_bracket(conn.lift_basis(base_i), conn.lift_basis(base_j));
}

// ---------------------------------------------------------------------------
// BaseIndexedForm
// ---------------------------------------------------------------------------

BaseIndexedForm::BaseIndexedForm(FiberedChart chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw ChartError("form degree must be nonnegative");
}

ScalarExpr BaseIndexedForm::at(const MultiIndex& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? ScalarExpr::zero() : it->second;
}

void BaseIndexedForm::set(MultiIndex idx, ScalarExpr value) {
    if (static_cast<int>(idx.size()) != degree_)
        throw ChartError("component index length does not match degree");
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || !chart_.is_base(idx[i]))
            throw ChartError("base-indexed form: index must name a base coordinate");
        if (i > 0 && idx[i - 1] >= idx[i])
            throw ChartError("component index must be strictly increasing");
    }
    if (value.max_var() >= chart_.total().dim())
        throw ChartError("coefficient references a coordinate outside the chart");
    if (value.is_structural_zero())
        comps_.erase(idx);
    else
        comps_[std::move(idx)] = std::move(value);
}

void BaseIndexedForm::add(const MultiIndex& idx, const ScalarExpr& value) {
    if (value.is_structural_zero()) return;
    set(idx, at(idx) + value);
}

BaseIndexedForm BaseIndexedForm::restrict_to_zero_section() const {
    BaseIndexedForm r(chart_, degree_);
    auto repl = chart_.zero_section();
    for (auto& [k, v] : comps_) r.add(k, v.subst(repl));
    return r;
}

BaseIndexedForm BaseIndexedForm::operator-(const BaseIndexedForm& o) const {
    if (!(chart_ == o.chart_) || degree_ != o.degree_)
        throw ChartError("base-indexed form subtraction: shape mismatch");
    BaseIndexedForm r = *this;
    for (auto& [k, v] : o.comps_) r.add(k, -v);
    return r;
}

// ---------------------------------------------------------------------------
// matrix helpers over the expression field
// ---------------------------------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<ScalarExpr>>;

Matrix phi_matrix(const BaseIndexedForm& phi) {
    int d = phi.chart().base_dim();
    Matrix m(static_cast<size_t>(d), std::vector<ScalarExpr>(static_cast<size_t>(d)));
    for (auto& [idx, v] : phi.components()) {
        m[static_cast<size_t>(idx[0])][static_cast<size_t>(idx[1])] = v;
        m[static_cast<size_t>(idx[1])][static_cast<size_t>(idx[0])] = -v;
    }
    return m;
}

ScalarExpr det(const Matrix& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.empty()) return ScalarExpr::one();
    ScalarExpr acc;
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < cols.size(); ++c) {
        const ScalarExpr& e = m[static_cast<size_t>(rows.front())][static_cast<size_t>(cols[c])];
        if (e.is_structural_zero()) continue;
        std::vector<int> subcols;
        subcols.reserve(cols.size() - 1);
        for (size_t cc = 0; cc < cols.size(); ++cc)
            if (cc != c) subcols.push_back(cols[cc]);
        ScalarExpr term = e * det(m, subrows, subcols);
        acc += (c % 2 == 1) ? -term : term;
    }
    return acc;
}

ScalarExpr det(const Matrix& m) {
    std::vector<int> all;
    for (size_t i = 0; i < m.size(); ++i) all.push_back(static_cast<int>(i));
    return det(m, all, all);
}

// inverse via adjugate / determinant
Matrix inverse(const Matrix& m, const ScalarExpr& dt) {
    int n = static_cast<int>(m.size());
    Matrix inv(static_cast<size_t>(n), std::vector<ScalarExpr>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < n; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < n; ++c)
                if (c != i) cols.push_back(c);
            ScalarExpr cof = det(m, rows, cols);
            if (((i + j) % 2) == 1) cof = -cof;
            inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = cof / dt;
        }
    return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeometricData
// ---------------------------------------------------------------------------

GeometricData::GeometricData(EhresmannConnection connection, MultivectorField nu,
                             BaseIndexedForm phi, const EngineConfig& config)
    : connection_(std::move(connection)), nu_(std::move(nu)), phi_(std::move(phi)) {
    const FiberedChart& fc = connection_.chart();
    require_same_chart(nu_.chart(), fc.total(), "geometric data");
    if (!(phi_.chart() == fc)) throw ChartError("geometric data: phi lives on a different chart");
    if (nu_.degree() != 2) throw DataError("geometric data: nu must be a bivector");
    if (phi_.degree() != 2) throw DataError("geometric data: phi must have degree 2");
    for (auto& [idx, v] : nu_.components())
        if (fc.is_base(idx[0]) || fc.is_base(idx[1]))
            throw DataError("geometric data: nu has components touching base indices");
    if (fc.base_dim() < 2 || fc.base_dim() % 2 != 0)
        throw DataError("geometric data: base dimension must be even and at least 2");

    // omega = phi|0 closed and nondegenerate at the zero section
    BaseIndexedForm om = phi_.restrict_to_zero_section();
    DifferentialForm om_form(fc.total_ptr(), 2);
    for (auto& [idx, v] : om.components()) om_form.add(idx, v);
    DifferentialForm dom = d(om_form);
    for (auto& [idx, v] : dom.components()) {
        ZeroResult zr = is_zero(v, config.zero);
        if (zr.verdict == ZeroVerdict::ProvenNonzero)
            throw DataError("geometric data: the zero-section restriction of phi is not closed");
    }
    ScalarExpr det0 = det(phi_matrix(om));
    ZeroResult zr = is_zero(det0, config.zero);
    if (zr.verdict != ZeroVerdict::ProvenNonzero)
        throw DataError("geometric data: phi is degenerate on the zero section");
}

// ---------------------------------------------------------------------------
// coupling form and horizontal coupling bivector
// ---------------------------------------------------------------------------

DifferentialForm coupling_form(const GeometricData& data) {
    DifferentialForm w(data.chart().total_ptr(), 2);
    for (auto& [idx, v] : data.phi().components()) w.add(idx, v);
    return w;
}

MultivectorField horizontal_coupling_bivector(const GeometricData& data,
                                              const EngineConfig& config) {
    const FiberedChart& fc = data.chart();
    Matrix Phi = phi_matrix(data.phi());
    ScalarExpr dt = det(Phi);
    auto zero_repl = fc.zero_section();

    ScalarExpr det_at0;
    try {
        det_at0 = dt.subst(zero_repl);
    } catch (const EvalError&) {
        throw DataError("coupling bivector: determinant has a pole on the zero section");
    }
    ZeroResult zr = is_zero(det_at0, config.zero);
    if (zr.verdict != ZeroVerdict::ProvenNonzero)
        throw DataError("coupling bivector: phi is degenerate on the zero section");

    Matrix inv = inverse(Phi, dt);
    MultivectorField mu(fc.total_ptr(), 2);
    for (int i = 0; i < fc.base_dim(); ++i)
        for (int j = i + 1; j < fc.base_dim(); ++j) {
            ScalarExpr entry = -inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (entry.is_structural_zero()) continue;
            try {
                (void)entry.subst(zero_repl);
            } catch (const EvalError&) {
                throw DataError("coupling bivector: inverse has a pole on the zero section");
            }
            mu += entry * wedge(data.connection().lift_basis(i), data.connection().lift_basis(j));
        }
    return mu;
}

// ---------------------------------------------------------------------------
// integrability
// ---------------------------------------------------------------------------

namespace {

void classify_components(const MultivectorField& field, const std::string& context,
                         ConditionResult& out, const ZeroConfig& config) {
    for (auto& [idx, v] : field.components()) {
        try {
            ZeroResult zr = is_zero(v, config);
            if (zr.verdict == ZeroVerdict::ProvenNonzero) {
                out.passed = false;
                out.witnesses.push_back({idx, v, context});
            } else if (zr.regime == Regime::Numeric) {
                out.regime = Regime::Numeric;
            }
        } catch (const InconclusiveError&) {
            out.inconclusive = true;
            out.witnesses.push_back({idx, v, context + " (inconclusive)"});
        }
    }
}

void classify_scalar(const ScalarExpr& v, const MultiIndex& where, const std::string& context,
                     ConditionResult& out, const ZeroConfig& config) {
    try {
        ZeroResult zr = is_zero(v, config);
        if (zr.verdict == ZeroVerdict::ProvenNonzero) {
            out.passed = false;
            out.witnesses.push_back({where, v, context});
        } else if (zr.regime == Regime::Numeric) {
            out.regime = Regime::Numeric;
        }
    } catch (const InconclusiveError&) {
        out.inconclusive = true;
        out.witnesses.push_back({where, v, context + " (inconclusive)"});
    }
}

}  // namespace

IntegrabilityReport integrability_check(const GeometricData& data, const EngineConfig& config) {
    const FiberedChart& fc = data.chart();
    const int nb = fc.base_dim();
    IntegrabilityReport report;
    for (int c = 0; c < 4; ++c) report.conditions[static_cast<size_t>(c)].condition = c + 1;

    // 1. [nu, nu] = 0
    classify_components(schouten(data.nu(), data.nu()), "[nu,nu]",
                        report.conditions[0], config.zero);

    // 2. [Xbar_i, nu] = 0 over the coordinate base frame
    {
        std::vector<MultivectorField> defects;
        defects.reserve(static_cast<size_t>(nb));
        for (int i = 0; i < nb; ++i)
            defects.push_back(schouten(data.connection().lift_basis(i), data.nu()));
        for (int i = 0; i < nb; ++i)
            classify_components(defects[static_cast<size_t>(i)],
                                "[Xbar_" + fc.total().name(i) + ", nu]", report.conditions[1],
                                config.zero);
    }

    // 3. Curv(X_i,X_j) = nu(., d(omega-hat(Xbar_i,Xbar_j)))  — the second-slot
    // contraction nu(., eta) equals -contract(nu, eta).
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            DifferentialForm dphi = differential(data.phi().at({i, j}), fc.total_ptr());
            MultivectorField defect = curvature(data.connection(), i, j) + contract(data.nu(), dphi);
            classify_components(defect,
                                "curvature defect (" + fc.total().name(i) + "," +
                                    fc.total().name(j) + ")",
                                report.conditions[2], config.zero);
        }

    // 4. d omega-hat on lift triples; equal by construction to the
    // partial-gamma path, and both are computed and compared.
    {
        DifferentialForm dw = d(coupling_form(data));
        BaseIndexedForm pg = partial_gamma(data.phi(), data.connection());
        std::vector<MultiIndex> triples;
        for (int i = 0; i < nb; ++i)
            for (int j = i + 1; j < nb; ++j)
                for (int k = j + 1; k < nb; ++k) triples.push_back({i, j, k});
        std::vector<ScalarExpr> lift_values(triples.size());
        for_each_index(triples.size(), config.parallel, [&](std::size_t t) {
            auto& idx = triples[t];
            lift_values[t] = evaluate(dw, {data.connection().lift_basis(idx[0]),
                                           data.connection().lift_basis(idx[1]),
                                           data.connection().lift_basis(idx[2])});
        });
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const auto& idx = triples[t];
            ScalarExpr path_diff = lift_values[t] - pg.at(idx);
            if (!path_diff.is_structural_zero()) {
                ZeroResult zr = is_zero(path_diff, config.zero);
                if (zr.verdict == ZeroVerdict::ProvenNonzero)
                    throw DataError(
                        "internal: lift-frame and partial-gamma evaluations of condition 4 "
                        "disagree");
            }
            classify_scalar(lift_values[t], idx, "d omega-hat on lifts", report.conditions[3],
                            config.zero);
        }
    }
    return report;
}

PoissonStructure assemble(const GeometricData& data, const EngineConfig& config) {
    MultivectorField pi = horizontal_coupling_bivector(data, config) + data.nu();
    return PoissonStructure{std::move(pi), {}};
}

PoissonStructure compose(const GeometricData& data, const EngineConfig& config) {
    IntegrabilityReport report = integrability_check(data, config);
    if (!report.integrable()) {
        std::string which;
        for (auto& c : report.conditions)
            if (!c.passed || c.inconclusive) which += " " + std::to_string(c.condition);
        throw DataError("compose: integrability conditions failed:" + which);
    }
    PoissonStructure pi = jacobi_check(assemble(data, config).bivector, config);
    if (pi.status.kind != JacobiStatus::Kind::Verified)
        throw DataError("compose: assembled bivector failed Jacobi verification");
    return pi;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

GeometricData decompose(const PoissonStructure& pi, const FiberedChart& chart,
                        const EngineConfig& config) {
    require_same_chart(pi.bivector.chart(), chart.total(), "decompose");
    const int nb = chart.base_dim();
    const int k = chart.fiber_dim();
    const auto& B = pi.bivector;
    auto zero_repl = chart.zero_section();

    // leaf property at the zero section: mixed and fiber-fiber components vanish
    for (auto& [idx, v] : B.components()) {
        bool base0 = chart.is_base(idx[0]), base1 = chart.is_base(idx[1]);
        if (base0 && base1) continue;
        ScalarExpr at0 = v.subst(zero_repl);
        ZeroResult zr = is_zero(at0, config.zero);
        if (zr.verdict == ZeroVerdict::ProvenNonzero)
            throw DataError("decompose: the zero section is not a leaf (component " +
                            chart.total().name(idx[0]) + "," + chart.total().name(idx[1]) +
                            " does not vanish there)");
    }

    // base block and horizontal nondegeneracy at the zero section
    Matrix P(static_cast<size_t>(nb), std::vector<ScalarExpr>(static_cast<size_t>(nb)));
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            ScalarExpr v = B.at({i, j});
            P[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            P[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
        }
    ScalarExpr dtP = det(P);
    ScalarExpr dtP0;
    try {
        dtP0 = dtP.subst(zero_repl);
    } catch (const EvalError&) {
        throw DataError("decompose: base block determinant has a pole on the zero section");
    }
    if (is_zero(dtP0, config.zero).verdict != ZeroVerdict::ProvenNonzero)
        throw DataError("decompose: pi is horizontally degenerate at the zero section");

    Matrix Q = inverse(P, dtP);

    // Gamma[a][j] = (P^{-1} M)[j][a], with M[i][a] = pi(dq_i, dy_a)
    EhresmannConnection conn(chart);
    for (int a = 0; a < k; ++a)
        for (int j = 0; j < nb; ++j) {
            ScalarExpr g;
            for (int i = 0; i < nb; ++i) {
                ScalarExpr m = B.at({i, chart.fiber_index(a)});
                if (!m.is_structural_zero())
                    g += Q[static_cast<size_t>(j)][static_cast<size_t>(i)] * m;
            }
            if (!g.is_structural_zero()) conn.set(a, j, g);
        }

    // mu = sum_{i<j} P_ij Xbar_i ^ Xbar_j ; nu = pi - mu (structurally vertical)
    MultivectorField mu(chart.total_ptr(), 2);
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            const ScalarExpr& v = P[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!v.is_structural_zero())
                mu += v * wedge(conn.lift_basis(i), conn.lift_basis(j));
        }
    MultivectorField nu = B - mu;
    for (auto& [idx, v] : nu.components())
        if (chart.is_base(idx[0]) || chart.is_base(idx[1]))
            throw DataError("decompose: residual vertical part has base components (" +
                            chart.total().name(idx[0]) + "," + chart.total().name(idx[1]) + ")");

    // phi = -P^{-1}
    BaseIndexedForm phi(chart, 2);
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            ScalarExpr v = -Q[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!v.is_structural_zero()) phi.set({i, j}, v);
        }

    return GeometricData(std::move(conn), std::move(nu), std::move(phi), config);
}

// ---------------------------------------------------------------------------
// partial_gamma and degree grading
// ---------------------------------------------------------------------------

BaseIndexedForm partial_gamma(const BaseIndexedForm& f, const EhresmannConnection& conn) {
    const FiberedChart& fc = f.chart();
    if (!(conn.chart() == fc)) throw ChartError("partial_gamma: connection chart mismatch");
    const int nb = fc.base_dim();
    const int k = f.degree();
    BaseIndexedForm out(fc, k + 1);
    if (k + 1 > nb) return out;

    auto lift_deriv = [&](int i, const ScalarExpr& g) {
        ScalarExpr r = g.diff(i);
        for (int a = 0; a < fc.fiber_dim(); ++a) {
            ScalarExpr ga = conn.gamma(a, i);
            if (!ga.is_structural_zero()) r += ga * g.diff(fc.fiber_index(a));
        }
        return r;
    };

    std::vector<int> idx(static_cast<size_t>(k) + 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k + 1) {
            ScalarExpr acc;
            for (int jpos = 0; jpos <= k; ++jpos) {
                MultiIndex rest;
                for (int t = 0; t <= k; ++t)
                    if (t != jpos) rest.push_back(idx[static_cast<size_t>(t)]);
                ScalarExpr val = f.at(rest);
                if (val.is_structural_zero()) continue;
                ScalarExpr term = lift_deriv(idx[static_cast<size_t>(jpos)], val);
                acc += (jpos % 2 == 1) ? -term : term;
            }
            if (!acc.is_structural_zero()) out.add(MultiIndex(idx.begin(), idx.end()), acc);
            return;
        }
        for (int v = start; v < nb; ++v) {
            idx[static_cast<size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

std::map<std::pair<int, int>, std::vector<Witness>> degree_components(
    const MultivectorField& trivector, const EhresmannConnection& conn, const ZeroConfig& config) {
    if (trivector.degree() != 3) throw ChartError("degree_components expects a trivector");
    const FiberedChart& fc = conn.chart();
    require_same_chart(trivector.chart(), fc.total(), "degree_components");

    struct FrameForm {
        DifferentialForm form;
        bool horizontal;
        std::string label;
    };
    std::vector<FrameForm> coframe;
    for (int i = 0; i < fc.base_dim(); ++i) {
        DifferentialForm dq(fc.total_ptr(), 1);
        dq.add({i}, ScalarExpr::one());
        coframe.push_back({std::move(dq), true, "d" + fc.total().name(i)});
    }
    for (int a = 0; a < fc.fiber_dim(); ++a)
        coframe.push_back({conn.vertical_coframe(a), false,
                           "v" + fc.total().name(fc.fiber_index(a))});

    std::map<std::pair<int, int>, std::vector<Witness>> out;
    const int n = static_cast<int>(coframe.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                ScalarExpr v =
                    evaluate(trivector, {coframe[static_cast<size_t>(a)].form,
                                         coframe[static_cast<size_t>(b)].form,
                                         coframe[static_cast<size_t>(c)].form});
                if (v.is_structural_zero()) continue;
                ZeroResult zr = is_zero(v, config);
                if (zr.verdict == ZeroVerdict::ProvenNonzero) {
                    int h = (coframe[static_cast<size_t>(a)].horizontal ? 1 : 0) +
                            (coframe[static_cast<size_t>(b)].horizontal ? 1 : 0) +
                            (coframe[static_cast<size_t>(c)].horizontal ? 1 : 0);
                    std::string label = coframe[static_cast<size_t>(a)].label + "," +
                                        coframe[static_cast<size_t>(b)].label + "," +
                                        coframe[static_cast<size_t>(c)].label;
                    out[{h, 3 - h}].push_back({{a, b, c}, v, label});
                }
            }
    return out;
}

}  // namespace vorcal
