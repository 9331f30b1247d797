#include "vorcal/vorobjev.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace vorcal {

// ---------------------------------------------------------------------------
// IsoSection and ell
// ---------------------------------------------------------------------------

IsoSection::IsoSection(FiberedChart chart)
    : chart_(std::move(chart)),
      coeffs_(static_cast<size_t>(chart_.fiber_dim()), ScalarExpr::zero()) {}

void IsoSection::set(int fiber_a, ScalarExpr coeff) {
    if (fiber_a < 0 || fiber_a >= chart_.fiber_dim())
        throw ChartError("section index out of fiber range");
    if (coeff.max_var() >= chart_.base_dim())
        throw DataError("section coefficient depends on fiber variables");
    coeffs_[static_cast<size_t>(fiber_a)] = std::move(coeff);
}

ScalarExpr IsoSection::coeff(int fiber_a) const {
    if (fiber_a < 0 || fiber_a >= chart_.fiber_dim())
        throw ChartError("section index out of fiber range");
    return coeffs_[static_cast<size_t>(fiber_a)];
}

bool IsoSection::structurally_zero() const {
    for (auto& c : coeffs_)
        if (!c.is_structural_zero()) return false;
    return true;
}

IsoSection IsoSection::operator+(const IsoSection& o) const {
    IsoSection r(chart_);
    for (int a = 0; a < chart_.fiber_dim(); ++a) r.set(a, coeff(a) + o.coeff(a));
    return r;
}

IsoSection IsoSection::operator-(const IsoSection& o) const {
    IsoSection r(chart_);
    for (int a = 0; a < chart_.fiber_dim(); ++a) r.set(a, coeff(a) - o.coeff(a));
    return r;
}

IsoSection IsoSection::operator-() const {
    IsoSection r(chart_);
    for (int a = 0; a < chart_.fiber_dim(); ++a) r.set(a, -coeff(a));
    return r;
}

DifferentialForm IsoSection::as_form() const {
    DifferentialForm w(chart_.total_ptr(), 1);
    for (int a = 0; a < chart_.fiber_dim(); ++a)
        if (!coeff(a).is_structural_zero()) w.add({chart_.fiber_index(a)}, coeff(a));
    return w;
}

ScalarExpr ell(const IsoSection& s) {
    ScalarExpr acc;
    for (int a = 0; a < s.chart().fiber_dim(); ++a)
        acc += s.coeff(a) * ScalarExpr::var(s.chart().fiber_index(a));
    return acc;
}

IsoSection iso_section_from_form(const DifferentialForm& w, const FiberedChart& chart) {
    require_same_chart(w.chart(), chart.total(), "iso_section_from_form");
    if (w.degree() != 1) throw ChartError("iso_section_from_form expects a 1-form");
    IsoSection s(chart);
    for (auto& [idx, v] : w.components()) {
        if (chart.is_base(idx[0]))
            throw DataError("form has base components; not a conormal section");
        if (v.max_var() >= chart.base_dim())
            throw DataError("nonlinear fiber dependence: coefficient of d" +
                            chart.total().name(idx[0]) + " involves fiber variables");
        s.set(idx[0] - chart.base_dim(), v);
    }
    return s;
}

// ---------------------------------------------------------------------------
// pullback connection
// ---------------------------------------------------------------------------

namespace {

// restrict a 1-form to the zero section and certify it is conormal there
IsoSection restrict_conormal(const DifferentialForm& w, const FiberedChart& chart,
                             const char* context) {
    auto repl = chart.zero_section();
    IsoSection s(chart);
    for (auto& [idx, v] : w.components()) {
        ScalarExpr at0 = v.subst(repl);
        if (chart.is_base(idx[0])) {
            if (!at0.is_structural_zero() && is_zero(at0).verdict == ZeroVerdict::ProvenNonzero)
                throw DataError(std::string(context) +
                                ": restriction has a base component along the zero section");
            continue;
        }
        if (!at0.is_structural_zero()) s.set(idx[0] - chart.base_dim(), at0 + s.coeff(idx[0] - chart.base_dim()));
    }
    return s;
}

void require_leaf_at_zero(const MultivectorField& lambda, const FiberedChart& chart,
                          const ZeroConfig& config) {
    auto repl = chart.zero_section();
    for (auto& [idx, v] : lambda.components()) {
        if (chart.is_base(idx[0]) && chart.is_base(idx[1])) continue;
        ScalarExpr at0 = v.subst(repl);
        if (is_zero(at0, config).verdict == ZeroVerdict::ProvenNonzero)
            throw DataError("the zero section is not a symplectic leaf of the structure");
    }
}

}  // namespace

BaseIndexedForm leaf_symplectic_form(const PoissonStructure& lambda, const FiberedChart& chart,
                                     const EngineConfig& config) {
    require_same_chart(lambda.bivector.chart(), chart.total(), "leaf_symplectic_form");
    require_leaf_at_zero(lambda.bivector, chart, config.zero);
    auto repl = chart.zero_section();
    const int nb = chart.base_dim();
    // base block at y = 0
    std::vector<std::vector<ScalarExpr>> P(static_cast<size_t>(nb),
                                           std::vector<ScalarExpr>(static_cast<size_t>(nb)));
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            ScalarExpr v = lambda.bivector.at({i, j}).subst(repl);
            P[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            P[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
        }
    // omega = -P^{-1} via a temporary geometric-data inversion: reuse the
    // coupling-bivector matrix map by treating P as a "phi" and inverting.
    // Here we do it directly with cofactors.
    std::function<ScalarExpr(std::vector<int>, std::vector<int>)> det_rc =
        [&](std::vector<int> rows, std::vector<int> cols) -> ScalarExpr {
        if (rows.empty()) return ScalarExpr::one();
        ScalarExpr acc;
        std::vector<int> sub(rows.begin() + 1, rows.end());
        for (size_t c = 0; c < cols.size(); ++c) {
            const ScalarExpr& e = P[static_cast<size_t>(rows.front())][static_cast<size_t>(cols[c])];
            if (e.is_structural_zero()) continue;
            std::vector<int> subcols;
            for (size_t cc = 0; cc < cols.size(); ++cc)
                if (cc != c) subcols.push_back(cols[cc]);
            ScalarExpr term = e * det_rc(sub, subcols);
            acc += (c % 2 == 1) ? -term : term;
        }
        return acc;
    };
    std::vector<int> all;
    for (int i = 0; i < nb; ++i) all.push_back(i);
    ScalarExpr dt = det_rc(all, all);
    if (is_zero(dt, config.zero).verdict != ZeroVerdict::ProvenNonzero)
        throw DataError("leaf form: base block degenerate on the zero section");

    BaseIndexedForm omega(chart, 2);
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            // (-P^{-1})[i][j] = -cof_{ji}/det
            std::vector<int> rows, cols;
            for (int r = 0; r < nb; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < nb; ++c)
                if (c != i) cols.push_back(c);
            ScalarExpr cof = det_rc(rows, cols);
            if (((i + j) % 2) == 1) cof = -cof;
            ScalarExpr v = -(cof / dt);
            if (!v.is_structural_zero()) omega.set({i, j}, v);
        }
    return omega;
}

PullbackConnectionData pullback_connection(const PoissonStructure& lambda,
                                           const FiberedChart& chart,
                                           const BaseIndexedForm& omega,
                                           const EngineConfig& config) {
    require_same_chart(lambda.bivector.chart(), chart.total(), "pullback_connection");
    if (!(omega.chart() == chart)) throw ChartError("pullback_connection: omega chart mismatch");
    require_leaf_at_zero(lambda.bivector, chart, config.zero);

    PullbackConnectionData pcd{chart, lambda.bivector, omega, {}, {}, {}, true};
    const int nb = chart.base_dim();
    const int nf = chart.fiber_dim();
    auto repl = chart.zero_section();

    // sigma(d/dq_i) = sum_j omega_{ji} dq_j  (the slot making the splitting
    // property hold in the fixed conventions)
    for (int i = 0; i < nb; ++i) {
        DifferentialForm si(chart.total_ptr(), 1);
        for (int j = 0; j < nb; ++j) {
            ScalarExpr w = (j < i) ? omega.at({j, i}) : (j > i ? -omega.at({i, j}) : ScalarExpr::zero());
            if (!w.is_structural_zero()) si.add({j}, w);
        }
        // splitting certificate: Lambda#(sigma_i) = d/dq_i along the zero section
        MultivectorField sharp0 = contract(lambda.bivector, si).subst_coeffs(repl);
        for (int m = 0; m < chart.total().dim(); ++m) {
            ScalarExpr want = (m == i) ? ScalarExpr::one() : ScalarExpr::zero();
            ScalarExpr got = sharp0.at({m});
            if (is_zero(got - want, config.zero).verdict == ZeroVerdict::ProvenNonzero)
                throw DataError("pullback connection: sigma is not a splitting (omega is not "
                                "the leaf form)");
        }
        pcd.sigma.push_back(std::move(si));
    }

    // covariant-derivative table
    pcd.nabla.resize(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i) {
        for (int a = 0; a < nf; ++a) {
            DifferentialForm dya(chart.total_ptr(), 1);
            dya.add({chart.fiber_index(a)}, ScalarExpr::one());
            DifferentialForm br = koszul_bracket(pcd.sigma[static_cast<size_t>(i)], dya,
                                                 lambda.bivector);
            IsoSection s = restrict_conormal(br, chart, "covariant derivative");
            if (!s.structurally_zero()) pcd.flat = false;
            pcd.nabla[static_cast<size_t>(i)].push_back(std::move(s));
        }
    }

    // curvature table (coordinate fields: sigma([X_i, X_j]) = 0)
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            DifferentialForm br = koszul_bracket(pcd.sigma[static_cast<size_t>(i)],
                                                 pcd.sigma[static_cast<size_t>(j)],
                                                 lambda.bivector);
            pcd.curv.emplace(std::make_pair(i, j), restrict_conormal(br, chart, "curvature"));
        }
    return pcd;
}

IsoSection PullbackConnectionData::curvature(int i, int j) const {
    if (i == j) return IsoSection(chart);
    auto it = curv.find({std::min(i, j), std::max(i, j)});
    if (it == curv.end()) throw ChartError("curvature index out of range");
    return (i < j) ? it->second : -it->second;
}

ScalarExpr PullbackConnectionData::ell_curvature(int i, int j) const {
    return ell(curvature(i, j));
}

IsoSection nabla_apply(const PullbackConnectionData& pcd, int base_i, const IsoSection& s) {
    DifferentialForm br = koszul_bracket(pcd.sigma.at(static_cast<size_t>(base_i)), s.as_form(),
                                         pcd.ambient);
    return restrict_conormal(br, pcd.chart, "covariant derivative");
}

IsoSection fiber_bracket(const PullbackConnectionData& pcd, const IsoSection& s1,
                         const IsoSection& s2) {
    DifferentialForm br = koszul_bracket(s1.as_form(), s2.as_form(), pcd.ambient);
    return restrict_conormal(br, pcd.chart, "isotropy bracket");
}

IsoSection curvature_nabla(const PullbackConnectionData& pcd, int i, int j, const IsoSection& s) {
    return nabla_apply(pcd, i, nabla_apply(pcd, j, s)) -
           nabla_apply(pcd, j, nabla_apply(pcd, i, s));
}

// ---------------------------------------------------------------------------
// first approximation (weighted-product linearization pipeline)
// ---------------------------------------------------------------------------

FirstApproximation first_approximation(const WeightedProductSpec& spec,
                                       const EngineConfig& config) {
    const auto& S = spec.factor1().structure;
    const auto& G = spec.factor2().structure;
    if (!spec.factor1().casimir.is_one())
        throw DataError("first approximation: factor-1 Casimir must be identically 1");

    // factor 1 symplectic: nondegenerate bivector
    {
        const int n = S.chart().dim();
        std::vector<std::vector<ScalarExpr>> P(static_cast<size_t>(n),
                                               std::vector<ScalarExpr>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                ScalarExpr v = S.bivector.at({i, j});
                P[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                P[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
            }
        std::function<ScalarExpr(std::vector<int>, std::vector<int>)> det_rc =
            [&](std::vector<int> rows, std::vector<int> cols) -> ScalarExpr {
            if (rows.empty()) return ScalarExpr::one();
            ScalarExpr acc;
            std::vector<int> sub(rows.begin() + 1, rows.end());
            for (size_t c = 0; c < cols.size(); ++c) {
                const ScalarExpr& e =
                    P[static_cast<size_t>(rows.front())][static_cast<size_t>(cols[c])];
                if (e.is_structural_zero()) continue;
                std::vector<int> subcols;
                for (size_t cc = 0; cc < cols.size(); ++cc)
                    if (cc != c) subcols.push_back(cols[cc]);
                ScalarExpr term = e * det_rc(sub, subcols);
                acc += (c % 2 == 1) ? -term : term;
            }
            return acc;
        };
        std::vector<int> all;
        for (int i = 0; i < n; ++i) all.push_back(i);
        if (is_zero(det_rc(all, all), config.zero).verdict != ZeroVerdict::ProvenNonzero)
            throw DataError("first approximation: factor 1 is not symplectic (degenerate)");
    }

    if (!extract_lie_algebra(G.bivector))
        throw DataError("first approximation: factor 2 is not a Lie-Poisson structure");

    // f(0) = 1 exactly
    const ScalarExpr& f = spec.factor2().casimir;
    {
        std::vector<std::optional<ScalarExpr>> zeros(static_cast<size_t>(G.chart().dim()),
                                                     ScalarExpr::zero());
        if (!f.subst(zeros).is_one())
            throw DataError("first approximation: the Casimir must satisfy f(0) = 1");
    }

    // ambient weighted product on the fibered product chart
    PoissonStructure lambda = weighted_product(spec, config);
    FiberedChart chart(lambda.chart_ptr(), S.chart().dim());

    BaseIndexedForm omega = leaf_symplectic_form(lambda, chart, config);
    PullbackConnectionData pcd = pullback_connection(lambda, chart, omega, config);

    // connection from the covariant-derivative table: the homogeneous lift
    // has gamma[a][i] = ell(nabla_i dy_a)
    EhresmannConnection conn(chart);
    for (int i = 0; i < chart.base_dim(); ++i)
        for (int a = 0; a < chart.fiber_dim(); ++a) {
            ScalarExpr g = ell(pcd.nabla[static_cast<size_t>(i)][static_cast<size_t>(a)]);
            if (!g.is_structural_zero()) conn.set(a, i, g);
        }

    // fiber Lie-Poisson bivector from the isotropy brackets
    MultivectorField nu(chart.total_ptr(), 2);
    for (int a = 0; a < chart.fiber_dim(); ++a)
        for (int b = a + 1; b < chart.fiber_dim(); ++b) {
            IsoSection sa(chart), sb(chart);
            sa.set(a, ScalarExpr::one());
            sb.set(b, ScalarExpr::one());
            ScalarExpr v = ell(fiber_bracket(pcd, sa, sb));
            if (!v.is_structural_zero())
                nu.add({chart.fiber_index(a), chart.fiber_index(b)}, v);
        }

    // phi = omega x 1 + ell o R_sigma
    BaseIndexedForm phi = omega;
    for (int i = 0; i < chart.base_dim(); ++i)
        for (int j = i + 1; j < chart.base_dim(); ++j) {
            ScalarExpr v = pcd.ell_curvature(i, j);
            if (!v.is_structural_zero()) phi.add({i, j}, v);
        }

    GeometricData data(std::move(conn), std::move(nu), phi, config);
    PoissonStructure structure = compose(data, config);

    // first jet of f at the fiber origin, written on the product chart
    ScalarExpr jet = ScalarExpr::one();
    {
        std::vector<std::optional<ScalarExpr>> zeros(static_cast<size_t>(G.chart().dim()),
                                                     ScalarExpr::zero());
        for (int a = 0; a < G.chart().dim(); ++a) {
            ScalarExpr da0 = f.diff(a).subst(zeros);
            if (!da0.is_structural_zero())
                jet += da0 * ScalarExpr::var(chart.fiber_index(a));
        }
    }
    return FirstApproximation{std::move(data), std::move(structure), std::move(jet),
                              std::move(pcd)};
}

// ---------------------------------------------------------------------------
// linearizing maps
// ---------------------------------------------------------------------------

MapVerdict verify_linearizing_map(const ChartMap& psi, const PoissonStructure& source,
                                  const PoissonStructure& target, const FiberedChart& chart,
                                  const EngineConfig& config) {
    require_same_chart(psi.source(), chart.total(), "verify_linearizing_map");
    require_same_chart(psi.target(), chart.total(), "verify_linearizing_map");
    require_same_chart(source.bivector.chart(), chart.total(), "verify_linearizing_map");
    require_same_chart(target.bivector.chart(), chart.total(), "verify_linearizing_map");

    MapVerdict verdict;
    auto note = [&](const MultiIndex& where, const ScalarExpr& value, const std::string& ctx,
                    const ZeroResult& zr) {
        if (zr.verdict == ZeroVerdict::ProvenNonzero) {
            verdict.verified = false;
            verdict.witnesses.push_back({where, value, ctx});
        } else if (zr.regime == Regime::Numeric && verdict.regime == Regime::Exact) {
            verdict.regime = Regime::Numeric;
        }
    };

    // invertibility: declared inverse, else certified Jacobian
    if (psi.has_inverse()) {
        verdict.invertibility = psi.inverse_check_regime();
    } else {
        ZeroResult dz = is_zero(psi.jacobian_determinant(), config.zero);
        if (dz.verdict != ZeroVerdict::ProvenNonzero) {
            verdict.verified = false;
            verdict.witnesses.push_back({{}, psi.jacobian_determinant(),
                                         "jacobian determinant not certified nonzero"});
        }
        verdict.invertibility = dz.regime;
    }

    // psi fixes the zero section
    auto repl = chart.zero_section();
    for (int t = 0; t < chart.total().dim(); ++t) {
        ScalarExpr at0 = psi.components()[static_cast<size_t>(t)].subst(repl);
        ScalarExpr want = chart.is_base(t) ? ScalarExpr::var(t) : ScalarExpr::zero();
        ScalarExpr resid = at0 - want;
        if (resid.is_structural_zero()) continue;
        try {
            note({t}, resid, "zero section not fixed at " + chart.total().name(t),
                 is_zero(resid, config.zero));
        } catch (const InconclusiveError&) {
            verdict.inconclusive = true;
            verdict.witnesses.push_back({{t}, resid, "inconclusive zero test"});
        }
    }

    // transport identity (J pi J^T)(x) = target(psi(x)), componentwise
    const int n = chart.total().dim();
    for (int A = 0; A < n; ++A)
        for (int B = A + 1; B < n; ++B) {
            ScalarExpr lhs;
            for (auto& [idx, coeff] : source.bivector.components()) {
                int i = idx[0], j = idx[1];
                ScalarExpr m = psi.jacobian(A, i) * psi.jacobian(B, j) -
                               psi.jacobian(A, j) * psi.jacobian(B, i);
                if (!m.is_structural_zero()) lhs += m * coeff;
            }
            ScalarExpr rhs = psi.pull_function(target.bivector.at({A, B}));
            ScalarExpr resid = lhs - rhs;
            if (resid.is_structural_zero()) continue;
            try {
                note({A, B}, resid,
                     "pushforward component (" + chart.total().name(A) + "," +
                         chart.total().name(B) + ")",
                     is_zero(resid, config.zero));
            } catch (const InconclusiveError&) {
                verdict.inconclusive = true;
                verdict.witnesses.push_back({{A, B}, resid, "inconclusive zero test"});
            }
        }
    return verdict;
}

// ---------------------------------------------------------------------------
// volumes and certificates
// ---------------------------------------------------------------------------

LeafVolumeProfile make_volume_profile(ChartPtr params, int leaf_dim, ScalarExpr volume,
                                      const EngineConfig& config) {
    if (!params || params->dim() < 1) throw DataError("volume profile needs parameters");
    if (leaf_dim < 0 || leaf_dim % 2 != 0)
        throw DataError("volume profile leaf dimension must be even and nonnegative");
    if (volume.max_var() >= params->dim())
        throw DataError("volume expression references an unknown parameter");
    // positivity on sampled parameter values in (0, 2]
    std::mt19937_64 rng(config.zero.seed ^ volume.hash() ^ 0xB01ull);
    std::uniform_int_distribution<int> num(1, 16);
    int checked = 0;
    for (int s = 0; s < std::max(8, config.zero.samples / 4); ++s) {
        std::vector<Rational> pt(static_cast<size_t>(params->dim()));
        for (auto& c : pt) c = Rational(num(rng), 8);
        try {
            long double v = volume.eval_double(pt);
            ++checked;
            if (!(v > 0))
                throw DataError("volume profile not positive at a sampled parameter value");
        } catch (const EvalError&) {
            continue;
        }
    }
    if (checked == 0) throw DataError("volume profile could not be sampled");
    return LeafVolumeProfile{std::move(params), leaf_dim, std::move(volume)};
}

ScalarExpr product_leaf_volume(const ScalarExpr& vol1, int n1, const ScalarExpr& vol2, int n2,
                               const ScalarExpr& a, const ScalarExpr& b) {
    if (n1 < 0 || n2 < 0) throw DataError("half-dimensions must be nonnegative");
    return a.pow(n1) * b.pow(n2) * vol1 * vol2;
}

ObstructionCertificate volume_obstruction(const LeafVolumeProfile& a, const LeafVolumeProfile& b,
                                          const EngineConfig& config) {
    ObstructionCertificate cert;
    auto constant = [&](const LeafVolumeProfile& p, ScalarExpr& witness) {
        bool all_zero = true;
        for (int i = 0; i < p.params->dim(); ++i) {
            ScalarExpr dv = p.volume.diff(i);
            ZeroResult zr = is_zero(dv, config.zero);
            if (zr.verdict == ZeroVerdict::ProvenNonzero) {
                all_zero = false;
                witness = dv;
            }
        }
        return all_zero;
    };
    ScalarExpr wa, wb;
    cert.a_constant = constant(a, wa);
    cert.b_constant = constant(b, wb);
    cert.a_derivative = wa;
    cert.obstruction = !cert.a_constant && cert.b_constant;
    if (cert.obstruction)
        cert.note = "leaf volumes of the first family vary while the second family is constant; "
                    "no volume-preserving leaf correspondence exists";

    // matching mode: solve Vol_B(r2) = Vol_A(r1) when Vol_B = c * r2
    if (b.params->dim() == 1) {
        ScalarExpr r = ScalarExpr::var(0);
        ScalarExpr c = b.volume / r;
        if (c.diff(0).is_structural_zero()) {
            cert.matching = a.volume / c;
        } else {
            ZeroResult zr = is_zero(c.diff(0), config.zero);
            if (zr.verdict != ZeroVerdict::ProvenNonzero)
                cert.matching = a.volume / c;
            else if (cert.note.empty())
                cert.note = "matching not solvable: second profile is not linear in its parameter";
        }
    }
    return cert;
}

SphereClassCertificate sphere_class_certificate(const std::vector<Rational>& grid,
                                                const EngineConfig& config) {
    // closed-form inputs: Vol(T x S^2_{r1}) = 4 pi r1 / (1 + r1^2) and
    // Vol(T x S^2_{r2}) = 4 pi r2, from Vol(T) = 1 and Vol(S^2_r, dA/r) = 4 pi r
    auto rchart = make_chart({"r1"});
    ScalarExpr r = ScalarExpr::var(0);
    ScalarExpr four_pi = ScalarExpr::integer(4) * ScalarExpr::pi();
    ScalarExpr volA = product_leaf_volume(ScalarExpr::one(), 1, four_pi * r, 1,
                                          ScalarExpr::one() / (ScalarExpr::one() + r.pow(2)),
                                          ScalarExpr::one());
    ScalarExpr volB = product_leaf_volume(ScalarExpr::one(), 1, four_pi * r, 1, ScalarExpr::one(),
                                          ScalarExpr::one());
    LeafVolumeProfile A = make_volume_profile(rchart, 4, volA, config);
    LeafVolumeProfile B = make_volume_profile(rchart, 4, volB, config);

    SphereClassCertificate cert;
    auto ob = volume_obstruction(A, B, config);
    if (!ob.matching) throw DataError("sphere-class certificate: volume matching not solvable");
    cert.matching = *ob.matching;

    cert.difference = r - cert.matching;
    cert.numerator = r.pow(3);
    cert.denominator = ScalarExpr::one() + r.pow(2);
    // difference == r^3 / (1 + r^2) exactly, with numerator and denominator
    // each proven nonzero (both manifestly positive for r > 0)
    ScalarExpr resid = cert.difference - cert.numerator / cert.denominator;
    cert.symbolic = resid.is_structural_zero() &&
                    is_zero(cert.numerator, config.zero).verdict == ZeroVerdict::ProvenNonzero &&
                    is_zero(cert.denominator, config.zero).verdict == ZeroVerdict::ProvenNonzero;

    cert.all_mismatch = !grid.empty();
    for (const Rational& r1 : grid) {
        if (r1 <= 0) throw DataError("sphere-class grid values must be positive (r1 = 0 is the "
                                     "degenerate leaf limit)");
        SphereClassSample s;
        s.r1 = r1;
        s.volume_match = cert.matching.eval_rational({r1});
        s.sphere_class = r1;
        s.mismatch = (s.volume_match != s.sphere_class);
        if (!s.mismatch) cert.all_mismatch = false;
        cert.samples.push_back(std::move(s));
    }
    return cert;
}

}  // namespace vorcal
