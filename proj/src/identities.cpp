#include "vorcal/identities.hpp"

namespace vorcal {

namespace {

// xorshift step; keeps the suite seeds independent of std library details
std::uint64_t next(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

long pick(std::uint64_t& s, long lo, long hi) {
    return lo + static_cast<long>(next(s) % static_cast<std::uint64_t>(hi - lo + 1));
}

DifferentialForm random_one_form(std::uint64_t& state, const ChartPtr& chart) {
    DifferentialForm w(chart, 1);
    for (int i = 0; i < chart->dim(); ++i)
        if (pick(state, 0, 9) < 8) w.add({i}, random_polynomial(state, chart->dim()));
    return w;
}

MultivectorField random_bivector(std::uint64_t& state, const ChartPtr& chart) {
    MultivectorField b(chart, 2);
    for (int i = 0; i < chart->dim(); ++i)
        for (int j = i + 1; j < chart->dim(); ++j)
            if (pick(state, 0, 9) < 7) b.add({i, j}, random_polynomial(state, chart->dim()));
    return b;
}

ScalarExpr bracket_identity_rhs(const MultivectorField& L, const DifferentialForm& al,
                      const DifferentialForm& be, const DifferentialForm& ga) {
    auto term = [&](const DifferentialForm& a, const DifferentialForm& b,
                    const DifferentialForm& c) {
        ScalarExpr lab = evaluate(L, {a, b});
        ScalarExpr t1 = evaluate(L, {differential(lab, L.chart_ptr()), c});
        ScalarExpr t2 = pairing(a, lie_bracket(contract(L, b), contract(L, c)));
        return t1 + t2;
    };
    return term(al, be, ga) + term(be, ga, al) + term(ga, al, be);
}

CheckEntry finish(CheckEntry entry, int failures, int inconclusive, const Stopwatch& sw) {
    entry.millis = sw.millis();
    if (failures > 0)
        entry.outcome = CheckEntry::Outcome::Fail;
    else if (inconclusive > 0)
        entry.outcome = CheckEntry::Outcome::Inconclusive;
    return entry;
}

}  // namespace

ScalarExpr random_polynomial(std::uint64_t& state, int dim, int degree) {
    ScalarExpr e = ScalarExpr::integer(pick(state, -3, 3));
    for (int t = 0; t < 3; ++t) {
        ScalarExpr term = ScalarExpr::integer(pick(state, -2, 2));
        long deg = pick(state, 0, degree);
        for (long d2 = 0; d2 < deg; ++d2)
            term = term * ScalarExpr::var(static_cast<int>(pick(state, 0, dim - 1)));
        e = e + term;
    }
    return e;
}

GeometricData random_geometric_data(std::uint64_t& state, int base_dim, int fiber_dim,
                                    const EngineConfig& config) {
    std::vector<std::string> base, fiber;
    for (int i = 1; i <= base_dim; ++i) base.push_back("q" + std::to_string(i));
    for (int a = 1; a <= fiber_dim; ++a) fiber.push_back("y" + std::to_string(a));
    FiberedChart fc = FiberedChart::split(std::move(base), std::move(fiber));
    const int n = fc.total().dim();

    // sparse instances: the identities are multilinear, so rotating a couple
    // of active slots across many instances covers the index space without
    // blowing up the symbolic matrix inverses
    EhresmannConnection conn(fc);
    for (int t = 0; t < 2; ++t)
        conn.set(static_cast<int>(pick(state, 0, fiber_dim - 1)),
                 static_cast<int>(pick(state, 0, base_dim - 1)),
                 random_polynomial(state, n, 1));

    MultivectorField nu(fc.total_ptr(), 2);
    for (int a = 0; a < fiber_dim; ++a)
        for (int b = a + 1; b < fiber_dim; ++b)
            if (pick(state, 0, 9) < 7)
                nu.add({fc.fiber_index(a), fc.fiber_index(b)}, random_polynomial(state, n, 1));

    // phi = standard symplectic blocks + one remainder term vanishing on the
    // zero section, so nondegeneracy at y = 0 is automatic
    BaseIndexedForm phi(fc, 2);
    for (int i = 0; i + 1 < base_dim; i += 2) phi.set({i, i + 1}, ScalarExpr::one());
    {
        int i = static_cast<int>(pick(state, 0, base_dim - 2));
        int j = static_cast<int>(pick(state, i + 1, base_dim - 1));
        ScalarExpr r = ScalarExpr::var(fc.fiber_index(static_cast<int>(
                           pick(state, 0, fiber_dim - 1)))) *
                       random_polynomial(state, n, 1);
        phi.add({i, j}, r);
    }
    return GeometricData(std::move(conn), std::move(nu), std::move(phi), config);
}

CheckEntry run_bracket_identity_suite(const SuiteOptions& options) {
    Stopwatch sw;
    CheckEntry entry{"bracket identity, random bivectors", "identities.bracket",
                     CheckEntry::Outcome::Pass, Regime::Exact, {}, 0};
    std::uint64_t state = options.seed ^ 0x11ULL;
    int failures = 0, inconclusive = 0;
    std::vector<ChartPtr> charts{make_chart({"x", "y", "z"}),
                                 make_chart({"x", "y", "z", "w"}),
                                 make_chart({"a", "b", "c", "d", "e"})};
    for (int t = 0; t < options.instances; ++t) {
        auto chart = charts[static_cast<size_t>(t) % charts.size()];
        MultivectorField L = random_bivector(state, chart);
        DifferentialForm al = random_one_form(state, chart);
        DifferentialForm be = random_one_form(state, chart);
        DifferentialForm ga = random_one_form(state, chart);
        ScalarExpr lhs = ScalarExpr::rational(Rational(-1, 2)) *
                         evaluate(schouten(L, L), {al, be, ga});
        ScalarExpr defect = lhs - bracket_identity_rhs(L, al, be, ga);
        if (is_zero(defect, options.engine.zero).verdict != ZeroVerdict::ProvenZero) {
            ++failures;
            entry.witnesses.push_back("instance " + std::to_string(t));
        }
    }
    entry.name += " (" + std::to_string(options.instances) + " instances)";
    return finish(std::move(entry), failures, inconclusive, sw);
}

CheckEntry run_coupling_identity_suite(const SuiteOptions& options) {
    Stopwatch sw;
    CheckEntry entry{"coupling-bivector bracket vs d omega-hat", "identities.coupling",
                     CheckEntry::Outcome::Pass, Regime::Exact, {}, 0};
    std::uint64_t state = options.seed ^ 0x22ULL;
    int failures = 0, inconclusive = 0;
    for (int t = 0; t < options.instances; ++t) {
        GeometricData data = random_geometric_data(state, 4, 1, options.engine);
        MultivectorField mu = horizontal_coupling_bivector(data, options.engine);
        MultivectorField br = schouten(mu, mu);
        DifferentialForm dw = d(coupling_form(data));
        int i = static_cast<int>(pick(state, 0, 1)), j = 2, k = 3;
        DifferentialForm ai(data.chart().total_ptr(), 1), aj(data.chart().total_ptr(), 1),
            ak(data.chart().total_ptr(), 1);
        ai.add({i}, ScalarExpr::one());
        aj.add({j}, ScalarExpr::one());
        ak.add({k}, ScalarExpr::one());
        ScalarExpr lhs = ScalarExpr::rational(Rational(1, 2)) * evaluate(br, {ai, aj, ak});
        ScalarExpr rhs =
            evaluate(dw, {contract(mu, ai), contract(mu, aj), contract(mu, ak)});
        if (is_zero(lhs - rhs, options.engine.zero).verdict != ZeroVerdict::ProvenZero) {
            ++failures;
            entry.witnesses.push_back("instance " + std::to_string(t));
        }
    }
    entry.name += " (" + std::to_string(options.instances) + " instances)";
    return finish(std::move(entry), failures, inconclusive, sw);
}

CheckEntry run_mixed_identity_suite(const SuiteOptions& options) {
    Stopwatch sw;
    CheckEntry entry{"mixed bracket vs vertical Lie derivative", "identities.mixed",
                     CheckEntry::Outcome::Pass, Regime::Exact, {}, 0};
    std::uint64_t state = options.seed ^ 0x33ULL;
    int failures = 0, inconclusive = 0;
    for (int t = 0; t < options.instances; ++t) {
        GeometricData data = random_geometric_data(state, 2, 2, options.engine);
        MultivectorField mu = horizontal_coupling_bivector(data, options.engine);
        MultivectorField pi = mu + data.nu();
        MultivectorField br = schouten(pi, pi);
        int i = static_cast<int>(pick(state, 0, 1));
        DifferentialForm al(data.chart().total_ptr(), 1);
        al.add({i}, ScalarExpr::one());
        DifferentialForm v1 = data.connection().vertical_coframe(0);
        DifferentialForm v2 = data.connection().vertical_coframe(1);
        ScalarExpr lhs = ScalarExpr::rational(Rational(-1, 2)) * evaluate(br, {al, v1, v2});
        ScalarExpr rhs = evaluate(schouten(contract(mu, al), data.nu()), {v1, v2});
        if (is_zero(lhs - rhs, options.engine.zero).verdict != ZeroVerdict::ProvenZero) {
            ++failures;
            entry.witnesses.push_back("instance " + std::to_string(t));
        }
    }
    entry.name += " (" + std::to_string(options.instances) + " instances)";
    return finish(std::move(entry), failures, inconclusive, sw);
}

namespace {

PoissonStructure unit_torus() {
    MultivectorField pi(make_chart({"u", "v"}), 2);
    pi.add({0, 1}, ScalarExpr::one());
    return jacobi_check(pi);
}

std::vector<PullbackConnectionData> connection_suite_tables(const EngineConfig& engine) {
    std::vector<PullbackConnectionData> tables;
    // exponential weighted product
    {
        WeightedProductSpec spec({unit_torus(), ScalarExpr::one()},
                                 {lie_poisson(LieAlgebraSpec(1, {}), make_chart({"z"})),
                                  ScalarExpr::exp(ScalarExpr::var(0))});
        PoissonStructure lam = weighted_product(spec, engine);
        FiberedChart fc(lam.chart_ptr(), 2);
        tables.push_back(pullback_connection(lam, fc, leaf_symplectic_form(lam, fc, engine),
                                             engine));
    }
    // so(3) weighted product
    {
        LieAlgebraSpec so3(3, {{0, 1, 2, Rational(1)}, {1, 2, 0, Rational(1)},
                               {2, 0, 1, Rational(1)}});
        ScalarExpr f = ScalarExpr::one() + ScalarExpr::var(0).pow(2) +
                       ScalarExpr::var(1).pow(2) + ScalarExpr::var(2).pow(2);
        WeightedProductSpec spec({unit_torus(), ScalarExpr::one()},
                                 {lie_poisson(so3, make_chart({"x", "y", "z"})), f});
        PoissonStructure lam = weighted_product(spec, engine);
        FiberedChart fc(lam.chart_ptr(), 2);
        tables.push_back(pullback_connection(lam, fc, leaf_symplectic_form(lam, fc, engine),
                                             engine));
    }
    // curved 4-dimensional base with nonvanishing sigma-curvature
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"w"});
        BaseIndexedForm phi(fc, 2);
        phi.set({0, 1}, ScalarExpr::one() + ScalarExpr::var(4) * ScalarExpr::var(0));
        phi.set({2, 3}, ScalarExpr::one() + ScalarExpr::var(4) * ScalarExpr::var(2));
        GeometricData data(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2), phi);
        PoissonStructure pi = compose(data, engine);
        tables.push_back(pullback_connection(pi, fc, leaf_symplectic_form(pi, fc, engine),
                                             engine));
    }
    return tables;
}

}  // namespace

CheckEntry run_connection_identity_suite(const SuiteOptions& options) {
    Stopwatch sw;
    CheckEntry entry{"pullback-connection identities", "identities.connection",
                     CheckEntry::Outcome::Pass, Regime::Exact, {}, 0};
    std::uint64_t state = options.seed ^ 0x44ULL;
    int failures = 0, inconclusive = 0, sections = 0;

    auto tables = connection_suite_tables(options.engine);
    auto verify_zero = [&](const IsoSection& s, const std::string& what) {
        for (int a = 0; a < s.chart().fiber_dim(); ++a)
            if (is_zero(s.coeff(a), options.engine.zero).verdict != ZeroVerdict::ProvenZero) {
                ++failures;
                entry.witnesses.push_back(what);
                return;
            }
    };

    while (sections < options.instances) {
        for (auto& pcd : tables) {
            if (sections >= options.instances) break;
            ++sections;
            const FiberedChart& fc = pcd.chart;
            IsoSection s1(fc), s2(fc);
            for (int a = 0; a < fc.fiber_dim(); ++a) {
                s1.set(a, random_polynomial(state, fc.base_dim(), 1));
                s2.set(a, random_polynomial(state, fc.base_dim(), 1));
            }
            int i = static_cast<int>(pick(state, 0, fc.base_dim() - 1));
            int j = static_cast<int>(pick(state, 0, fc.base_dim() - 1));
            if (j == i) j = (j + 1) % fc.base_dim();
            // (ii)
            IsoSection d2 = nabla_apply(pcd, i, fiber_bracket(pcd, s1, s2)) -
                            fiber_bracket(pcd, nabla_apply(pcd, i, s1), s2) -
                            fiber_bracket(pcd, s1, nabla_apply(pcd, i, s2));
            verify_zero(d2, "derivation identity, section pair " + std::to_string(sections));
            // (iii)
            IsoSection d3 = fiber_bracket(pcd, pcd.curvature(i, j), s1) -
                            curvature_nabla(pcd, i, j, s1);
            verify_zero(d3, "curvature action identity, section " + std::to_string(sections));
            // (i): the isotropy bracket closes (enforced by the conormal
            // restriction) and satisfies Jacobi
            IsoSection s3(fc);
            for (int a = 0; a < fc.fiber_dim(); ++a)
                s3.set(a, random_polynomial(state, fc.base_dim(), 1));
            IsoSection jac = fiber_bracket(pcd, fiber_bracket(pcd, s1, s2), s3) +
                             fiber_bracket(pcd, fiber_bracket(pcd, s2, s3), s1) +
                             fiber_bracket(pcd, fiber_bracket(pcd, s3, s1), s2);
            verify_zero(jac, "isotropy Jacobi identity");
            // (iv) over all coordinate triples of this table
            for (int a1 = 0; a1 < fc.base_dim(); ++a1)
                for (int b1 = a1 + 1; b1 < fc.base_dim(); ++b1)
                    for (int c1 = b1 + 1; c1 < fc.base_dim(); ++c1) {
                        IsoSection total = nabla_apply(pcd, a1, pcd.curvature(b1, c1)) +
                                           nabla_apply(pcd, b1, pcd.curvature(c1, a1)) +
                                           nabla_apply(pcd, c1, pcd.curvature(a1, b1));
                        verify_zero(total, "Bianchi identity");
                    }
        }
    }
    entry.name += " (" + std::to_string(sections) + " randomized sections)";
    return finish(std::move(entry), failures, inconclusive, sw);
}

Report run_identity_suites(const SuiteOptions& options) {
    Report report;
    report.add(run_bracket_identity_suite(options));
    report.add(run_coupling_identity_suite(options));
    report.add(run_mixed_identity_suite(options));
    report.add(run_connection_identity_suite(options));
    return report;
}

}  // namespace vorcal
