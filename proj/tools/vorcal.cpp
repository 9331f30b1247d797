// vorcal: exact checks for Poisson structures near a symplectic leaf.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vorcal/builtins.hpp"
#include "vorcal/identities.hpp"
#include "vorcal/report.hpp"

using namespace vorcal;

namespace {

struct CliState {
    std::string format = "text";
    std::string parallel = "off";
    std::uint64_t seed = ZeroConfig{}.seed;
    int samples = 64;
    double epsilon = 1e-9;
    std::vector<std::string> files;

    EngineConfig engine() const {
        EngineConfig cfg;
        cfg.zero.samples = samples;
        cfg.zero.epsilon = epsilon;
        cfg.zero.seed = seed;
        cfg.parallel = (parallel == "on");
        return cfg;
    }
};

Definitions load_definitions(const CliState& state) {
    Definitions defs = builtin_definitions(state.engine());
    for (auto& path : state.files) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open definition file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        Definitions file_defs = parse_definitions(buf.str(), state.engine());
        merge_definitions(defs, file_defs);
    }
    return defs;
}

std::string witness_string(const Witness& w, const ChartSpec& chart) {
    std::string s;
    if (!w.index.empty()) {
        s += "(";
        for (size_t i = 0; i < w.index.size(); ++i)
            s += (i ? "," : "") + chart.name(w.index[i]);
        s += ") ";
    }
    s += w.value.str(chart);
    if (!w.context.empty()) s += "  [" + w.context + "]";
    return s;
}

// resolve a Poisson structure from a bivector or product declaration
PoissonStructure resolve_structure(const Definitions& defs, const std::string& name,
                                   const EngineConfig& engine) {
    if (defs.products.count(name)) return weighted_product(defs.build_product(name, engine), engine);
    return defs.build_structure(name, engine);
}

CheckEntry jacobi_entry(const std::string& name, const PoissonStructure& p) {
    CheckEntry e{"jacobi: " + name, "jacobi.check", CheckEntry::Outcome::Pass, p.status.regime,
                 {}, 0};
    switch (p.status.kind) {
        case JacobiStatus::Kind::Verified: e.outcome = CheckEntry::Outcome::Pass; break;
        case JacobiStatus::Kind::Failed: e.outcome = CheckEntry::Outcome::Fail; break;
        default: e.outcome = CheckEntry::Outcome::Inconclusive; break;
    }
    for (auto& w : p.status.witnesses) e.witnesses.push_back(witness_string(w, p.chart()));
    if (e.outcome == CheckEntry::Outcome::Pass)
        e.witnesses.push_back("pi = " + p.bivector.str());
    return e;
}

int emit(const Report& report, const CliState& state) {
    if (state.format == "json")
        std::cout << report.json() << "\n";
    else
        std::cout << report.text();
    return report.exit_code();
}

void condition_entries(Report& report, const IntegrabilityReport& ir, const ChartSpec& chart) {
    for (auto& c : ir.conditions) {
        CheckEntry e{"integrability condition " + std::to_string(c.condition),
                     "integrability.cond" + std::to_string(c.condition),
                     c.inconclusive ? CheckEntry::Outcome::Inconclusive
                     : c.passed     ? CheckEntry::Outcome::Pass
                                    : CheckEntry::Outcome::Fail,
                     c.regime,
                     {},
                     0};
        for (auto& w : c.witnesses) e.witnesses.push_back(witness_string(w, chart));
        report.add(std::move(e));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coupling-structure checks for Poisson manifolds near a symplectic leaf"};
    app.require_subcommand(1);

    CliState state;
    app.add_option("--format", state.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", state.seed, "random seed for sampled zero tests");
    app.add_option("--samples", state.samples, "sample count for numeric zero tests");
    app.add_option("--epsilon", state.epsilon, "numeric zero threshold");
    app.add_option("--parallel", state.parallel, "parallel sweeps")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--file", state.files, "additional definition file(s)");

    std::string arg_name, arg_second, arg_third;
    std::string grid_csv = "1/10,1/2,1,2";
    int instances = 50;

    auto* cmd_jacobi = app.add_subcommand("check-jacobi", "verify [pi,pi] = 0");
    cmd_jacobi->add_option("name", arg_name)->required();

    auto* cmd_casimir = app.add_subcommand("check-casimir", "verify pi # df = 0");
    cmd_casimir->add_option("casimir", arg_name)->required();
    cmd_casimir->add_option("structure", arg_second)->required();
    cmd_casimir->add_option("structure2", arg_third);

    auto* cmd_product = app.add_subcommand("weighted-product", "build a Casimir-weighted product");
    cmd_product->add_option("name", arg_name)->required();

    auto* cmd_first = app.add_subcommand("first-approx", "Vorobjev linearization of a product");
    cmd_first->add_option("name", arg_name)->required();

    auto* cmd_integr = app.add_subcommand("check-integrability", "the four coupling conditions");
    cmd_integr->add_option("data", arg_name)->required();

    auto* cmd_decomp = app.add_subcommand("decompose", "split pi into (Gamma, nu, phi)");
    cmd_decomp->add_option("structure", arg_name)->required();
    cmd_decomp->add_option("chart", arg_second)->required();
    cmd_decomp->add_option("chart2", arg_third);

    auto* cmd_verify = app.add_subcommand("verify-map", "check psi_* source = target");
    std::vector<std::string> verify_args;
    cmd_verify->add_option("args", verify_args, "PSI [from] A [to] B")->expected(3, 5);

    auto* cmd_volume = app.add_subcommand("volume-obstruction", "leaf-volume comparison");
    cmd_volume->add_option("profileA", arg_name)->required();
    cmd_volume->add_option("profileB", arg_second)->required();

    auto* cmd_ex3 = app.add_subcommand("example3-certificate",
                                       "volume matching against the sphere-class constraint");
    cmd_ex3->add_option("--grid", grid_csv, "comma-separated positive rationals");

    auto* cmd_ident = app.add_subcommand("identities", "randomized bracket/connection suites");
    cmd_ident->add_option("--instances", instances, "instances per suite");

    CLI11_PARSE(app, argc, argv);

    EngineConfig engine = state.engine();
    Report report;
    try {
        Definitions defs = load_definitions(state);

        if (*cmd_jacobi) {
            Stopwatch sw;
            PoissonStructure p = resolve_structure(defs, arg_name, engine);
            CheckEntry e = jacobi_entry(arg_name, p);
            e.millis = sw.millis();
            report.add(std::move(e));
        } else if (*cmd_casimir) {
            // accept both "check-casimir F PI" and "check-casimir F on PI"
            std::string structure = arg_third.empty() ? arg_second : arg_third;
            if (!arg_third.empty() && arg_second != "on")
                throw DataError("usage: check-casimir F [on] PI");
            Stopwatch sw;
            const ScalarDecl& f = defs.scalar(arg_name);
            PoissonStructure p = resolve_structure(defs, structure, engine);
            if (!(*defs.chart(f.chart).chart == p.chart()))
                throw DataError("casimir and structure live on different charts");
            CasimirVerdict v = casimir_check(f.expr, p, engine.zero);
            CheckEntry e{"casimir: " + arg_name + " on " + structure, "casimir.check",
                         v.casimir ? CheckEntry::Outcome::Pass : CheckEntry::Outcome::Fail,
                         v.regime, {}, sw.millis()};
            for (auto& w : v.witnesses) e.witnesses.push_back(witness_string(w, p.chart()));
            report.add(std::move(e));
        } else if (*cmd_product) {
            Stopwatch sw;
            PoissonStructure p = weighted_product(defs.build_product(arg_name, engine), engine);
            CheckEntry e = jacobi_entry(arg_name, p);
            e.name = "weighted product: " + arg_name;
            e.anchor = "product.build";
            e.millis = sw.millis();
            report.add(std::move(e));
        } else if (*cmd_first) {
            Stopwatch sw;
            FirstApproximation fa = first_approximation(defs.build_product(arg_name, engine),
                                                        engine);
            CheckEntry e{"first approximation: " + arg_name, "linearization.first-approx",
                         CheckEntry::Outcome::Pass, fa.structure.status.regime, {}, 0};
            e.witnesses.push_back("jet = " + fa.jet.str(fa.structure.chart()));
            e.witnesses.push_back("structure = " + fa.structure.bivector.str());
            e.witnesses.push_back(std::string("connection flat = ") +
                                  (fa.data.connection().flat() ? "yes" : "no"));
            e.millis = sw.millis();
            report.add(std::move(e));
            condition_entries(report, integrability_check(fa.data, engine),
                              fa.structure.chart());
        } else if (*cmd_integr) {
            const GeometryDecl& g = defs.geometry(arg_name);
            condition_entries(report, integrability_check(g.data, engine),
                              g.data.chart().total());
        } else if (*cmd_decomp) {
            std::string chart_name = arg_third.empty() ? arg_second : arg_third;
            if (!arg_third.empty() && arg_second != "on")
                throw DataError("usage: decompose PI [on] CHART");
            Stopwatch sw;
            PoissonStructure p = resolve_structure(defs, arg_name, engine);
            FiberedChart fc = defs.fibered(chart_name);
            GeometricData data = decompose(p, fc, engine);
            CheckEntry e{"decompose: " + arg_name, "decompose.split", CheckEntry::Outcome::Pass,
                         Regime::Exact, {}, 0};
            bool any_gamma = false;
            for (int a = 0; a < fc.fiber_dim(); ++a)
                for (int i = 0; i < fc.base_dim(); ++i) {
                    ScalarExpr gm = data.connection().gamma(a, i);
                    if (gm.is_structural_zero()) continue;
                    any_gamma = true;
                    e.witnesses.push_back("gamma[" + fc.total().name(fc.fiber_index(a)) + "][" +
                                          fc.total().name(i) + "] = " + gm.str(fc.total()));
                }
            if (!any_gamma) e.witnesses.push_back("gamma = 0 (flat)");
            e.witnesses.push_back("nu = " + data.nu().str());
            std::string phis = "phi =";
            for (auto& [idx, v] : data.phi().components())
                phis += " (" + fc.total().name(idx[0]) + "," + fc.total().name(idx[1]) + "): " +
                        v.str(fc.total());
            e.witnesses.push_back(phis);
            e.millis = sw.millis();
            report.add(std::move(e));

            Stopwatch sw2;
            PoissonStructure back = compose(data, engine);
            MultivectorField resid = back.bivector - p.bivector;
            CheckEntry rt{"roundtrip compose(decompose(pi)) = pi", "decompose.roundtrip",
                          CheckEntry::Outcome::Pass, Regime::Exact, {}, 0};
            for (auto& [idx, v] : resid.components()) {
                ZeroResult zr = is_zero(v, engine.zero);
                if (zr.verdict != ZeroVerdict::ProvenZero) {
                    rt.outcome = CheckEntry::Outcome::Fail;
                    rt.witnesses.push_back(witness_string({idx, v, "residual"}, fc.total()));
                }
            }
            rt.millis = sw2.millis();
            report.add(std::move(rt));
        } else if (*cmd_verify) {
            // PSI from A to B, with "from"/"to" optional
            std::vector<std::string> names;
            for (auto& a : verify_args)
                if (a != "from" && a != "to") names.push_back(a);
            if (names.size() != 3) throw DataError("usage: verify-map PSI from A to B");
            Stopwatch sw;
            const MapDecl& psi = defs.chart_map(names[0]);
            PoissonStructure src = resolve_structure(defs, names[1], engine);
            PoissonStructure dst = resolve_structure(defs, names[2], engine);
            FiberedChart fc = defs.fibered(psi.source_chart);
            MapVerdict v = verify_linearizing_map(psi.map, src, dst, fc, engine);
            CheckEntry e{"linearizing map: " + names[0], "linearization.map",
                         v.inconclusive ? CheckEntry::Outcome::Inconclusive
                         : v.verified   ? CheckEntry::Outcome::Pass
                                        : CheckEntry::Outcome::Fail,
                         v.regime, {}, sw.millis()};
            for (auto& w : v.witnesses) e.witnesses.push_back(witness_string(w, fc.total()));
            e.witnesses.push_back(std::string("invertibility regime: ") +
                                  regime_name(v.invertibility));
            report.add(std::move(e));
        } else if (*cmd_volume) {
            Stopwatch sw;
            const VolumeDecl& A = defs.volume(arg_name);
            const VolumeDecl& B = defs.volume(arg_second);
            ObstructionCertificate cert = volume_obstruction(A.profile, B.profile, engine);
            CheckEntry e{"volume comparison: " + arg_name + " vs " + arg_second,
                         "volumes.obstruction", CheckEntry::Outcome::Pass, Regime::Exact, {},
                         0};
            e.witnesses.push_back(std::string("profile A constant: ") +
                                  (cert.a_constant ? "yes" : "no"));
            e.witnesses.push_back(std::string("profile B constant: ") +
                                  (cert.b_constant ? "yes" : "no"));
            if (!cert.a_constant)
                e.witnesses.push_back("dA = " + cert.a_derivative.str(*A.profile.params));
            if (cert.obstruction)
                e.witnesses.push_back("obstruction certified: " + cert.note);
            if (cert.matching)
                e.witnesses.push_back("volume matching: r2 = " +
                                      cert.matching->str(*A.profile.params));
            else if (!cert.obstruction)
                e.witnesses.push_back(cert.note);
            if (!cert.obstruction && !cert.matching) e.outcome = CheckEntry::Outcome::Fail;
            e.millis = sw.millis();
            report.add(std::move(e));
        } else if (*cmd_ex3) {
            Stopwatch sw;
            std::vector<Rational> grid;
            std::stringstream ss(grid_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) grid.emplace_back(item);
            SphereClassCertificate cert = sphere_class_certificate(grid, engine);
            auto rname = make_chart({"r1"});
            CheckEntry sym{"volume matching r2(r1) derived and contradicted symbolically",
                           "example3.certificate",
                           cert.symbolic ? CheckEntry::Outcome::Pass : CheckEntry::Outcome::Fail,
                           Regime::Exact,
                           {},
                           0};
            sym.witnesses.push_back("matching: r2 = " + cert.matching.str(*rname));
            sym.witnesses.push_back("r1 - r2(r1) = (" + cert.numerator.str(*rname) + ")/(" +
                                    cert.denominator.str(*rname) +
                                    "), positive for every r1 > 0");
            sym.witnesses.push_back("sphere-class constraint r2 = r1 fails for every r1 > 0; "
                                    "the degenerate leaf limit r1 = 0 is excluded");
            sym.millis = sw.millis();
            report.add(std::move(sym));
            for (auto& s : cert.samples) {
                CheckEntry e{"grid r1 = " + s.r1.str(), "example3.sample",
                             s.mismatch ? CheckEntry::Outcome::Pass : CheckEntry::Outcome::Fail,
                             Regime::Exact,
                             {},
                             0};
                e.witnesses.push_back("volume-match r2 = " + s.volume_match.str() +
                                      " vs sphere-class r2 = " + s.sphere_class.str() +
                                      (s.mismatch ? "  (mismatch)" : "  (no mismatch!)"));
                report.add(std::move(e));
            }
        } else if (*cmd_ident) {
            SuiteOptions opts;
            opts.instances = instances;
            opts.seed = state.seed == ZeroConfig{}.seed ? 20260809 : state.seed;
            opts.engine = engine;
            report = run_identity_suites(opts);
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ChartError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ExprError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    }
    return emit(report, state);
}
