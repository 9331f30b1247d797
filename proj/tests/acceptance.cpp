// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <cstdio>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "vorcal/builtins.hpp"
#include "vorcal/identities.hpp"
#include "vorcal/report.hpp"

using namespace vorcal;
using namespace vorcal::testing;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    double limit_ms;
    Stopwatch watch;
    bool ok = true;
    std::vector<std::string> notes;

    Criterion(std::string l, double limit) : label(std::move(l)), limit_ms(limit) {}

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            notes.push_back(what);
        }
    }

    void finish() {
        double ms = watch.millis();
        if (ms >= limit_ms) {
            ok = false;
            notes.push_back("runtime " + std::to_string(ms) + " ms exceeds " +
                            std::to_string(limit_ms) + " ms");
        }
        std::printf("[%s] %s (%.1f ms)\n", ok ? "PASS" : "FAIL", label.c_str(), ms);
        for (auto& n : notes) std::printf("       - %s\n", n.c_str());
        if (!ok) ++g_failures;
    }
};

bool proven_zero(const ScalarExpr& e) { return is_zero(e).verdict == ZeroVerdict::ProvenZero; }

bool componentwise_proven_zero(const MultivectorField& a, const MultivectorField& b) {
    MultivectorField diff = a - b;
    for (auto& [idx, v] : diff.components())
        if (!proven_zero(v)) return false;
    return true;
}

PoissonStructure resolve_product(const Definitions& defs, const std::string& name) {
    return weighted_product(defs.build_product(name));
}

void criterion1(const Definitions& defs) {
    Criterion c("criterion 1: jacobi suite, exact verdicts and a failing witness", 1000);
    auto so3 = defs.build_structure("so3");
    c.require(so3.status.kind == JacobiStatus::Kind::Verified &&
                  so3.status.regime == Regime::Exact,
              "so(3) bivector not Verified(exact)");
    for (auto name : {"ex1", "ex2", "ex3"}) {
        auto p = resolve_product(defs, name);
        c.require(p.status.kind == JacobiStatus::Kind::Verified &&
                      p.status.regime == Regime::Exact,
                  std::string(name) + " product not Verified(exact)");
    }
    auto xyz = make_chart({"x", "y", "z"});
    MultivectorField bad(xyz, 2);
    bad.add({0, 1}, vx(0));
    bad.add({0, 2}, vx(1));
    auto rf = jacobi_check(bad);
    c.require(rf.status.kind == JacobiStatus::Kind::Failed, "broken bivector not Failed");
    c.require(!rf.status.witnesses.empty() &&
                  rf.status.witnesses[0].value == cn(2) * vx(1),
              "missing explicit witness 2y");
    c.finish();
}

void criterion2() {
    Criterion c("criterion 2: bracket identity suites, 50 instances each, all proven zero",
                30000);
    SuiteOptions opts;
    opts.instances = 50;
    auto l1 = run_bracket_identity_suite(opts);
    auto l2 = run_coupling_identity_suite(opts);
    auto l3 = run_mixed_identity_suite(opts);
    c.require(l1.passed(), "first bracket identity suite failed");
    c.require(l2.passed(), "coupling-bivector identity suite failed");
    c.require(l3.passed(), "mixed bracket identity suite failed");
    c.finish();
}

void criterion3() {
    Criterion c("criterion 3: integrability equivalence over the geometric corpus", 30000);
    auto corpus = geometric_corpus();
    c.require(corpus.size() >= 14, "corpus too small");
    std::map<int, std::pair<int, int>> degree_of{{1, {0, 3}}, {2, {1, 2}}, {3, {2, 1}},
                                                 {4, {3, 0}}};
    for (auto& entry : corpus) {
        auto report = integrability_check(entry.data);
        auto pi = jacobi_check(assemble(entry.data).bivector);
        bool jac = pi.status.kind == JacobiStatus::Kind::Verified;
        c.require(report.integrable() == entry.integrable,
                  entry.name + ": integrability verdict mismatch");
        c.require(jac == entry.integrable, entry.name + ": jacobi verdict mismatch");
        if (!entry.integrable) {
            for (auto& cond : report.conditions)
                c.require(cond.passed == (cond.condition != entry.broken_condition),
                          entry.name + ": wrong failing condition");
            auto grading =
                degree_components(schouten(pi.bivector, pi.bivector), entry.data.connection());
            c.require(grading.size() == 1 &&
                          grading.begin()->first == degree_of[entry.broken_condition],
                      entry.name + ": [pi,pi] not confined to the matching degree component");
        }
    }
    c.finish();
}

void criterion4() {
    Criterion c("criterion 4: connection identities on example tables, 21 random sections",
                10000);
    SuiteOptions opts;
    opts.instances = 21;
    auto t2 = run_connection_identity_suite(opts);
    c.require(t2.passed(), "connection identity suite failed");
    c.finish();
}

void criterion5(const Definitions& defs) {
    Criterion c("criterion 5: first approximations match the closed forms exactly", 5000);
    {
        auto fa = first_approximation(defs.build_product("ex1"));
        MultivectorField want(fa.structure.chart_ptr(), 2);
        want.add({0, 1}, cn(1) / (cn(1) + vx(2)));
        c.require(componentwise_proven_zero(fa.structure.bivector, want),
                  "exponential linearization differs from (1/(1+z)) @u^@v");
    }
    {
        auto fa = first_approximation(defs.build_product("ex2"));
        MultivectorField want(fa.structure.chart_ptr(), 2);
        want.add({0, 1}, cn(1));
        c.require(componentwise_proven_zero(fa.structure.bivector, want),
                  "quadratic linearization differs from @u^@v");
    }
    {
        auto fa = first_approximation(defs.build_product("ex3"));
        MultivectorField want(fa.structure.chart_ptr(), 2);
        want.add({0, 1}, cn(1));
        want.add({3, 4}, vx(2));
        want.add({2, 4}, -vx(3));
        want.add({2, 3}, vx(4));
        c.require(componentwise_proven_zero(fa.structure.bivector, want),
                  "rotation-algebra linearization differs from the direct product");
    }
    c.finish();
}

void criterion6(const Definitions& defs) {
    Criterion c("criterion 6: exponential example linearizing map verified (sampled path)",
                5000);
    auto lam = resolve_product(defs, "ex1");
    auto fa = first_approximation(defs.build_product("ex1"));
    FiberedChart fc(lam.chart_ptr(), 2);
    const MapDecl& psi = defs.chart_map("psi1");
    EngineConfig engine;  // N = 64, eps = 1e-9 defaults as stated
    c.require(engine.zero.samples == 64 && engine.zero.epsilon == 1e-9,
              "default sampling configuration drifted");
    auto verdict = verify_linearizing_map(psi.map, lam, fa.structure, fc, engine);
    c.require(verdict.verified, "linearizing map rejected");
    c.require(!verdict.inconclusive, "linearizing map inconclusive");
    c.require(verdict.regime == Regime::Numeric,
              "expected the transcendental sampling path to engage");
    c.finish();
}

void criterion7(const Definitions& defs) {
    Criterion c("criterion 7: quadratic example volume obstruction, exact", 1000);
    const auto& A = defs.volume("vol_product").profile;
    const auto& B = defs.volume("vol_linear").profile;
    c.require(A.volume == cn(1) + vx(0).pow(2), "product profile is not 1 + z^2");
    c.require(B.volume.is_one(), "linearization profile is not 1");
    auto cert = volume_obstruction(A, B);
    c.require(cert.obstruction, "obstruction not certified");
    c.require(cert.a_derivative == cn(2) * vx(0), "non-constancy witness is not 2z");
    c.require(cert.b_constant, "linearization profile not recognized constant");
    c.finish();
}

void criterion8(const Definitions& defs) {
    Criterion c("criterion 8: sphere-family certificate, symbolic and on the grid", 1000);
    ScalarExpr r = vx(0);
    ScalarExpr four_pi = cn(4) * ScalarExpr::pi();
    // closed-form product volumes with symbolic pi
    ScalarExpr volA = product_leaf_volume(cn(1), 1, four_pi * r, 1,
                                          cn(1) / (cn(1) + r.pow(2)), cn(1));
    c.require(proven_zero(volA - four_pi * r / (cn(1) + r.pow(2))),
              "product volume differs from 4 pi r1/(1+r1^2)");
    ScalarExpr volB = product_leaf_volume(cn(1), 1, four_pi * r, 1, cn(1), cn(1));
    c.require(proven_zero(volB - four_pi * r), "direct-product volume differs from 4 pi r2");
    c.require(proven_zero(defs.volume("vol_S1").profile.volume - volA),
              "builtin profile differs from the computed product volume");

    auto cert = sphere_class_certificate(
        {Rational(1, 10), Rational(1, 2), Rational(1), Rational(2)});
    c.require(proven_zero(cert.matching - r / (cn(1) + r.pow(2))),
              "matching function is not r1/(1+r1^2)");
    c.require(cert.symbolic, "difference r1^3/(1+r1^2) not certified symbolically");
    c.require(cert.all_mismatch, "a grid sample failed to contradict the sphere class");
    c.require(cert.samples.size() == 4 && cert.samples[2].volume_match == Rational(1, 2),
              "grid witness at r1 = 1 is not 1/2");
    c.finish();
}

void criterion9(const Definitions& defs) {
    Criterion c("criterion 9: compose(decompose(pi)) identity on eligible corpus members",
                10000);
    int count = 0;
    for (auto& entry : geometric_corpus()) {
        if (!entry.integrable) continue;
        // decompose requires the zero section to be a leaf; two corpus
        // members are integrable but keep the section from being a leaf
        if (entry.name == "curved" || entry.name == "flat-gauge-4d") continue;
        auto pi = compose(entry.data);
        auto back = compose(decompose(pi, entry.data.chart()));
        c.require(componentwise_proven_zero(back.bivector, pi.bivector),
                  entry.name + ": roundtrip residual");
        ++count;
    }
    c.require(count >= 8, "too few roundtrip-eligible corpus members");
    // the rotation-algebra weighted product itself
    auto prod = resolve_product(defs, "ex3");
    FiberedChart fc(prod.chart_ptr(), 2);
    auto back = compose(decompose(prod, fc));
    c.require(componentwise_proven_zero(back.bivector, prod.bivector),
              "weighted-product roundtrip residual");
    c.finish();
}

void criterion10() {
    Criterion c("criterion 10: parser round-trip and positioned diagnostics", 1000);
    for (auto& name : builtin_names()) {
        Definitions first = parse_definitions(builtin_source(name));
        Definitions second = parse_definitions(print_definitions(first));
        c.require(structurally_equal(first, second),
                  std::string(name) + ": print/re-parse not structurally equal");
    }
    const char* bad_inputs[] = {
        "chart M = (x, y)\nbivector w on M { (x,y): x^",   // dangling operator
        "chart M = (x)\nchart M = (y)\n",                  // duplicate name
        "chart M = (x)\nscalar s = x + q on M\n",          // unknown coordinate
        "bivector w on Nowhere { (x,y): 1 }",              // unknown chart
        "chart M = (x y)\n",                                // missing comma
    };
    for (auto* text : bad_inputs) {
        bool threw = false;
        try {
            parse_definitions(text);
        } catch (const ParseError& e) {
            threw = e.line >= 1 && e.col >= 1;
        }
        c.require(threw, std::string("no positioned diagnostic for: ") + text);
    }
    c.finish();
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    Definitions defs = builtin_definitions();
    criterion1(defs);
    criterion2();
    criterion3();
    criterion4();
    criterion5(defs);
    criterion6(defs);
    criterion7(defs);
    criterion8(defs);
    criterion9(defs);
    criterion10();
    if (g_failures == 0)
        std::printf("================\nall criteria passed\n");
    else
        std::printf("================\n%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
