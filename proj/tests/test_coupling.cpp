#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "vorcal/coupling.hpp"

using namespace vorcal;
using namespace vorcal::testing;

namespace {

DifferentialForm dq(const FiberedChart& fc, int i) {
    DifferentialForm a(fc.total_ptr(), 1);
    a.add({i}, ScalarExpr::one());
    return a;
}

// coupling-identity defect: 1/2 [mu,mu](dq_i,dq_j,dq_k) - d(omega-hat)(mu#dq_i,...)
ScalarExpr coupling_identity_defect(const GeometricData& data, int i, int j, int k) {
    auto mu = horizontal_coupling_bivector(data);
    auto br = schouten(mu, mu);
    auto ai = dq(data.chart(), i), aj = dq(data.chart(), j), ak = dq(data.chart(), k);
    ScalarExpr lhs = ScalarExpr::rational(Rational(1, 2)) * evaluate(br, {ai, aj, ak});
    auto dw = d(coupling_form(data));
    ScalarExpr rhs = evaluate(dw, {contract(mu, ai), contract(mu, aj), contract(mu, ak)});
    return lhs - rhs;
}

// mixed-identity defect: -1/2 [pi,pi](dq_i, vy_a, vy_b) - [mu#dq_i, nu](vy_a, vy_b)
ScalarExpr mixed_identity_defect(const GeometricData& data, int i, int a, int b) {
    auto mu = horizontal_coupling_bivector(data);
    auto pi = mu + data.nu();
    auto br = schouten(pi, pi);
    auto al = dq(data.chart(), i);
    auto va = data.connection().vertical_coframe(a);
    auto vb = data.connection().vertical_coframe(b);
    ScalarExpr lhs = ScalarExpr::rational(Rational(-1, 2)) * evaluate(br, {al, va, vb});
    auto xbar = contract(mu, al);
    ScalarExpr rhs = evaluate(schouten(xbar, data.nu()), {va, vb});
    return lhs - rhs;
}

}  // namespace

TEST_CASE("horizontal lifts") {
    FiberedChart fc = FiberedChart::split({"q"}, {"y"});
    EhresmannConnection flat(fc);
    MultivectorField dq0(fc.total_ptr(), 1);
    dq0.add({0}, ScalarExpr::one());
    CHECK(horizontal_lift(dq0, flat) == dq0);

    EhresmannConnection conn(fc);
    ScalarExpr g = vx(0) + vx(1);
    conn.set(0, 0, g);
    MultivectorField f_dq(fc.total_ptr(), 1);
    ScalarExpr f = cn(2) * vx(0);
    f_dq.add({0}, f);
    auto lifted = horizontal_lift(f_dq, conn);
    CHECK(lifted.at({0}) == f);
    CHECK(lifted.at({1}) == f * g);

    MultivectorField vert(fc.total_ptr(), 1);
    vert.add({1}, ScalarExpr::one());
    CHECK_THROWS_AS(void(horizontal_lift(vert, flat)), ChartError);
}

TEST_CASE("curvature: flat and the 2-base/1-fiber example") {
    FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y"});
    EhresmannConnection flat(fc);
    CHECK(curvature(flat, 0, 1).structurally_zero());

    EhresmannConnection conn(fc);
    conn.set(0, 0, vx(1));  // Gamma[y][q1] = q2
    auto cv = curvature(conn, 0, 1);
    CHECK(cv.at({2}) == -ScalarExpr::one());
    CHECK(cv.components().size() == 1);
}

TEST_CASE("coupling form on examples") {
    FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
    GeometricData trivial(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                          torus_phi(fc, cn(1)));
    auto w = coupling_form(trivial);
    CHECK(w.at({0, 1}) == cn(1));
    CHECK(w.components().size() == 1);

    GeometricData ex1(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                      torus_phi(fc, cn(1) + vx(2)));
    CHECK(coupling_form(ex1).at({0, 1}) == cn(1) + vx(2));
}

TEST_CASE("horizontal coupling bivector: inverse map and identity") {
    FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
    GeometricData trivial(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                          torus_phi(fc, cn(1)));
    auto mu0 = horizontal_coupling_bivector(trivial);
    CHECK(mu0.at({0, 1}) == cn(1));
    CHECK(mu0.components().size() == 1);

    GeometricData ex1(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                      torus_phi(fc, cn(1) + vx(2)));
    auto mu1 = horizontal_coupling_bivector(ex1);
    CHECK(mu1.at({0, 1}) == cn(1) / (cn(1) + vx(2)));

    // 4d block: matrix identity  (mu-matrix) * Phi = -Id, checked entrywise
    FiberedChart fc4 = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"z"});
    BaseIndexedForm phi(fc4, 2);
    phi.set({0, 1}, cn(1) + vx(4) * vx(0));
    phi.set({0, 2}, vx(4));
    phi.set({2, 3}, cn(2) + vx(4) * vx(1));
    GeometricData block(EhresmannConnection(fc4), MultivectorField(fc4.total_ptr(), 2), phi);
    auto mu = horizontal_coupling_bivector(block);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ScalarExpr acc;
            for (int m = 0; m < 4; ++m) {
                ScalarExpr mu_im = mu.at_any_order({i, m});
                ScalarExpr phi_mj = (m < j)   ? phi.at({m, j})
                                    : (m > j) ? -phi.at({j, m})
                                              : ScalarExpr::zero();
                acc += mu_im * phi_mj;
            }
            ScalarExpr expect = (i == j) ? -ScalarExpr::one() : ScalarExpr::zero();
            CHECK(is_zero(acc - expect).verdict == ZeroVerdict::ProvenZero);
        }

    // coupling identity on the coordinate coframe: w(mu#a, mu#b) = mu(a,b)
    for (auto& entry : geometric_corpus()) {
        if (!entry.integrable) continue;
        auto mue = horizontal_coupling_bivector(entry.data);
        auto we = coupling_form(entry.data);
        int dim = entry.data.chart().base_dim();
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                auto a = dq(entry.data.chart(), i), b = dq(entry.data.chart(), j);
                ScalarExpr lhs = evaluate(we, {contract(mue, a), contract(mue, b)});
                ScalarExpr rhs = evaluate(mue, {a, b});
                CHECK(is_zero(lhs - rhs).verdict == ZeroVerdict::ProvenZero);
            }
    }

    // degenerate phi rejected
    BaseIndexedForm bad(fc4, 2);
    bad.set({0, 1}, cn(1));
    CHECK_THROWS_AS(GeometricData(EhresmannConnection(fc4),
                                  MultivectorField(fc4.total_ptr(), 2), bad),
                    DataError);
}

TEST_CASE("integrability: corpus verdicts match Jacobi of the assembled bivector") {
    for (auto& entry : geometric_corpus()) {
        CAPTURE(entry.name);
        auto report = integrability_check(entry.data);
        CHECK(report.integrable() == entry.integrable);
        auto pi = jacobi_check(assemble(entry.data).bivector);
        CHECK((pi.status.kind == JacobiStatus::Kind::Verified) == entry.integrable);
        if (!entry.integrable) {
            // exactly the expected condition fails
            for (auto& c : report.conditions) {
                CAPTURE(c.condition);
                CHECK(c.passed == (c.condition != entry.broken_condition));
            }
            // and [pi,pi] sits in the matching degree component
            auto grading = degree_components(schouten(pi.bivector, pi.bivector),
                                             entry.data.connection());
            std::map<int, std::pair<int, int>> want{
                {1, {0, 3}}, {2, {1, 2}}, {3, {2, 1}}, {4, {3, 0}}};
            REQUIRE(grading.size() == 1);
            CHECK(grading.begin()->first == want[entry.broken_condition]);
        }
    }
}

TEST_CASE("compose on the example data") {
    auto corpus = geometric_corpus();
    for (auto& entry : corpus) {
        if (!entry.integrable) continue;
        CAPTURE(entry.name);
        auto pi = compose(entry.data);
        CHECK(pi.status.kind == JacobiStatus::Kind::Verified);
        if (entry.name == "trivial") {
            CHECK(pi.bivector.at({0, 1}) == cn(1));
            CHECK(pi.bivector.components().size() == 1);
        }
        if (entry.name == "ex1-linearization") {
            CHECK(pi.bivector.at({0, 1}) == cn(1) / (cn(1) + vx(2)));
            CHECK(pi.bivector.components().size() == 1);
        }
        if (entry.name == "ex1-product") {
            CHECK(pi.bivector.at({0, 1}) == ScalarExpr::exp(vx(2)));
        }
        if (entry.name == "ex3-linearization") {
            // direct product pi_T + pi_so3
            CHECK(pi.bivector.at({0, 1}) == cn(1));
            CHECK(pi.bivector.at({3, 4}) == vx(2));
            CHECK(pi.bivector.at({2, 4}) == -vx(3));
            CHECK(pi.bivector.at({2, 3}) == vx(4));
            CHECK(pi.bivector.components().size() == 4);
        }
    }
    // broken data must not compose
    for (auto& entry : corpus)
        if (!entry.integrable) CHECK_THROWS_AS(void(compose(entry.data)), DataError);
}

TEST_CASE("compose: zero section is a symplectic leaf for the example data") {
    for (auto& entry : geometric_corpus()) {
        if (!entry.integrable) continue;
        if (entry.name == "curved" || entry.name == "flat-gauge-4d") continue;  // nu or Gamma nonzero at 0
        CAPTURE(entry.name);
        auto pi = compose(entry.data);
        auto repl = entry.data.chart().zero_section();
        auto at0 = pi.bivector.subst_coeffs(repl);
        // mixed and fiber components vanish; base block equals mu(omega)
        GeometricData omega_data(EhresmannConnection(entry.data.chart()),
                                 MultivectorField(entry.data.chart().total_ptr(), 2),
                                 entry.data.omega());
        auto mu_omega = horizontal_coupling_bivector(omega_data);
        for (auto& [idx, v] : at0.components()) {
            bool base = entry.data.chart().is_base(idx[0]) && entry.data.chart().is_base(idx[1]);
            if (!base) {
                CHECK(is_zero(v).verdict != ZeroVerdict::ProvenNonzero);
            }
        }
        for (int i = 0; i < entry.data.chart().base_dim(); ++i)
            for (int j = i + 1; j < entry.data.chart().base_dim(); ++j) {
                ScalarExpr diff = at0.at({i, j}) - mu_omega.at({i, j});
                CHECK(is_zero(diff).verdict == ZeroVerdict::ProvenZero);
            }
    }
}

TEST_CASE("decompose: spec examples") {
    // (1/(1+z)) pu^pv on (u,v|z)
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
        MultivectorField pi(fc.total_ptr(), 2);
        pi.add({0, 1}, cn(1) / (cn(1) + vx(2)));
        auto data = decompose(jacobi_check(pi), fc);
        CHECK(data.connection().flat());
        CHECK(data.nu().structurally_zero());
        CHECK(data.phi().at({0, 1}) == cn(1) + vx(2));
        CHECK(data.remainder().at({0, 1}) == vx(2));
    }
    // direct product pi_T + pi_so3 splits
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"x", "y", "z"});
        MultivectorField pi(fc.total_ptr(), 2);
        pi.add({0, 1}, cn(1));
        pi += so3_vertical(fc);
        auto data = decompose(jacobi_check(pi), fc);
        CHECK(data.connection().flat());
        CHECK(data.nu() == so3_vertical(fc));
        CHECK(data.phi().at({0, 1}) == cn(1));
    }
    // weighted product f pi_T + pi_so3: phi = 1/f
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"x", "y", "z"});
        ScalarExpr f = cn(1) + vx(2).pow(2) + vx(3).pow(2) + vx(4).pow(2);
        MultivectorField pi(fc.total_ptr(), 2);
        pi.add({0, 1}, f);
        pi += so3_vertical(fc);
        auto data = decompose(jacobi_check(pi), fc);
        CHECK(data.connection().flat());
        CHECK(data.nu() == so3_vertical(fc));
        CHECK(is_zero(data.phi().at({0, 1}) - cn(1) / f).verdict == ZeroVerdict::ProvenZero);
        // roundtrip
        auto back = compose(data);
        CHECK(all_proven_zero(back.bivector - pi));
    }
}

TEST_CASE("decompose: curvature extraction on a constructed instance") {
    for (auto& entry : geometric_corpus()) {
        if (entry.name != "curved") continue;
        auto pi = compose(entry.data);
        // not a leaf at the zero section (Gamma nonzero there), so decompose
        // must reject it
        CHECK_THROWS_AS(void(decompose(pi, entry.data.chart())), DataError);
    }
    // a curved instance that is a leaf at 0: scale the Gamma by y1
    FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y1", "y2"});
    EhresmannConnection conn(fc);
    conn.set(1, 1, vx(0) * vx(2));  // Gamma[y2][q2] = q1*y1
    MultivectorField nu(fc.total_ptr(), 2);
    BaseIndexedForm phi = torus_phi(fc, cn(1) + vx(2));
    GeometricData data(conn, nu, phi);
    auto pi = assemble(data);
    auto back = decompose(jacobi_check(pi.bivector), fc);
    CHECK(is_zero(back.connection().gamma(1, 1) - vx(0) * vx(2)).verdict ==
          ZeroVerdict::ProvenZero);
    CHECK(back.connection().gamma(0, 0).is_structural_zero());
    CHECK(is_zero(back.phi().at({0, 1}) - (cn(1) + vx(2))).verdict == ZeroVerdict::ProvenZero);
}

TEST_CASE("decompose error paths") {
    FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
    // horizontally degenerate at the zero section
    MultivectorField deg(fc.total_ptr(), 2);
    deg.add({0, 1}, vx(2));
    CHECK_THROWS_AS(void(decompose(jacobi_check(deg), fc)), DataError);

    // zero section not a leaf: mixed component alive at z=0
    MultivectorField notleaf(fc.total_ptr(), 2);
    notleaf.add({0, 1}, cn(1));
    notleaf.add({0, 2}, cn(1));
    CHECK_THROWS_AS(void(decompose(jacobi_check(notleaf), fc)), DataError);

    // fiber-fiber block alive at the zero section
    FiberedChart fc2 = FiberedChart::split({"u", "v"}, {"y1", "y2"});
    MultivectorField notleaf2(fc2.total_ptr(), 2);
    notleaf2.add({0, 1}, cn(1));
    notleaf2.add({2, 3}, cn(1));
    CHECK_THROWS_AS(void(decompose(jacobi_check(notleaf2), fc2)), DataError);
}

TEST_CASE("roundtrip compose(decompose(pi)) == pi over eligible corpus members") {
    for (auto& entry : geometric_corpus()) {
        if (!entry.integrable) continue;
        if (entry.name == "curved" || entry.name == "flat-gauge-4d") continue;
        CAPTURE(entry.name);
        auto pi = compose(entry.data);
        auto data2 = decompose(pi, entry.data.chart());
        auto back = compose(data2);
        CHECK(all_proven_zero(back.bivector - pi.bivector));

        // decompose(compose(data)) reproduces the triple itself
        const auto& fc = entry.data.chart();
        for (int a = 0; a < fc.fiber_dim(); ++a)
            for (int i = 0; i < fc.base_dim(); ++i)
                CHECK(is_zero(data2.connection().gamma(a, i) -
                              entry.data.connection().gamma(a, i))
                          .verdict == ZeroVerdict::ProvenZero);
        CHECK(all_proven_zero(data2.nu() - entry.data.nu()));
        for (auto& [idx, v] : entry.data.phi().components())
            CHECK(is_zero(data2.phi().at(idx) - v).verdict == ZeroVerdict::ProvenZero);
    }
}

TEST_CASE("partial_gamma") {
    // closed omega x 1 dies for any connection
    FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y1", "y2"});
    EhresmannConnection conn(fc);
    conn.set(1, 1, -vx(0));
    BaseIndexedForm omega1(fc, 2);
    omega1.set({0, 1}, cn(1));
    CHECK(partial_gamma(omega1, conn).components().empty());

    // flat connection, constant 0-form
    BaseIndexedForm c0(fc, 0);
    c0.set({}, cn(7));
    CHECK(partial_gamma(c0, EhresmannConnection(fc)).components().empty());

    // block4d corpus member: lift-frame and partial-gamma paths agree
    for (auto& entry : geometric_corpus()) {
        if (entry.data.chart().base_dim() < 3) continue;
        CAPTURE(entry.name);
        auto pg = partial_gamma(entry.data.phi(), entry.data.connection());
        auto dw = d(coupling_form(entry.data));
        int dim = entry.data.chart().base_dim();
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                for (int k = j + 1; k < dim; ++k) {
                    ScalarExpr via_lifts =
                        evaluate(dw, {entry.data.connection().lift_basis(i),
                                      entry.data.connection().lift_basis(j),
                                      entry.data.connection().lift_basis(k)});
                    CHECK(is_zero(via_lifts - pg.at({i, j, k})).verdict ==
                          ZeroVerdict::ProvenZero);
                }
    }
}

TEST_CASE("coupling and mixed identity oracles on corpus data") {
    for (auto& entry : geometric_corpus()) {
        const auto& fc = entry.data.chart();
        CAPTURE(entry.name);
        // the coupling identity needs three distinct horizontal directions
        if (fc.base_dim() >= 3) {
            for (int i = 0; i < fc.base_dim(); ++i)
                for (int j = i + 1; j < fc.base_dim(); ++j)
                    for (int k = j + 1; k < fc.base_dim(); ++k)
                        CHECK(is_zero(coupling_identity_defect(entry.data, i, j, k)).verdict ==
                              ZeroVerdict::ProvenZero);
        }
        if (fc.fiber_dim() >= 2) {
            for (int i = 0; i < fc.base_dim(); ++i)
                for (int a = 0; a < fc.fiber_dim(); ++a)
                    for (int b = a + 1; b < fc.fiber_dim(); ++b)
                        CHECK(is_zero(mixed_identity_defect(entry.data, i, a, b)).verdict ==
                              ZeroVerdict::ProvenZero);
        }
    }
}

TEST_CASE("geometric data validation") {
    FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
    // nu touching a base index
    MultivectorField badnu(fc.total_ptr(), 2);
    badnu.add({0, 2}, cn(1));
    CHECK_THROWS_AS(GeometricData(EhresmannConnection(fc), badnu, torus_phi(fc, cn(1))),
                    DataError);
    // odd base dimension
    FiberedChart fodd = FiberedChart::split({"q"}, {"y"});
    BaseIndexedForm phi1(fodd, 2);
    CHECK_THROWS_AS(GeometricData(EhresmannConnection(fodd),
                                  MultivectorField(fodd.total_ptr(), 2), phi1),
                    DataError);
    // non-closed omega on a 4d base
    FiberedChart fc4 = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"z"});
    BaseIndexedForm phinc(fc4, 2);
    phinc.set({0, 1}, cn(1) + vx(2));  // depends on q3: d-omega != 0
    phinc.set({2, 3}, cn(1));
    CHECK_THROWS_AS(GeometricData(EhresmannConnection(fc4),
                                  MultivectorField(fc4.total_ptr(), 2), phinc),
                    DataError);
}
