#pragma once

// Shared geometric-data corpus for the coupling/vorobjev test suites and the
// acceptance runner: the three example structures, assorted integrable
// instances, and four deliberately broken variants (one per integrability
// condition).

#include <string>
#include <vector>

#include "vorcal/coupling.hpp"

namespace vorcal::testing {

inline ScalarExpr cn(long long n) { return ScalarExpr::integer(n); }
inline ScalarExpr vx(int i) { return ScalarExpr::var(i); }

struct CorpusEntry {
    std::string name;
    GeometricData data;
    bool integrable = true;
    int broken_condition = 0;  // 1..4 when not integrable
};

inline MultivectorField so3_vertical(const FiberedChart& fc) {
    // fiber coords (x,y,z) at offsets 0,1,2 past the base
    int x = fc.fiber_index(0), y = fc.fiber_index(1), z = fc.fiber_index(2);
    MultivectorField nu(fc.total_ptr(), 2);
    nu.add({y, z}, vx(x));
    nu.add({x, z}, -vx(y));
    nu.add({x, y}, vx(z));
    return nu;
}

inline BaseIndexedForm torus_phi(const FiberedChart& fc, const ScalarExpr& coeff) {
    BaseIndexedForm phi(fc, 2);
    phi.set({0, 1}, coeff);
    return phi;
}

inline std::vector<CorpusEntry> geometric_corpus() {
    std::vector<CorpusEntry> out;

    // 1. trivial symplectic product
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
        out.push_back({"trivial", GeometricData(EhresmannConnection(fc),
                                                MultivectorField(fc.total_ptr(), 2),
                                                torus_phi(fc, cn(1)))});
    }
    // 2. exponential product data (phi = e^{-z}, composes to e^z pu^pv)
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
        out.push_back({"ex1-product",
                       GeometricData(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                                     torus_phi(fc, cn(1) / ScalarExpr::exp(vx(2))))});
    }
    // 3. exponential linearization data (phi = 1 + z)
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
        out.push_back({"ex1-linearization",
                       GeometricData(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                                     torus_phi(fc, cn(1) + vx(2)))});
    }
    // 4. quadratic product data (phi = 1/(1+z^2))
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"z"});
        out.push_back({"ex2-product",
                       GeometricData(EhresmannConnection(fc), MultivectorField(fc.total_ptr(), 2),
                                     torus_phi(fc, cn(1) / (cn(1) + vx(2).pow(2))))});
    }
    // 5. so(3) weighted-product data (phi = 1/f, nu = so3)
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"x", "y", "z"});
        ScalarExpr f = cn(1) + vx(2).pow(2) + vx(3).pow(2) + vx(4).pow(2);
        out.push_back({"ex3-product",
                       GeometricData(EhresmannConnection(fc), so3_vertical(fc),
                                     torus_phi(fc, cn(1) / f))});
    }
    // 6. so(3) linearization data (direct product)
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"x", "y", "z"});
        out.push_back({"ex3-linearization",
                       GeometricData(EhresmannConnection(fc), so3_vertical(fc),
                                     torus_phi(fc, cn(1)))});
    }
    // 7. curved integrable instance: nu = py1^py2, phi = 1 + y1,
    //    Gamma[y2][q2] = -q1 (the sign condition 3 demands)
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y1", "y2"});
        EhresmannConnection conn(fc);
        conn.set(1, 1, -vx(0));
        MultivectorField nu(fc.total_ptr(), 2);
        nu.add({2, 3}, cn(1));
        out.push_back({"curved", GeometricData(std::move(conn), std::move(nu),
                                               torus_phi(fc, cn(1) + vx(2)))});
    }
    // 8. Heisenberg fiber direct product: nu = c pa^pb
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"a", "b", "c"});
        MultivectorField nu(fc.total_ptr(), 2);
        nu.add({2, 3}, vx(4));
        out.push_back({"heisenberg", GeometricData(EhresmannConnection(fc), std::move(nu),
                                                   torus_phi(fc, cn(1)))});
    }
    // 9. 4-dimensional base with a fiber-dependent block
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"z"});
        BaseIndexedForm phi(fc, 2);
        phi.set({0, 1}, cn(1) + vx(4) * vx(0));
        phi.set({2, 3}, cn(1));
        out.push_back({"block4d", GeometricData(EhresmannConnection(fc),
                                                MultivectorField(fc.total_ptr(), 2), phi)});
    }
    // 10. 4-dimensional base, constant blocks, curved connection with zero
    //     curvature (gauge of the trivial structure)
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"z"});
        EhresmannConnection conn(fc);
        conn.set(0, 0, vx(1));  // Gamma[z][q1] = q2
        conn.set(0, 1, vx(0));  // Gamma[z][q2] = q1  -> curvature cancels
        BaseIndexedForm phi(fc, 2);
        phi.set({0, 1}, cn(1));
        phi.set({2, 3}, cn(1));
        out.push_back({"flat-gauge-4d", GeometricData(std::move(conn),
                                                      MultivectorField(fc.total_ptr(), 2), phi)});
    }

    // broken 1: nu fails Jacobi
    {
        FiberedChart fc = FiberedChart::split({"u", "v"}, {"x", "y", "z"});
        MultivectorField nu(fc.total_ptr(), 2);
        nu.add({2, 3}, vx(2));
        nu.add({2, 4}, vx(3));
        out.push_back({"broken-cond1",
                       GeometricData(EhresmannConnection(fc), std::move(nu), torus_phi(fc, cn(1))),
                       false, 1});
    }
    // broken 2: nu not lift-invariant
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y1", "y2"});
        MultivectorField nu(fc.total_ptr(), 2);
        nu.add({2, 3}, cn(1) + vx(0));
        out.push_back({"broken-cond2",
                       GeometricData(EhresmannConnection(fc), std::move(nu), torus_phi(fc, cn(1))),
                       false, 2});
    }
    // broken 3: curvature with the wrong sign
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2"}, {"y1", "y2"});
        EhresmannConnection conn(fc);
        conn.set(1, 1, vx(0));
        MultivectorField nu(fc.total_ptr(), 2);
        nu.add({2, 3}, cn(1));
        out.push_back({"broken-cond3",
                       GeometricData(std::move(conn), std::move(nu),
                                     torus_phi(fc, cn(1) + vx(2))),
                       false, 3});
    }
    // broken 4: non-closed coupling block on a 4d base
    {
        FiberedChart fc = FiberedChart::split({"q1", "q2", "q3", "q4"}, {"z"});
        BaseIndexedForm phi(fc, 2);
        phi.set({0, 1}, cn(1));
        phi.set({2, 3}, cn(1) + vx(4) * vx(0));
        out.push_back({"broken-cond4",
                       GeometricData(EhresmannConnection(fc),
                                     MultivectorField(fc.total_ptr(), 2), phi),
                       false, 4});
    }
    return out;
}

}  // namespace vorcal::testing
