#pragma once

// Randomized oracle suites for the bracket and connection identities.  Each
// suite draws seeded random instances, evaluates both computation routes of
// an identity, and requires every defect component to be proven zero.

#include "vorcal/report.hpp"
#include "vorcal/vorobjev.hpp"

namespace vorcal {

struct SuiteOptions {
    int instances = 50;
    std::uint64_t seed = 20260809;
    EngineConfig engine;
};

// -1/2 [L,L](a,b,c) = L(dL(a,b),c) + <a,[L#b,L#c]> + c.p. on random
// polynomial bivectors and 1-forms over charts of dimension 3..5.
CheckEntry run_bracket_identity_suite(const SuiteOptions& options);

// 1/2 [mu,mu](a,b,c) = d omega-hat(mu#a, mu#b, mu#c) for horizontal coframe
// triples over random geometric data (the sign fixed by the component
// convention of the coupling bivector).
CheckEntry run_coupling_identity_suite(const SuiteOptions& options);

// -1/2 [pi,pi](a, v1, v2) = [mu#a, nu](v1, v2) for a horizontal and v1, v2
// vertical coframe elements over random geometric data.
CheckEntry run_mixed_identity_suite(const SuiteOptions& options);

// Connection identities of the pullback tables on the example weighted
// products and curved instances, with randomized conormal sections:
//   (i)   isotropy brackets close and satisfy Jacobi,
//   (ii)  nabla_X [s1,s2] = [nabla_X s1, s2] + [s1, nabla_X s2],
//   (iii) [R_sigma(X1,X2), s] = R_nabla(X1,X2) s,
//   (iv)  sum_cyc nabla_{X1} R_sigma(X2,X3) = 0.
CheckEntry run_connection_identity_suite(const SuiteOptions& options);

Report run_identity_suites(const SuiteOptions& options);

// Random generators shared by the suites (seeded, deterministic).
ScalarExpr random_polynomial(std::uint64_t& state, int dim, int degree = 2);
GeometricData random_geometric_data(std::uint64_t& state, int base_dim, int fiber_dim,
                                    const EngineConfig& config);

}  // namespace vorcal
