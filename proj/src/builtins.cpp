#include "vorcal/builtins.hpp"

namespace vorcal {

namespace {

// unit symplectic torus weighted by an exponential Casimir, with the
// linearizing map and the geometric data of both sides
const char* kEx1 = R"(# exponential Casimir weight on the unit symplectic torus
chart T = (u, v)
chart R = (z)
chart TR = (u, v | z)
bivector pi_T on T { (u, v): 1 }
liealg g1 dim 1 { }
poisson pi_g1 = liepoisson(g1) on R
casimir one_T = 1 on T
casimir f_exp = exp(z) on R
product ex1 = (pi_T, one_T) x (pi_g1, f_exp)
geometry ex1lin on TR { phi { (u, v): 1 + z } }
geometry ex1data on TR { phi { (u, v): 1/exp(z) } }
bivector ex1lin_pi on TR { (u, v): 1/(1 + z) }
map psi1: TR -> TR { u, v, exp(-z) - 1 }
)";

// quadratic Casimir weight; the leaf-volume profiles of the two sides
const char* kEx2 = R"(# quadratic Casimir weight on the unit symplectic torus
chart T = (u, v)
chart R = (z)
chart TR = (u, v | z)
bivector pi_T on T { (u, v): 1 }
liealg g1 dim 1 { }
poisson pi_g1 = liepoisson(g1) on R
casimir one_T = 1 on T
casimir f_quad = 1 + z^2 on R
product ex2 = (pi_T, one_T) x (pi_g1, f_quad)
geometry ex2lin on TR { phi { (u, v): 1 } }
volume vol_product (z) dim 2 = 1 + z^2
volume vol_linear (z) dim 2 = 1
)";

// so(3) fiber: the rotation-algebra weighted product and its sphere volumes
const char* kEx3 = R"(# rotation-algebra fiber with radius Casimir
chart T = (u, v)
chart so3chart = (x, y, z)
chart Tso3 = (u, v | x, y, z)
bivector pi_T on T { (u, v): 1 }
liealg so3alg dim 3 { [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2 }
poisson so3 = liepoisson(so3alg) on so3chart
casimir one_T = 1 on T
casimir f_rad = 1 + x^2 + y^2 + z^2 on so3chart
product ex3 = (pi_T, one_T) x (so3, f_rad)
geometry ex3lin on Tso3 { nu { (y, z): x, (x, z): -y, (x, y): z }, phi { (u, v): 1 } }
volume vol_S1 (r1) dim 4 = 4*pi*r1/(1 + r1^2)
volume vol_S2 (r2) dim 4 = 4*pi*r2
)";

}  // namespace

const char* builtin_source(const std::string& name) {
    if (name == "ex1") return kEx1;
    if (name == "ex2") return kEx2;
    if (name == "ex3") return kEx3;
    throw DataError("unknown builtin file '" + name + "'");
}

std::vector<std::string> builtin_names() { return {"ex1", "ex2", "ex3"}; }

Definitions builtin_definitions(const EngineConfig& config) {
    Definitions all;
    for (auto& name : builtin_names()) {
        Definitions one = parse_definitions(builtin_source(name), config);
        merge_definitions(all, one);
    }
    return all;
}

}  // namespace vorcal
