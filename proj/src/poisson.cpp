#include "vorcal/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vorcal/parallel.hpp"

namespace vorcal {

// ---------------------------------------------------------------------------
// LieAlgebraSpec
// ---------------------------------------------------------------------------

LieAlgebraSpec::LieAlgebraSpec(int dim,
                               const std::vector<std::tuple<int, int, int, Rational>>& entries)
    : dim_(dim) {
    if (dim_ < 1) throw DataError("Lie algebra dimension must be positive");
    for (auto& [i, j, m, value] : entries) {
        if (i < 0 || j < 0 || m < 0 || i >= dim_ || j >= dim_ || m >= dim_)
            throw DataError("structure constant index out of range");
        if (i == j) {
            if (value != 0) throw DataError("structure constants must be antisymmetric: c[i][i] != 0");
            continue;
        }
        std::array<int, 3> key{std::min(i, j), std::max(i, j), m};
        Rational v = (i < j) ? value : Rational(-value);
        auto [it, fresh] = c_.emplace(key, v);
        if (!fresh && it->second != v)
            throw DataError("conflicting values for one structure constant");
    }
    // Jacobi identity of the constants, checked exactly
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int l = j + 1; l < dim_; ++l)
                for (int p = 0; p < dim_; ++p) {
                    Rational sum = 0;
                    for (int m = 0; m < dim_; ++m)
                        sum += c(i, j, m) * c(m, l, p) + c(j, l, m) * c(m, i, p) +
                               c(l, i, m) * c(m, j, p);
                    if (sum != 0)
                        throw DataError("structure constants violate the Jacobi identity at (" +
                                        std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(l) + ")");
                }
}

Rational LieAlgebraSpec::c(int i, int j, int m) const {
    if (i == j) return 0;
    std::array<int, 3> key{std::min(i, j), std::max(i, j), m};
    auto it = c_.find(key);
    if (it == c_.end()) return 0;
    return (i < j) ? it->second : Rational(-it->second);
}

// ---------------------------------------------------------------------------
// jacobi_check
// ---------------------------------------------------------------------------

PoissonStructure jacobi_check(const MultivectorField& pi, const EngineConfig& config) {
    if (pi.degree() != 2) throw DataError("jacobi_check expects a bivector field");
    MultivectorField bracket = schouten(pi, pi);

    std::vector<std::pair<MultiIndex, ScalarExpr>> comps(bracket.components().begin(),
                                                         bracket.components().end());
    std::vector<ZeroResult> results(comps.size());
    std::vector<std::string> inconclusive(comps.size());
    for_each_index(comps.size(), config.parallel, [&](std::size_t k) {
        try {
            results[k] = is_zero(comps[k].second, config.zero);
        } catch (const InconclusiveError& e) {
            inconclusive[k] = e.what();
        }
    });

    JacobiStatus status;
    status.kind = JacobiStatus::Kind::Verified;
    status.regime = Regime::Exact;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (!inconclusive[k].empty()) {
            if (status.kind == JacobiStatus::Kind::Verified)
                status.kind = JacobiStatus::Kind::Inconclusive;
            status.witnesses.push_back({comps[k].first, comps[k].second, inconclusive[k]});
        } else if (results[k].verdict == ZeroVerdict::ProvenNonzero) {
            status.kind = JacobiStatus::Kind::Failed;
        } else if (results[k].regime == Regime::Numeric) {
            if (status.regime == Regime::Exact) status.regime = Regime::Numeric;
        }
    }
    if (status.kind == JacobiStatus::Kind::Failed) {
        std::vector<Witness> w;
        for (std::size_t k = 0; k < comps.size(); ++k)
            if (inconclusive[k].empty() && results[k].verdict == ZeroVerdict::ProvenNonzero)
                w.push_back({comps[k].first, comps[k].second, "[pi,pi] component"});
        status.witnesses = std::move(w);
    }
    return PoissonStructure{pi, status};
}

// ---------------------------------------------------------------------------
// lie_poisson and extraction
// ---------------------------------------------------------------------------

PoissonStructure lie_poisson(const LieAlgebraSpec& algebra, ChartPtr chart) {
    const int k = algebra.dim();
    if (!chart) {
        std::vector<std::string> names;
        for (int i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
        chart = make_chart(std::move(names));
    }
    if (chart->dim() != k) throw DataError("lie_poisson chart dimension must equal the algebra's");
    MultivectorField pi(chart, 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            ScalarExpr coeff;
            for (int m = 0; m < k; ++m) {
                Rational c = algebra.c(i, j, m);
                if (c != 0) coeff += ScalarExpr::rational(c) * ScalarExpr::var(m);
            }
            if (!coeff.is_structural_zero()) pi.add({i, j}, coeff);
        }
    // Jacobi for the constants implies Jacobi for the linear bivector.
    JacobiStatus status;
    status.kind = JacobiStatus::Kind::Verified;
    status.regime = Regime::Exact;
    return PoissonStructure{std::move(pi), status};
}

std::optional<LieAlgebraSpec> extract_lie_algebra(const MultivectorField& pi) {
    if (pi.degree() != 2) return std::nullopt;
    const int k = pi.dim();
    std::vector<std::tuple<int, int, int, Rational>> entries;
    for (auto& [idx, coeff] : pi.components()) {
        ScalarExpr remainder = coeff;
        for (int m = 0; m < k; ++m) {
            ScalarExpr cm = coeff.diff(m);
            auto r = cm.as_rational_constant();
            if (!r) return std::nullopt;  // nonlinear component
            if (*r != 0) {
                entries.emplace_back(idx[0], idx[1], m, *r);
                remainder = remainder - ScalarExpr::rational(*r) * ScalarExpr::var(m);
            }
        }
        if (!remainder.is_structural_zero()) return std::nullopt;  // affine offset
    }
    try {
        return LieAlgebraSpec(k, entries);
    } catch (const DataError&) {
        return std::nullopt;  // linear but not a Lie algebra
    }
}

// ---------------------------------------------------------------------------
// casimir_check / koszul bracket
// ---------------------------------------------------------------------------

DifferentialForm differential(const ScalarExpr& f, ChartPtr chart) {
    DifferentialForm df(std::move(chart), 1);
    for (int i = 0; i < df.dim(); ++i) df.add({i}, f.diff(i));
    return df;
}

CasimirVerdict casimir_check(const ScalarExpr& f, const PoissonStructure& pi,
                             const ZeroConfig& config) {
    if (f.max_var() >= pi.bivector.dim())
        throw ChartError("casimir candidate references a coordinate outside the chart");
    MultivectorField sharp_df = contract(pi.bivector, differential(f, pi.chart_ptr()));
    CasimirVerdict verdict;
    verdict.casimir = true;
    for (auto& [idx, value] : sharp_df.components()) {
        ZeroResult zr = is_zero(value, config);
        if (zr.verdict == ZeroVerdict::ProvenNonzero) {
            verdict.casimir = false;
            verdict.witnesses.push_back({idx, value, "pi # df component"});
        } else if (zr.regime == Regime::Numeric) {
            verdict.regime = Regime::Numeric;
        }
    }
    return verdict;
}

DifferentialForm koszul_bracket(const DifferentialForm& alpha, const DifferentialForm& beta,
                                const MultivectorField& lambda) {
    require_same_chart(alpha.chart(), lambda.chart(), "koszul_bracket");
    require_same_chart(beta.chart(), lambda.chart(), "koszul_bracket");
    if (alpha.degree() != 1 || beta.degree() != 1 || lambda.degree() != 2)
        throw ChartError("koszul_bracket expects two 1-forms and a bivector");
    MultivectorField sa = contract(lambda, alpha);
    MultivectorField sb = contract(lambda, beta);
    ScalarExpr pairing_ab = evaluate(lambda, {alpha, beta});
    DifferentialForm dpair = differential(pairing_ab, lambda.chart_ptr());
    return lie_derivative(sa, beta) - lie_derivative(sb, alpha) - dpair;
}

// ---------------------------------------------------------------------------
// weighted products
// ---------------------------------------------------------------------------

namespace {

void require_nonvanishing(const ScalarExpr& f, int dim, const ZeroConfig& config,
                          const char* which) {
    std::mt19937_64 rng(config.seed ^ f.hash() ^ 0xCA51ull);
    std::uniform_int_distribution<int> den(1, 7);
    int checked = 0;
    for (int s = 0; s < config.samples; ++s) {
        std::vector<Rational> pt(static_cast<size_t>(dim));
        for (auto& c : pt) {
            int dd = den(rng);
            std::uniform_int_distribution<int> num(-2 * dd, 2 * dd);
            c = Rational(num(rng), dd);
        }
        try {
            EvalResult v = f.eval(pt);
            ++checked;
            bool zero = v.exact ? (v.rational == 0)
                                : (std::fabs(static_cast<double>(v.approx)) <
                                   config.epsilon);
            if (zero)
                throw DataError(std::string(which) +
                                ": designated Casimir vanishes on the sampled verification set");
        } catch (const EvalError&) {
            continue;
        }
    }
    if (checked == 0)
        throw DataError(std::string(which) + ": could not sample the Casimir (poles everywhere)");
}

}  // namespace

WeightedProductSpec::WeightedProductSpec(WeightedFactor factor1, WeightedFactor factor2,
                                         const ZeroConfig& config)
    : f1_(std::move(factor1)), f2_(std::move(factor2)) {
    CasimirVerdict v1 = casimir_check(f1_.casimir, f1_.structure, config);
    if (!v1.casimir) throw DataError("factor 1: designated function is not a Casimir");
    CasimirVerdict v2 = casimir_check(f2_.casimir, f2_.structure, config);
    if (!v2.casimir) throw DataError("factor 2: designated function is not a Casimir");
    require_nonvanishing(f1_.casimir, f1_.structure.bivector.dim(), config, "factor 1");
    require_nonvanishing(f2_.casimir, f2_.structure.bivector.dim(), config, "factor 2");
}

ChartPtr product_chart(const ChartSpec& a, const ChartSpec& b) {
    std::vector<std::string> names = a.names();
    for (auto& n : b.names()) {
        if (a.index_of(n))
            throw ChartError("product chart: coordinate name '" + n + "' appears in both factors");
        names.push_back(n);
    }
    return make_chart(std::move(names));
}

ScalarExpr shift_vars(const ScalarExpr& e, int offset) {
    int mv = e.max_var();
    if (mv < 0 || offset == 0) return e;
    std::vector<std::optional<ScalarExpr>> repl(static_cast<size_t>(mv) + 1);
    for (int i = 0; i <= mv; ++i) repl[static_cast<size_t>(i)] = ScalarExpr::var(i + offset);
    return e.subst(repl);
}

PoissonStructure weighted_product(const WeightedProductSpec& spec, const EngineConfig& config) {
    const auto& P1 = spec.factor1().structure.bivector;
    const auto& P2 = spec.factor2().structure.bivector;
    ChartPtr chart = product_chart(P1.chart(), P2.chart());
    const int d1 = P1.dim();

    ScalarExpr f1 = spec.factor1().casimir;                  // factor-1 variables keep indices
    ScalarExpr f2 = shift_vars(spec.factor2().casimir, d1);  // factor-2 variables re-indexed

    MultivectorField pi(chart, 2);
    for (auto& [idx, coeff] : P1.components()) pi.add(idx, f2 * coeff);
    for (auto& [idx, coeff] : P2.components()) {
        MultiIndex shifted{idx[0] + d1, idx[1] + d1};
        pi.add(shifted, f1 * shift_vars(coeff, d1));
    }
    PoissonStructure result = jacobi_check(pi, config);
    if (result.status.kind == JacobiStatus::Kind::Failed)
        throw DataError("weighted product failed its Jacobi verification");
    return result;
}

}  // namespace vorcal
