#pragma once

#include <map>
#include <string>
#include <vector>

#include "vorcal/vorobjev.hpp"

namespace vorcal {

// Lexical, syntactic or resolution failure with source position.
struct ParseError : Error {
    ParseError(int line, int col, const std::string& message,
               std::vector<std::string> expected_tokens = {});
    int line;
    int col;
    std::vector<std::string> expected;
};

enum class DeclKind { Chart, Scalar, Bivector, LieAlg, Map, Product, Geometry, Volume };

struct ChartDecl {
    ChartPtr chart;
    int base_dim = 0;    // == dim() when no split was declared
    bool has_split = false;
    int decl_line = 0;
};

struct ScalarDecl {
    std::string chart;
    ScalarExpr expr;
    bool casimir = false;
    int decl_line = 0;
};

struct BivectorDecl {
    std::string chart;
    MultivectorField field;
    std::string liealg;  // nonempty when declared as liepoisson(...)
    int decl_line = 0;

    BivectorDecl(std::string chart_name, MultivectorField f, std::string alg, int line)
        : chart(std::move(chart_name)), field(std::move(f)), liealg(std::move(alg)),
          decl_line(line) {}
};

struct LieAlgDecl {
    LieAlgebraSpec spec;
    int decl_line = 0;
};

struct MapDecl {
    ChartMap map;
    std::string source_chart;
    std::string target_chart;
    int decl_line = 0;
};

struct ProductDecl {
    std::string factor1, casimir1, factor2, casimir2;
    int decl_line = 0;
};

struct GeometryDecl {
    GeometricData data;
    std::string chart;
    int decl_line = 0;
};

struct VolumeDecl {
    LeafVolumeProfile profile;
    int decl_line = 0;
};

struct Definitions {
    std::map<std::string, ChartDecl> charts;
    std::map<std::string, ScalarDecl> scalars;  // scalar and casimir declarations
    std::map<std::string, BivectorDecl> bivectors;
    std::map<std::string, LieAlgDecl> liealgs;
    std::map<std::string, MapDecl> maps;
    std::map<std::string, ProductDecl> products;
    std::map<std::string, GeometryDecl> geometries;
    std::map<std::string, VolumeDecl> volumes;
    std::vector<std::pair<DeclKind, std::string>> order;

    const ChartDecl& chart(const std::string& name) const;
    const BivectorDecl& bivector(const std::string& name) const;
    const ScalarDecl& scalar(const std::string& name) const;
    const ProductDecl& product(const std::string& name) const;
    const GeometryDecl& geometry(const std::string& name) const;
    const VolumeDecl& volume(const std::string& name) const;
    const MapDecl& chart_map(const std::string& name) const;

    // materialize a weighted-product spec from a product declaration
    WeightedProductSpec build_product(const std::string& name,
                                      const EngineConfig& config = {}) const;
    // Poisson structure (with Jacobi verdict) for a named bivector
    PoissonStructure build_structure(const std::string& name,
                                     const EngineConfig& config = {}) const;
    FiberedChart fibered(const std::string& chart_name) const;
};

Definitions parse_definitions(std::string_view text, const EngineConfig& config = {});

// Canonical printer; parse(print(defs)) reproduces the definitions
// structurally.
std::string print_definitions(const Definitions& defs);

// Merge, tolerating identical redeclarations; conflicting ones throw.
void merge_definitions(Definitions& into, const Definitions& from);

bool structurally_equal(const Definitions& a, const Definitions& b);

}  // namespace vorcal
