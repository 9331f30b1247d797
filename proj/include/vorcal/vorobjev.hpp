#pragma once

#include "vorcal/coupling.hpp"

namespace vorcal {

// Section of the conormal bundle along the zero section: sum_a c_a(q) dy_a
// with base-variable coefficients.
class IsoSection {
  public:
    explicit IsoSection(FiberedChart chart);

    const FiberedChart& chart() const { return chart_; }
    void set(int fiber_a, ScalarExpr coeff);
    ScalarExpr coeff(int fiber_a) const;
    bool structurally_zero() const;

    IsoSection operator+(const IsoSection& o) const;
    IsoSection operator-(const IsoSection& o) const;
    IsoSection operator-() const;
    friend IsoSection operator*(const ScalarExpr& s, const IsoSection& sec) {
        IsoSection r(sec.chart_);
        for (int a = 0; a < sec.chart_.fiber_dim(); ++a) r.set(a, s * sec.coeff(a));
        return r;
    }

    // the conormal 1-form on the total chart
    DifferentialForm as_form() const;

  private:
    FiberedChart chart_;
    std::vector<ScalarExpr> coeffs_;
};

// Natural pairing: the fiberwise-linear function sum_a c_a(q) y_a.
ScalarExpr ell(const IsoSection& s);

// Convert a 1-form into a section: requires purely conormal components with
// fiber-independent coefficients; throws DataError on nonlinear fiber
// dependence or surviving base components.
IsoSection iso_section_from_form(const DifferentialForm& w, const FiberedChart& chart);

// Pullback-connection tables of a Poisson structure along the zero-section
// leaf: sigma images, covariant-derivative table, curvature table.
struct PullbackConnectionData {
    FiberedChart chart;
    MultivectorField ambient;              // Lambda on the total chart
    BaseIndexedForm omega;                 // leaf symplectic form
    std::vector<DifferentialForm> sigma;   // sigma(d/dq_i)
    std::vector<std::vector<IsoSection>> nabla;  // nabla_{d/dq_i} dy_a, indexed [i][a]
    std::map<std::pair<int, int>, IsoSection> curv;  // R_sigma(X_i, X_j), i < j
    bool flat = true;

    IsoSection curvature(int i, int j) const;        // antisymmetric lookup
    ScalarExpr ell_curvature(int i, int j) const;    // ell(R_sigma(X_i,X_j))
};

// Leaf symplectic form of a structure whose zero section is a leaf: the
// inverse (in the fixed sign convention) of the base block at the zero
// section.
BaseIndexedForm leaf_symplectic_form(const PoissonStructure& lambda, const FiberedChart& chart,
                                     const EngineConfig& config = {});

// Build the sigma / nabla / curvature tables via restricted Koszul brackets.
// Requires: the zero section is a leaf of lambda with leaf form omega and the
// base block is nondegenerate there.
PullbackConnectionData pullback_connection(const PoissonStructure& lambda,
                                           const FiberedChart& chart,
                                           const BaseIndexedForm& omega,
                                           const EngineConfig& config = {});

// nabla_{X_i} s = [sigma(X_i), s] restricted to the zero section.
IsoSection nabla_apply(const PullbackConnectionData& pcd, int base_i, const IsoSection& s);

// Restricted Koszul bracket of two conormal sections (the isotropy bracket).
IsoSection fiber_bracket(const PullbackConnectionData& pcd, const IsoSection& s1,
                         const IsoSection& s2);

// R_nabla(X_i, X_j) s for coordinate fields.
IsoSection curvature_nabla(const PullbackConnectionData& pcd, int i, int j, const IsoSection& s);

struct FirstApproximation {
    GeometricData data;        // flat-on-frame connection, Lie-Poisson nu, phi = omega x J
    PoissonStructure structure;  // composed coupling structure
    ScalarExpr jet;            // J^1_0 f on the product chart
    PullbackConnectionData tables;
};

// weighted-product linearization pipeline: the Vorobjev linearization of a Casimir-weighted
// product (symplectic factor) x (Lie-Poisson factor) at the zero-section
// leaf, assembled from the pullback connection.  Requires factor-1 Casimir
// identically 1, factor-1 bivector nondegenerate, factor 2 Lie-Poisson, and
// f(0) = 1 exactly.
FirstApproximation first_approximation(const WeightedProductSpec& spec,
                                       const EngineConfig& config = {});

struct MapVerdict {
    bool verified = true;
    bool inconclusive = false;
    Regime regime = Regime::Exact;
    Regime invertibility = Regime::Exact;
    std::vector<Witness> witnesses;
};

// psi is Poisson (psi_* source = target) and fixes the zero section.  The
// transport identity is checked in the inverse-free form
// (J psi . source . J psi^T)(x) = target(psi(x)); invertibility is certified
// by the declared inverse when present, else by a nonvanishing Jacobian
// determinant.
MapVerdict verify_linearizing_map(const ChartMap& psi, const PoissonStructure& source,
                                  const PoissonStructure& target, const FiberedChart& chart,
                                  const EngineConfig& config = {});

// Closed-form symplectic volume profile of a leaf family (Liouville
// normalization omega^n / n!).
struct LeafVolumeProfile {
    ChartPtr params;     // parameter chart (volume variables)
    int leaf_dim = 2;    // 2n
    ScalarExpr volume;   // closed form in the parameters
};

// Positivity of the profile on sampled parameter values in (0, 2]; throws
// DataError when a sample comes out nonpositive.
LeafVolumeProfile make_volume_profile(ChartPtr params, int leaf_dim, ScalarExpr volume,
                                      const EngineConfig& config = {});

// Liouville product rule: a^{n1} b^{n2} vol1 vol2 for the leaf form
// a.omega_1 (+) b.omega_2.
ScalarExpr product_leaf_volume(const ScalarExpr& vol1, int n1, const ScalarExpr& vol2, int n2,
                               const ScalarExpr& a, const ScalarExpr& b);

struct ObstructionCertificate {
    bool a_constant = false;
    bool b_constant = false;
    bool obstruction = false;            // A non-constant while B constant
    ScalarExpr a_derivative;             // witness of non-constancy
    std::optional<ScalarExpr> matching;  // r2(r1) with Vol_B(r2) = Vol_A(r1)
    std::string note;
};

// Example-2 mode: certify A non-constant vs B constant.  Example-3 mode:
// solve Vol_B(r2) = Vol_A(r1) for r2 when Vol_B is linear homogeneous in its
// parameter; unsolvable matchings are reported, never guessed.
ObstructionCertificate volume_obstruction(const LeafVolumeProfile& a, const LeafVolumeProfile& b,
                                          const EngineConfig& config = {});

struct SphereClassSample {
    Rational r1;
    Rational volume_match;  // r1 / (1 + r1^2)
    Rational sphere_class;  // r1
    bool mismatch = false;
};

struct SphereClassCertificate {
    ScalarExpr matching;     // r1/(1+r1^2) from the volume matcher
    ScalarExpr difference;   // r1 - matching
    ScalarExpr numerator;    // r1^3
    ScalarExpr denominator;  // 1 + r1^2
    bool symbolic = false;   // difference == numerator/denominator with both proven nonzero
    std::vector<SphereClassSample> samples;
    bool all_mismatch = false;
};

// The sphere-class constraint r2 = r1 against the volume matching
// r2 = r1/(1+r1^2): exact contradiction for every r1 > 0, with per-sample
// exact witnesses on the grid.  Grid values must be positive (the degenerate
// r1 = 0 leaf is excluded).
SphereClassCertificate sphere_class_certificate(const std::vector<Rational>& grid,
                                                const EngineConfig& config = {});

}  // namespace vorcal
