#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qso6/generators.hpp"

namespace qso6 {

struct RelationWitness {
    std::string relation;
    Profile column;
    std::string residual;  // canonical scalar string
};

struct RelationResult {
    std::string id;
    bool holds = false;
    std::optional<RelationWitness> witness;
};

struct SuiteReport {
    std::string suite;
    int D = 0;
    std::string h_mode;
    std::vector<RelationResult> relations;
    double wall_seconds = 0;

    bool passed() const;
    std::string to_json() const;
    std::string summary() const;
};

// Six generators in a fixed basis: [A1, A2, A3, A*1, A*2, A*3].  Suites accept
// an explicit set so tests can inject perturbations as negative controls.
struct GeneratorSet {
    std::array<SparseOperator, 6> g;
    BasisKind basis;
};

GeneratorSet make_generator_set(BasisKind basis, const ModelParams& params);

SuiteReport check_nrels(const GeneratorSet& gens, const ModelParams& params);
SuiteReport check_nrels(const ModelParams& params, BasisKind basis);

SuiteReport check_recover(const GeneratorSet& gens, const ModelParams& params);
SuiteReport check_recover(const ModelParams& params, BasisKind basis);

SuiteReport check_uq_defining(const std::array<SparseOperator, 6>& B, const ModelParams& params,
                              Variant variant, BasisKind basis);
SuiteReport check_uq_defining(const ModelParams& params, Variant variant, BasisKind basis);

SuiteReport check_pbw_relations(const ModelParams& params, Variant variant, BasisKind basis);

// Pointwise scalar identity lists from the technical appendix.
SuiteReport check_appendix(const ModelParams& params);

// Dimension of {X : [X, G] = 0 for all six generators}; 1 certifies
// irreducibility.
int check_commutant_exact(const ModelParams& params);
int check_commutant_numeric(const ModelParams& params, std::complex<double> q0,
                            double null_threshold = 1e-8);

// Orientation of a vertex sequence on the labeled n-gon.
enum class Orientation { clockwise, cclockwise, neither };
Orientation classify_orientation(const std::vector<int>& seq, int n);
bool diagonals_overlap(int h, int i, int j, int k, int n);

// Characteristic polynomial coefficients c_0..c_n (ascending, monic) of
// det(tI - X), computed exactly by the Faddeev-LeVerrier recurrence.
std::vector<Scalar> char_poly(const SparseOperator& x);

// Eigenvalues of X evaluated at q0, sorted by (re, im); used for the numeric
// cross-basis spectrum comparison at diameters where exact work is too big.
std::vector<std::complex<double>> numeric_spectrum(const SparseOperator& x, std::complex<double> q0);

} // namespace qso6
