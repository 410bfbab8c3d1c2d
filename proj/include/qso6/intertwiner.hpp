#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qso6/relations.hpp"

namespace qso6 {

// Transition involution between the two canonical module bases, in tildeB
// coordinates: K maps tildeB(p) to tildeB*(p), K^2 = I, and conjugation by K
// exchanges every A^(i) with A*^(i).
struct TransitionResult {
    SparseOperator K;
    Scalar lambda;                 // K'^2 = lambda I for the raw nullspace generator
    bool perfect_square = false;   // lambda admitted an exact square root in F
    int solution_dim = 0;          // dimension of the stacked intertwiner equation space
    bool cert_conjugation = false;
    bool cert_involution = false;
    bool cert_normalization = false;  // entry at (D000, D000) equals 1/|X|
    bool cert_duality = false;
};

// Exact solve of the stacked system {K A = A* K, K A* = A K} over F.
// Throws CustomHMode (normalization needs |X| and n) and
// SolutionSpaceNotOneDim; a failed perfect-square test is reported in the
// result rather than thrown.
TransitionResult compute_K(const ModelParams& params);

// Same construction in floating point at q = q0.
struct NumericTransitionResult {
    std::vector<std::vector<std::complex<double>>> K;  // K[row][col]
    int solution_dim = 0;
    double involution_residual = 0;   // max |(K^2 - I)[a,b]|
    double conjugation_residual = 0;  // max over the six exchange relations
    double normalization_residual = 0;
};
NumericTransitionResult compute_K_numeric(const ModelParams& params, std::complex<double> q0,
                                          double null_threshold = 1e-8);

// Entrywise check that conjugation by K turns each tildeB-realized generator
// into its dual-basis counterpart.
SuiteReport verify_duality(const SparseOperator& K, const ModelParams& params);

std::string dump_K_json(const TransitionResult& res, const ModelParams& params);
std::string dump_K_csv(const TransitionResult& res, const ModelParams& params, std::complex<double> q0);

} // namespace qso6
