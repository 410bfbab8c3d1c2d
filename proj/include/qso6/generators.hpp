#pragma once

#include <array>
#include <string>
#include <vector>

#include "qso6/model_params.hpp"
#include "qso6/sparse_op.hpp"

namespace qso6 {

enum class GenKind { A, Astar };
enum class Variant { main, main2 };

inline const char* variant_name(Variant v) { return v == Variant::main ? "main" : "main2"; }

// Sparse realization of A^(axis) / A*^(axis) on the module, in either basis.
SparseOperator build_generator(GenKind kind, int axis, BasisKind basis, const ModelParams& params);

// All six generators as [A1, A2, A3, A*1, A*2, A*3].
std::array<SparseOperator, 6> six_generators(BasisKind basis, const ModelParams& params);

// Theorem-rescaled module generators B_1..B_6.
SparseOperator rescaled_B(int index, Variant variant, BasisKind basis, const ModelParams& params);
std::array<SparseOperator, 6> all_rescaled_B(Variant variant, BasisKind basis, const ModelParams& params);

// PBW elements on the hexagon: I(i,j) for distinct i,j in 1..6 with
// I(i,i+1) = B_i, I(i,j) = [B_i, I(i+1,j)]_q for j >= i+2, I(j,i) = -I(i,j).
class PbwSet {
public:
    PbwSet(Variant variant, BasisKind basis, const ModelParams& params);
    const SparseOperator& upper(int i, int j) const;   // 1 <= i < j <= 6
    SparseOperator I(int i, int j) const;              // any distinct pair, with sign
    const std::array<SparseOperator, 6>& B() const { return b_; }

private:
    std::array<SparseOperator, 6> b_;
    std::vector<SparseOperator> upper_;                // 15 operators, i < j
};

// Diagonal Gram weights 1/n(p) of the shared orthogonal-basis norms.
std::vector<Scalar> gram_weights(const ModelParams& params);

// Self-adjointness with respect to the Gram form: N X = conj(X)^T N.
bool gram_adjoint_check(const SparseOperator& x, const ModelParams& params);

// eigenvalue -> multiplicity for a diagonal operator (throws NotDiagonal)
std::vector<std::pair<Scalar, int>> spectrum_multiplicities(const SparseOperator& x);
int multiplicity_of(const SparseOperator& x, const Scalar& eigenvalue);

std::string dump_operator_json(const SparseOperator& op, const ModelParams& params,
                               const std::string& kind);

} // namespace qso6
