#pragma once

#include <vector>

#include "qso6/scalar.hpp"

namespace qso6 {

// Homogeneous sparse linear system over F, rows as sorted (column, value).
struct SparseSystem {
    int ncols = 0;
    std::vector<std::vector<std::pair<int, Scalar>>> rows;

    explicit SparseSystem(int n) : ncols(n) {}
    void add_row(std::vector<std::pair<int, Scalar>> row);
};

struct NullspaceResult {
    int rank = 0;
    std::vector<std::vector<Scalar>> basis;  // dense vectors, one per free column
    int dim() const { return static_cast<int>(basis.size()); }
};

// Exact Gaussian elimination with fill-aware pivoting; returns the nullspace.
NullspaceResult nullspace(SparseSystem sys, bool want_basis = true);

int system_rank(SparseSystem sys);

} // namespace qso6
