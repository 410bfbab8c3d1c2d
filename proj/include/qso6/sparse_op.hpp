#pragma once

#include <vector>

#include "qso6/scalar.hpp"

namespace qso6 {

enum class BasisKind { TildeB, TildeBStar };

inline const char* basis_name(BasisKind b) { return b == BasisKind::TildeB ? "tildeB" : "tildeBstar"; }

// Profile-indexed square matrix over F, stored column-major with sorted,
// zero-free columns.  Action on a basis vector is column data.
class SparseOperator {
public:
    using Column = std::vector<std::pair<int, Scalar>>;

    SparseOperator() = default;
    SparseOperator(int dim, BasisKind basis) : basis_(basis), cols_(static_cast<std::size_t>(dim)) {}

    static SparseOperator identity(int dim, BasisKind basis);
    static SparseOperator diagonal(std::vector<Scalar> entries, BasisKind basis);

    int dim() const { return static_cast<int>(cols_.size()); }
    BasisKind basis() const { return basis_; }
    const Column& col(int c) const { return cols_[static_cast<std::size_t>(c)]; }
    Column& mutable_col(int c) { return cols_[static_cast<std::size_t>(c)]; }

    void set_entry(int row, int col, Scalar v);
    Scalar entry(int row, int col) const;

    bool is_zero() const;
    bool is_diagonal() const;
    std::size_t nnz() const;
    int first_nonzero_column() const;  // -1 when zero

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    SparseOperator operator-() const;
    SparseOperator scaled(const Scalar& s) const;
    SparseOperator conj_transpose() const;            // q -> q, i -> -i entrywise transpose
    SparseOperator scale_rows(const std::vector<Scalar>& w) const;
    SparseOperator scale_cols(const std::vector<Scalar>& w) const;

    bool operator==(const SparseOperator& o) const;

    // OpenMP kernel parallelized over result columns, plus the serial
    // reference implementation it is tested against.
    static SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);
    static SparseOperator multiply_serial(const SparseOperator& a, const SparseOperator& b);

    // y = this * x for a sparse coordinate vector
    Column apply(const Column& x) const;

private:
    BasisKind basis_ = BasisKind::TildeB;
    std::vector<Column> cols_;

    static void check_compat(const SparseOperator& a, const SparseOperator& b);
    Column multiply_column(const SparseOperator& b, int c) const;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
// q-commutator with parameter g: g*a*b - g^{-1}*b*a
SparseOperator q_commutator(const SparseOperator& a, const SparseOperator& b, const Scalar& g);

} // namespace qso6
