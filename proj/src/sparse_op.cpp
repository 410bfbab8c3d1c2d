#include "qso6/sparse_op.hpp"

#include <algorithm>
#include <cassert>

#include "qso6/errors.hpp"

namespace qso6 {

SparseOperator SparseOperator::identity(int dim, BasisKind basis) {
    SparseOperator id(dim, basis);
    for (int i = 0; i < dim; ++i) id.cols_[static_cast<std::size_t>(i)].emplace_back(i, Scalar::one());
    return id;
}

SparseOperator SparseOperator::diagonal(std::vector<Scalar> entries, BasisKind basis) {
    SparseOperator d(static_cast<int>(entries.size()), basis);
    for (int i = 0; i < d.dim(); ++i)
        if (!entries[static_cast<std::size_t>(i)].is_zero())
            d.cols_[static_cast<std::size_t>(i)].emplace_back(i, std::move(entries[static_cast<std::size_t>(i)]));
    return d;
}

void SparseOperator::set_entry(int row, int col, Scalar v) {
    auto& c = cols_[static_cast<std::size_t>(col)];
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) {
        if (v.is_zero()) c.erase(it);
        else it->second = std::move(v);
    } else if (!v.is_zero()) {
        c.emplace(it, row, std::move(v));
    }
}

Scalar SparseOperator::entry(int row, int col) const {
    const auto& c = cols_[static_cast<std::size_t>(col)];
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return Scalar::zero();
}

bool SparseOperator::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

bool SparseOperator::is_diagonal() const {
    for (int c = 0; c < dim(); ++c)
        for (const auto& [r, v] : cols_[static_cast<std::size_t>(c)])
            if (r != c) return false;
    return true;
}

std::size_t SparseOperator::nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

int SparseOperator::first_nonzero_column() const {
    for (int c = 0; c < dim(); ++c)
        if (!cols_[static_cast<std::size_t>(c)].empty()) return c;
    return -1;
}

void SparseOperator::check_compat(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw DimMismatch();
    if (a.basis_ != b.basis_) throw BasisMismatch();
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator::check_compat(a, b);
    SparseOperator r(a.dim(), a.basis_);
    for (int c = 0; c < a.dim(); ++c) {
        const auto& ca = a.cols_[static_cast<std::size_t>(c)];
        const auto& cb = b.cols_[static_cast<std::size_t>(c)];
        auto& out = r.cols_[static_cast<std::size_t>(c)];
        std::size_t i = 0, j = 0;
        while (i < ca.size() || j < cb.size()) {
            if (j == cb.size() || (i < ca.size() && ca[i].first < cb[j].first)) out.push_back(ca[i++]);
            else if (i == ca.size() || cb[j].first < ca[i].first) out.push_back(cb[j++]);
            else {
                Scalar v = ca[i].second + cb[j].second;
                if (!v.is_zero()) out.emplace_back(ca[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
    }
    return r;
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) { return a + (-b); }

SparseOperator SparseOperator::operator-() const {
    SparseOperator r = *this;
    for (auto& c : r.cols_)
        for (auto& [row, v] : c) v = -v;
    return r;
}

SparseOperator SparseOperator::scaled(const Scalar& s) const {
    SparseOperator r(dim(), basis_);
    if (s.is_zero()) return r;
    for (int c = 0; c < dim(); ++c)
        for (const auto& [row, v] : cols_[static_cast<std::size_t>(c)])
            r.cols_[static_cast<std::size_t>(c)].emplace_back(row, v * s);
    return r;
}

SparseOperator SparseOperator::conj_transpose() const {
    SparseOperator r(dim(), basis_);
    for (int c = 0; c < dim(); ++c)
        for (const auto& [row, v] : cols_[static_cast<std::size_t>(c)])
            r.cols_[static_cast<std::size_t>(row)].emplace_back(c, v.conj());
    for (auto& c : r.cols_)
        std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
}

SparseOperator SparseOperator::scale_rows(const std::vector<Scalar>& w) const {
    SparseOperator r(dim(), basis_);
    for (int c = 0; c < dim(); ++c)
        for (const auto& [row, v] : cols_[static_cast<std::size_t>(c)]) {
            Scalar s = v * w[static_cast<std::size_t>(row)];
            if (!s.is_zero()) r.cols_[static_cast<std::size_t>(c)].emplace_back(row, std::move(s));
        }
    return r;
}

SparseOperator SparseOperator::scale_cols(const std::vector<Scalar>& w) const {
    SparseOperator r(dim(), basis_);
    for (int c = 0; c < dim(); ++c)
        for (const auto& [row, v] : cols_[static_cast<std::size_t>(c)]) {
            Scalar s = v * w[static_cast<std::size_t>(c)];
            if (!s.is_zero()) r.cols_[static_cast<std::size_t>(c)].emplace_back(row, std::move(s));
        }
    return r;
}

bool SparseOperator::operator==(const SparseOperator& o) const {
    if (dim() != o.dim() || basis_ != o.basis_) return false;
    return (*this - o).is_zero();
}

SparseOperator::Column SparseOperator::multiply_column(const SparseOperator& b, int c) const {
    // accumulate a * b[:,c] in a dense scratch over touched rows
    std::vector<Scalar> scratch(static_cast<std::size_t>(dim()));
    std::vector<char> seen(static_cast<std::size_t>(dim()), 0);
    std::vector<int> touched;
    for (const auto& [k, bv] : b.cols_[static_cast<std::size_t>(c)]) {
        for (const auto& [row, av] : cols_[static_cast<std::size_t>(k)]) {
            if (!seen[static_cast<std::size_t>(row)]) {
                seen[static_cast<std::size_t>(row)] = 1;
                touched.push_back(row);
            }
            scratch[static_cast<std::size_t>(row)] += av * bv;
        }
    }
    std::sort(touched.begin(), touched.end());
    Column out;
    out.reserve(touched.size());
    for (int row : touched) {
        if (!scratch[static_cast<std::size_t>(row)].is_zero())
            out.emplace_back(row, std::move(scratch[static_cast<std::size_t>(row)]));
    }
    return out;
}

SparseOperator SparseOperator::multiply_serial(const SparseOperator& a, const SparseOperator& b) {
    check_compat(a, b);
    SparseOperator r(a.dim(), a.basis_);
    for (int c = 0; c < a.dim(); ++c) r.cols_[static_cast<std::size_t>(c)] = a.multiply_column(b, c);
    return r;
}

SparseOperator SparseOperator::multiply(const SparseOperator& a, const SparseOperator& b) {
    check_compat(a, b);
    SparseOperator r(a.dim(), a.basis_);
    const int n = a.dim();
#pragma omp parallel for schedule(dynamic, 4)
    for (int c = 0; c < n; ++c) r.cols_[static_cast<std::size_t>(c)] = a.multiply_column(b, c);
    return r;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    return SparseOperator::multiply(a, b);
}

SparseOperator::Column SparseOperator::apply(const Column& x) const {
    std::vector<Scalar> scratch(static_cast<std::size_t>(dim()));
    std::vector<char> seen(static_cast<std::size_t>(dim()), 0);
    std::vector<int> touched;
    for (const auto& [k, xv] : x) {
        for (const auto& [row, av] : cols_[static_cast<std::size_t>(k)]) {
            if (!seen[static_cast<std::size_t>(row)]) {
                seen[static_cast<std::size_t>(row)] = 1;
                touched.push_back(row);
            }
            scratch[static_cast<std::size_t>(row)] += av * xv;
        }
    }
    std::sort(touched.begin(), touched.end());
    Column out;
    for (int row : touched)
        if (!scratch[static_cast<std::size_t>(row)].is_zero())
            out.emplace_back(row, std::move(scratch[static_cast<std::size_t>(row)]));
    return out;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b - b * a;
}

SparseOperator q_commutator(const SparseOperator& a, const SparseOperator& b, const Scalar& g) {
    return (a * b).scaled(g) - (b * a).scaled(g.inverse());
}

} // namespace qso6
