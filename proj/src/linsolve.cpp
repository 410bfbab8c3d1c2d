#include "qso6/linsolve.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace qso6 {

void SparseSystem::add_row(std::vector<std::pair<int, Scalar>> row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Scalar>> merged;
    for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
        else merged.push_back(std::move(e));
    }
    merged.erase(
        std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second.is_zero(); }),
        merged.end());
    if (!merged.empty()) rows.push_back(std::move(merged));
}

namespace {

using Row = std::vector<std::pair<int, Scalar>>;

// dst -= f * src  (sparse merge)
Row axpy(const Row& dst, const Row& src, const Scalar& f) {
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -(f * src[j].second));
            ++j;
        } else {
            Scalar v = dst[i].second - f * src[j].second;
            if (!v.is_zero()) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

NullspaceResult nullspace(SparseSystem sys, bool want_basis) {
    const int n = sys.ncols;
    auto& rows = sys.rows;
    std::vector<char> active(rows.size(), 1);
    std::vector<int> colcount(static_cast<std::size_t>(n), 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++colcount[static_cast<std::size_t>(c)];

    std::vector<std::pair<int, Row>> pivots;  // (pivot column, normalized row)
    std::vector<char> is_pivot_col(static_cast<std::size_t>(n), 0);

    for (;;) {
        // Markowitz-style pivot: minimize fill estimate, then entry complexity
        long best_score = std::numeric_limits<long>::max();
        std::size_t best_row = rows.size();
        int best_col = -1;
        std::size_t best_cx = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r] || rows[r].empty()) continue;
            long rw = static_cast<long>(rows[r].size()) - 1;
            for (const auto& [c, v] : rows[r]) {
                long score = rw * (colcount[static_cast<std::size_t>(c)] - 1);
                std::size_t cx = v.complexity();
                if (score < best_score || (score == best_score && cx < best_cx)) {
                    best_score = score;
                    best_row = r;
                    best_col = c;
                    best_cx = cx;
                }
            }
        }
        if (best_row == rows.size()) break;

        Row prow = std::move(rows[best_row]);
        active[best_row] = 0;
        rows[best_row].clear();
        for (const auto& [c, v] : prow) --colcount[static_cast<std::size_t>(c)];
        Scalar pivot_val;
        for (const auto& [c, v] : prow)
            if (c == best_col) pivot_val = v;
        Scalar inv = pivot_val.inverse();
        for (auto& [c, v] : prow) v = v * inv;

        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            auto it = std::lower_bound(rows[r].begin(), rows[r].end(), best_col,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it == rows[r].end() || it->first != best_col) continue;
            Scalar f = it->second;
            for (const auto& [c, v] : rows[r]) --colcount[static_cast<std::size_t>(c)];
            rows[r] = axpy(rows[r], prow, f);
            for (const auto& [c, v] : rows[r]) ++colcount[static_cast<std::size_t>(c)];
            if (rows[r].empty()) active[r] = 0;
        }
        is_pivot_col[static_cast<std::size_t>(best_col)] = 1;
        pivots.emplace_back(best_col, std::move(prow));
    }

    NullspaceResult res;
    res.rank = static_cast<int>(pivots.size());
    if (!want_basis) return res;

    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot_col[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    for (int f : free_cols) {
        std::vector<Scalar> x(static_cast<std::size_t>(n));
        x[static_cast<std::size_t>(f)] = Scalar::one();
        // pivots are in elimination order; every pivot row involves only its
        // own pivot column, later pivot columns, and free columns
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Scalar acc;
            for (const auto& [c, v] : it->second) {
                if (c == it->first) continue;
                if (!x[static_cast<std::size_t>(c)].is_zero()) acc += v * x[static_cast<std::size_t>(c)];
            }
            x[static_cast<std::size_t>(it->first)] = -acc;
        }
        res.basis.push_back(std::move(x));
    }
    return res;
}

int system_rank(SparseSystem sys) { return nullspace(std::move(sys), false).rank; }

} // namespace qso6
