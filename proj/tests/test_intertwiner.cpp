#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qso6/errors.hpp"
#include "qso6/intertwiner.hpp"

using namespace qso6;

namespace {

// Independent oracle: for each profile p, the dual basis vector tildeB*(p) is
// the unique joint eigenvector of A^(1), A^(2), A^(3) with eigenvalue triple
// (theta_{t+u}, theta_{u+s}, theta_{s+t}), scaled so that its coordinate at
// the all-diagonal profile equals 1/|X| (the coordinate forced by the two
// basis-sum identities).  Textbook dense elimination, no shared machinery
// with compute_K's sparse block solver.
std::vector<Scalar> oracle_dual_column(const ModelParams& m, int pidx) {
    const int N = m.dim();
    const Profile& p = m.profiles()[static_cast<std::size_t>(pidx)];
    int eig[3] = {p.t + p.u, p.u + p.s, p.s + p.t};
    // dense stacked matrix rows of (A - theta I) for the three axes
    std::vector<std::vector<Scalar>> rows;
    for (int axis = 1; axis <= 3; ++axis) {
        SparseOperator A = build_generator(GenKind::A, axis, BasisKind::TildeB, m);
        Scalar lam = m.theta(eig[axis - 1]);
        for (int a = 0; a < N; ++a) {
            std::vector<Scalar> row(static_cast<std::size_t>(N));
            for (int c = 0; c < N; ++c) row[static_cast<std::size_t>(c)] = A.entry(a, c);
            row[static_cast<std::size_t>(a)] -= lam;
            rows.push_back(std::move(row));
        }
    }
    // forward elimination with first-nonzero pivoting
    std::vector<int> pivot_col_of_row;
    std::size_t rank_row = 0;
    std::vector<int> pivot_cols;
    for (int col = 0; col < N && rank_row < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank_row; r < rows.size(); ++r)
            if (!rows[r][static_cast<std::size_t>(col)].is_zero()) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[rank_row], rows[sel]);
        Scalar inv = rows[rank_row][static_cast<std::size_t>(col)].inverse();
        for (auto& v : rows[rank_row]) v = v * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank_row) continue;
            Scalar f = rows[r][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int c = 0; c < N; ++c)
                rows[r][static_cast<std::size_t>(c)] -= f * rows[rank_row][static_cast<std::size_t>(c)];
        }
        pivot_cols.push_back(col);
        ++rank_row;
    }
    REQUIRE(static_cast<int>(pivot_cols.size()) == N - 1);  // one-dimensional eigenspace
    // back out the kernel vector: free column gets 1
    std::vector<Scalar> v(static_cast<std::size_t>(N));
    std::vector<char> is_pivot(static_cast<std::size_t>(N), 0);
    for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
    int freec = -1;
    for (int c = 0; c < N; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) freec = c;
    v[static_cast<std::size_t>(freec)] = Scalar::one();
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        v[static_cast<std::size_t>(pivot_cols[r])] = -rows[r][static_cast<std::size_t>(freec)];
    // normalize: coordinate at (D,0,0,0) equals 1/|X|
    int top = m.index_of({m.D(), 0, 0, 0});
    REQUIRE(!v[static_cast<std::size_t>(top)].is_zero());
    Scalar scale = m.size_x().inverse() / v[static_cast<std::size_t>(top)];
    for (auto& x : v) x = x * scale;
    return v;
}

} // namespace

TEST_CASE("compute_K at D=1: explicit involution") {
    auto m = ModelParams::canonical(1);
    TransitionResult res = compute_K(m);
    CHECK(res.solution_dim == 1);
    CHECK(res.perfect_square);
    CHECK(res.cert_involution);
    CHECK(res.cert_conjugation);
    CHECK(res.cert_normalization);
    CHECK(res.cert_duality);
    CHECK(res.K.dim() == 4);
    // |X| = 2 at D=1, so the top diagonal entry is 1/2
    int top = m.index_of({1, 0, 0, 0});
    CHECK(res.K.entry(top, top) == Scalar::from_int(2).inverse());
    CHECK((res.K * res.K) == SparseOperator::identity(4, BasisKind::TildeB));
}

TEST_CASE("compute_K certificates and oracle agreement, D = 1..3") {
    for (int D = 1; D <= 3; ++D) {
        auto m = ModelParams::canonical(D);
        TransitionResult res = compute_K(m);
        REQUIRE(res.solution_dim == 1);
        REQUIRE(res.perfect_square);
        CHECK(res.cert_involution);
        CHECK(res.cert_conjugation);
        CHECK(res.cert_normalization);
        CHECK(res.cert_duality);
        for (int pidx = 0; pidx < m.dim(); ++pidx) {
            auto col = oracle_dual_column(m, pidx);
            for (int r = 0; r < m.dim(); ++r)
                CHECK(res.K.entry(r, pidx) == col[static_cast<std::size_t>(r)]);
        }
    }
}

TEST_CASE("K structure identities") {
    auto m = ModelParams::canonical(3);
    TransitionResult res = compute_K(m);
    int top = m.index_of({3, 0, 0, 0});
    Scalar inv_x = m.size_x().inverse();
    // expanding the basis-sum identities: row at (D000) is constant 1/|X|,
    // column at (D000) carries n(p)/|X|^2
    for (int p = 0; p < m.dim(); ++p) {
        CHECK(res.K.entry(top, p) == inv_x);
        CHECK(res.K.entry(p, top) == m.n(p) * inv_x * inv_x);
    }
    // K respects the Gram form
    CHECK(gram_adjoint_check(res.K, m));
}

TEST_CASE("verify_duality rejects a perturbed K") {
    auto m = ModelParams::canonical(2);
    TransitionResult res = compute_K(m);
    CHECK(verify_duality(res.K, m).passed());
    SparseOperator bad = res.K;
    bad.set_entry(0, 0, bad.entry(0, 0) * Scalar::from_int(2));
    SuiteReport rep = verify_duality(bad, m);
    CHECK(!rep.passed());
    bool witnessed = false;
    for (const auto& r : rep.relations)
        if (!r.holds && r.witness) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("compute_K requires canonical mode") {
    auto m = ModelParams::custom(2, Scalar::qpow(1));
    CHECK_THROWS_AS(compute_K(m), CustomHMode);
}

TEST_CASE("numeric mode") {
    auto m = ModelParams::canonical(2);
    NumericTransitionResult res = compute_K_numeric(m, {2.0, 0.0});
    REQUIRE(res.solution_dim == 1);
    CHECK(res.involution_residual < 1e-10);
    CHECK(res.conjugation_residual < 1e-9);
    CHECK(res.normalization_residual < 1e-10);
    // numeric K matches the exact K evaluated at q0
    TransitionResult exact = compute_K(m);
    double worst = 0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            worst = std::max(worst, std::abs(res.K[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                                             exact.K.entry(r, c).evaluate({2.0, 0.0})));
    CHECK(worst < 1e-9);
}

TEST_CASE("json and csv dumps") {
    auto m = ModelParams::canonical(1);
    TransitionResult res = compute_K(m);
    std::string j = dump_K_json(res, m);
    CHECK(j.find("\"perfect_square\":true") != std::string::npos);
    std::string csv = dump_K_csv(res, m, {2.0, 0.0});
    CHECK(csv.rfind("row,col,re,im", 0) == 0);
}
