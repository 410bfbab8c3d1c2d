#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qso6/errors.hpp"
#include "qso6/generators.hpp"

using namespace qso6;

namespace {

SparseOperator random_operator(int dim, BasisKind basis, unsigned seed, int fill = 3) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> row(0, dim - 1), coeff(-3, 3);
    SparseOperator op(dim, basis);
    for (int c = 0; c < dim; ++c)
        for (int k = 0; k < fill; ++k) {
            int v = coeff(rng);
            if (v != 0) op.set_entry(row(rng), c, Scalar::from_int(v) * Scalar::qpow(coeff(rng)));
        }
    return op;
}

} // namespace

TEST_CASE("diagonal generators carry the dual eigenvalues") {
    auto m = ModelParams::canonical(3);
    SparseOperator as1 = build_generator(GenKind::Astar, 1, BasisKind::TildeB, m);
    REQUIRE(as1.is_diagonal());
    for (int c = 0; c < m.dim(); ++c) {
        const Profile& p = m.profiles()[static_cast<std::size_t>(c)];
        CHECK(as1.entry(c, c) == m.theta(p.t + p.u));
    }
    SparseOperator a1s = build_generator(GenKind::A, 1, BasisKind::TildeBStar, m);
    REQUIRE(a1s.is_diagonal());
    for (int c = 0; c < m.dim(); ++c) {
        const Profile& p = m.profiles()[static_cast<std::size_t>(c)];
        CHECK(a1s.entry(c, c) == m.theta(p.t + p.u));
    }
    SparseOperator as2 = build_generator(GenKind::Astar, 2, BasisKind::TildeB, m);
    SparseOperator as3 = build_generator(GenKind::Astar, 3, BasisKind::TildeB, m);
    for (int c = 0; c < m.dim(); ++c) {
        const Profile& p = m.profiles()[static_cast<std::size_t>(c)];
        CHECK(as2.entry(c, c) == m.theta(p.u + p.s));
        CHECK(as3.entry(c, c) == m.theta(p.s + p.t));
    }
}

TEST_CASE("hopping generator: top column has a single theta_0 entry") {
    for (int D = 1; D <= 5; ++D) {
        auto m = ModelParams::canonical(D);
        SparseOperator a1 = build_generator(GenKind::A, 1, BasisKind::TildeB, m);
        int top = m.index_of({D, 0, 0, 0});
        const auto& col = a1.col(top);
        REQUIRE(col.size() == 1);
        CHECK(col[0].first == m.index_of({D - 1, 1, 0, 0}));
        CHECK(col[0].second == m.theta(0));
    }
}

TEST_CASE("hopping generator columns: <= 4 off-diagonal entries, column sum b0") {
    for (int D = 1; D <= 5; ++D) {
        auto m = ModelParams::canonical(D);
        for (int axis = 1; axis <= 3; ++axis) {
            SparseOperator a = build_generator(GenKind::A, axis, BasisKind::TildeB, m);
            for (int c = 0; c < m.dim(); ++c) {
                CHECK(a.col(c).size() <= 4);
                Scalar sum;
                for (const auto& [r, v] : a.col(c)) sum += v;
                CHECK(sum == m.b(0));
            }
        }
    }
}

TEST_CASE("tildeB* realization swaps the roles of A and A*") {
    auto m = ModelParams::canonical(4);
    for (int axis = 1; axis <= 3; ++axis) {
        SparseOperator a_b = build_generator(GenKind::A, axis, BasisKind::TildeB, m);
        SparseOperator as_bs = build_generator(GenKind::Astar, axis, BasisKind::TildeBStar, m);
        CHECK(a_b.dim() == as_bs.dim());
        // identical coefficient tables, different basis tag
        for (int c = 0; c < m.dim(); ++c) {
            const auto& x = a_b.col(c);
            const auto& y = as_bs.col(c);
            REQUIRE(x.size() == y.size());
            for (std::size_t k = 0; k < x.size(); ++k) {
                CHECK(x[k].first == y[k].first);
                CHECK(x[k].second == y[k].second);
            }
        }
    }
}

TEST_CASE("operator algebra errors") {
    auto m3 = ModelParams::canonical(3);
    auto m2 = ModelParams::canonical(2);
    SparseOperator a = build_generator(GenKind::A, 1, BasisKind::TildeB, m3);
    SparseOperator b = build_generator(GenKind::A, 1, BasisKind::TildeBStar, m3);
    SparseOperator c = build_generator(GenKind::A, 1, BasisKind::TildeB, m2);
    CHECK_THROWS_AS((void)(a + b), BasisMismatch);
    CHECK_THROWS_AS((void)(a * c), DimMismatch);
}

TEST_CASE("q-commutator of an operator with itself") {
    auto m = ModelParams::canonical(2);
    SparseOperator x = build_generator(GenKind::A, 2, BasisKind::TildeB, m);
    Scalar qm = Scalar::qpow(1) - Scalar::qpow(-1);
    CHECK(q_commutator(x, x, Scalar::qpow(1)) == (x * x).scaled(qm));
}

TEST_CASE("parallel multiply matches the serial reference") {
    auto m = ModelParams::canonical(4);
    auto gens = six_generators(BasisKind::TildeB, m);
    SparseOperator p1 = SparseOperator::multiply(gens[0], gens[1]);
    SparseOperator p2 = SparseOperator::multiply_serial(gens[0], gens[1]);
    CHECK(p1 == p2);
    for (unsigned seed = 0; seed < 4; ++seed) {
        SparseOperator x = random_operator(m.dim(), BasisKind::TildeB, seed);
        SparseOperator y = random_operator(m.dim(), BasisKind::TildeB, seed + 100);
        CHECK(SparseOperator::multiply(x, y) == SparseOperator::multiply_serial(x, y));
    }
}

TEST_CASE("gram adjoint check") {
    auto m = ModelParams::canonical(3);
    CHECK(gram_adjoint_check(build_generator(GenKind::A, 1, BasisKind::TildeB, m), m));
    CHECK(gram_adjoint_check(build_generator(GenKind::A, 2, BasisKind::TildeB, m), m));
    CHECK(gram_adjoint_check(build_generator(GenKind::Astar, 2, BasisKind::TildeB, m), m));
    SparseOperator bad(m.dim(), BasisKind::TildeB);
    bad.set_entry(3, 0, Scalar::one());  // no mirrored entry
    CHECK(!gram_adjoint_check(bad, m));
}

TEST_CASE("spectrum multiplicities") {
    auto m3 = ModelParams::canonical(3);
    SparseOperator a1 = build_generator(GenKind::A, 1, BasisKind::TildeBStar, m3);
    CHECK(multiplicity_of(a1, m3.theta(0)) == 4);
    CHECK(multiplicity_of(a1, m3.theta(1)) == 6);
    CHECK(multiplicity_of(a1, m3.theta(2)) == 6);
    CHECK(multiplicity_of(a1, m3.theta(3)) == 4);
    auto m1 = ModelParams::canonical(1);
    SparseOperator a1d = build_generator(GenKind::A, 1, BasisKind::TildeBStar, m1);
    CHECK(multiplicity_of(a1d, m1.theta(0)) == 2);
    CHECK(multiplicity_of(a1d, m1.theta(1)) == 2);
    for (int D = 1; D <= 6; ++D) {
        auto m = ModelParams::canonical(D);
        SparseOperator a = build_generator(GenKind::A, 1, BasisKind::TildeBStar, m);
        int total = 0;
        for (const auto& [v, mult] : spectrum_multiplicities(a)) total += mult;
        CHECK(total == m.dim());
    }
    SparseOperator nd = build_generator(GenKind::A, 1, BasisKind::TildeB, m3);
    CHECK_THROWS_AS(spectrum_multiplicities(nd), NotDiagonal);
}

TEST_CASE("rescaled generators") {
    auto m = ModelParams::canonical(3);
    // B4 (main) is diagonal with entries theta_{t+u} / (H(q^-2 - q^2))
    SparseOperator b4 = rescaled_B(4, Variant::main, BasisKind::TildeB, m);
    REQUIRE(b4.is_diagonal());
    Scalar h2m = m.H() * (Scalar::qpow(-2) - Scalar::qpow(2));
    for (int c = 0; c < m.dim(); ++c) {
        const Profile& p = m.profiles()[static_cast<std::size_t>(c)];
        CHECK(b4.entry(c, c) == m.theta(p.t + p.u) / h2m);
    }
    // entries of B1 lie in i*Q(q) in canonical mode: conj(x) = -x
    SparseOperator b1 = rescaled_B(1, Variant::main, BasisKind::TildeB, m);
    for (int c = 0; c < m.dim(); ++c)
        for (const auto& [r, v] : b1.col(c)) CHECK(v.conj() == -v);
}

TEST_CASE("B6 equals the nested q-commutator of B1..B5") {
    Scalar qs = Scalar::qpow(1);
    for (Variant variant : {Variant::main, Variant::main2}) {
        auto m = ModelParams::canonical(2);
        auto B = all_rescaled_B(variant, BasisKind::TildeB, m);
        SparseOperator nested = q_commutator(
            B[0], q_commutator(B[1], q_commutator(B[2], q_commutator(B[3], B[4], qs), qs), qs), qs);
        CHECK(B[5] == -nested);
    }
}

TEST_CASE("pbw ladder basics") {
    auto m = ModelParams::canonical(2);
    PbwSet pbw(Variant::main, BasisKind::TildeB, m);
    Scalar qs = Scalar::qpow(1);
    CHECK(pbw.I(1, 3) == q_commutator(pbw.B()[0], pbw.B()[1], qs));
    CHECK(pbw.I(3, 1) == -pbw.I(1, 3));
    CHECK(pbw.I(6, 1) == -pbw.I(1, 6));
}

TEST_CASE("operator json dump") {
    auto m = ModelParams::canonical(1);
    SparseOperator a1 = build_generator(GenKind::A, 1, BasisKind::TildeB, m);
    std::string j = dump_operator_json(a1, m, "A1");
    CHECK(j.find("\"basis\":\"tildeB\"") != std::string::npos);
    CHECK(j.find("\"kind\":\"A1\"") != std::string::npos);
    CHECK(j.find("entries") != std::string::npos);
}
