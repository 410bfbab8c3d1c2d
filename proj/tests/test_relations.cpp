#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qso6/relations.hpp"

using namespace qso6;

TEST_CASE("orientation classifier on the hexagon") {
    CHECK(classify_orientation({1, 2, 3}, 6) == Orientation::clockwise);
    CHECK(classify_orientation({2, 4, 6}, 6) == Orientation::clockwise);
    CHECK(classify_orientation({3, 2, 1}, 6) == Orientation::cclockwise);
    CHECK(classify_orientation({5, 3, 1}, 6) == Orientation::cclockwise);
    CHECK(classify_orientation({6, 1, 3}, 6) == Orientation::clockwise);
    CHECK(classify_orientation({1, 3, 2, 4}, 6) == Orientation::neither);
    CHECK(classify_orientation({1, 2, 3, 4}, 6) == Orientation::clockwise);
    CHECK(classify_orientation({4, 3, 2, 1}, 6) == Orientation::cclockwise);
}

TEST_CASE("diagonal overlap predicate") {
    CHECK(diagonals_overlap(1, 3, 2, 4, 6));
    CHECK(diagonals_overlap(2, 5, 3, 6, 6));
    CHECK(!diagonals_overlap(1, 2, 3, 4, 6));
    CHECK(!diagonals_overlap(1, 4, 2, 3, 6));
    CHECK(!diagonals_overlap(1, 2, 4, 5, 6));
}

TEST_CASE("nrels suite holds in both bases") {
    for (int D = 1; D <= 3; ++D) {
        auto m = ModelParams::canonical(D);
        for (BasisKind basis : {BasisKind::TildeB, BasisKind::TildeBStar}) {
            SuiteReport rep = check_nrels(m, basis);
            CHECK(rep.relations.size() == 27);
            CHECK(rep.passed());
        }
    }
}

TEST_CASE("suites are H-homogeneous: custom H = q") {
    auto m = ModelParams::custom(2, Scalar::qpow(1));
    CHECK(check_nrels(m, BasisKind::TildeB).passed());
    CHECK(check_recover(m, BasisKind::TildeB).passed());
    CHECK(check_uq_defining(m, Variant::main, BasisKind::TildeB).passed());
    CHECK(check_pbw_relations(m, Variant::main, BasisKind::TildeB).passed());
}

TEST_CASE("recover suite") {
    for (int D = 1; D <= 2; ++D) {
        auto m = ModelParams::canonical(D);
        SuiteReport rep = check_recover(m, BasisKind::TildeB);
        CHECK(rep.relations.size() == 12);
        CHECK(rep.passed());
    }
    // scalar sanity: H^4 (q^2-q^-2)^4 = (q^{D-2}+q^{2-D})^4 in canonical mode
    for (int D = 1; D <= 5; ++D) {
        auto m = ModelParams::canonical(D);
        Scalar hq = m.H() * (Scalar::qpow(2) - Scalar::qpow(-2));
        CHECK(hq.pow(4) == Scalar::binom_plus(D - 2).pow(4));
    }
}

TEST_CASE("uq defining relations for both theorem assignments") {
    auto m = ModelParams::canonical(3);
    for (Variant v : {Variant::main, Variant::main2}) {
        SuiteReport rep = check_uq_defining(m, v, BasisKind::TildeB);
        CHECK(rep.relations.size() == 21);
        CHECK(rep.passed());
    }
    // diagonal generators commute trivially at D=2
    auto m2 = ModelParams::canonical(2);
    auto B = all_rescaled_B(Variant::main, BasisKind::TildeB, m2);
    CHECK(B[1].is_diagonal());
    CHECK(B[3].is_diagonal());
    CHECK(commutator(B[1], B[3]).is_zero());
}

TEST_CASE("pbw examples") {
    auto m = ModelParams::canonical(2);
    PbwSet pbw(Variant::main, BasisKind::TildeB, m);
    Scalar qs = Scalar::qpow(1);
    CHECK(pbw.I(1, 3) == q_commutator(pbw.B()[0], pbw.B()[1], qs));
    // [I12, I23]_q = -I31 = I13
    CHECK(q_commutator(pbw.I(1, 2), pbw.I(2, 3), qs) == -pbw.I(3, 1));
    CHECK(commutator(pbw.I(1, 2), pbw.I(3, 4)).is_zero());
    // crossing expansion: the sequence 1,2,3,4 runs clockwise
    Scalar f = Scalar::qpow(-2) - Scalar::qpow(2);
    CHECK(commutator(pbw.I(1, 3), pbw.I(2, 4)) ==
          (pbw.I(1, 2) * pbw.I(3, 4) + pbw.I(2, 3) * pbw.I(4, 1)).scaled(f));
}

TEST_CASE("pbw suite passes") {
    for (int D = 1; D <= 2; ++D) {
        auto m = ModelParams::canonical(D);
        for (Variant v : {Variant::main, Variant::main2}) {
            SuiteReport rep = check_pbw_relations(m, v, BasisKind::TildeB);
            CHECK(rep.passed());
            CHECK(rep.relations.size() == 15 + 120 + 30 + 30);
        }
    }
}

TEST_CASE("appendix identities") {
    for (int D = 1; D <= 4; ++D) {
        auto m = ModelParams::canonical(D);
        SuiteReport rep = check_appendix(m);
        INFO(rep.to_json());
        CHECK(rep.passed());
    }
}

TEST_CASE("negative control: a single coefficient perturbation is caught") {
    auto m = ModelParams::canonical(2);
    GeneratorSet gens = make_generator_set(BasisKind::TildeB, m);
    // bump one hopping coefficient by 1
    int col = m.index_of({1, 1, 0, 0});
    int row = gens.g[0].col(col).front().first;
    gens.g[0].set_entry(row, col, gens.g[0].entry(row, col) + Scalar::one());
    SuiteReport rep = check_nrels(gens, m);
    CHECK(!rep.passed());
    bool witnessed = false;
    for (const auto& r : rep.relations)
        if (!r.holds && r.witness) witnessed = true;
    CHECK(witnessed);
    SuiteReport rec = check_recover(gens, m);
    CHECK(!rec.passed());
}

TEST_CASE("commutant dimension certifies irreducibility") {
    CHECK(check_commutant_exact(ModelParams::canonical(1)) == 1);
    CHECK(check_commutant_exact(ModelParams::canonical(2)) == 1);
    CHECK(check_commutant_numeric(ModelParams::canonical(2), {2.0, 0.0}) == 1);
    CHECK(check_commutant_numeric(ModelParams::canonical(3), {2.0, 0.0}) == 1);
}

TEST_CASE("characteristic polynomial agrees across the two realizations") {
    for (int D = 1; D <= 2; ++D) {
        auto m = ModelParams::canonical(D);
        for (int axis = 1; axis <= 3; ++axis) {
            auto cb = char_poly(build_generator(GenKind::A, axis, BasisKind::TildeB, m));
            auto cbs = char_poly(build_generator(GenKind::A, axis, BasisKind::TildeBStar, m));
            REQUIRE(cb.size() == cbs.size());
            for (std::size_t k = 0; k < cb.size(); ++k) CHECK(cb[k] == cbs[k]);
        }
    }
}

TEST_CASE("numeric spectrum comparison") {
    auto m = ModelParams::canonical(3);
    auto s1 = numeric_spectrum(build_generator(GenKind::A, 1, BasisKind::TildeB, m), {2.0, 0.0});
    auto s2 = numeric_spectrum(build_generator(GenKind::A, 1, BasisKind::TildeBStar, m), {2.0, 0.0});
    REQUIRE(s1.size() == s2.size());
    for (std::size_t k = 0; k < s1.size(); ++k) CHECK(std::abs(s1[k] - s2[k]) < 1e-8);
}

TEST_CASE("suite report json") {
    auto m = ModelParams::canonical(1);
    SuiteReport rep = check_nrels(m, BasisKind::TildeB);
    std::string j = rep.to_json();
    CHECK(j.find("\"passed\": true") != std::string::npos);
    CHECK(j.find("holds exactly") != std::string::npos);
}
