#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qso6/errors.hpp"
#include "qso6/model_params.hpp"

using namespace qso6;

namespace {
long binom3(long n) { return n * (n - 1) * (n - 2) / 6; }  // C(n,3)
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
} // namespace

TEST_CASE("profile enumeration: count and order") {
    auto p1 = enumerate_profiles(1);
    REQUIRE(p1.size() == 4);
    CHECK(p1.front() == Profile{0, 0, 0, 1});
    CHECK(p1.back() == Profile{1, 0, 0, 0});
    CHECK(enumerate_profiles(3).size() == 20);
    CHECK(enumerate_profiles(6).size() == 84);
    for (int D = 1; D <= 10; ++D) {
        auto ps = enumerate_profiles(D);
        CHECK(static_cast<long>(ps.size()) == binom3(D + 3));
        for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i - 1] < ps[i]);  // lexicographic
    }
}

TEST_CASE("profile <-> distance triple bijection") {
    CHECK(triple_of({3, 0, 0, 0}) == DistanceTriple{0, 0, 0});
    CHECK(triple_of({0, 1, 1, 1}) == DistanceTriple{2, 2, 2});
    CHECK(profile_of({1, 1, 2}, 3) == Profile{1, 1, 1, 0});
    for (int D = 1; D <= 6; ++D)
        for (const auto& p : enumerate_profiles(D)) {
            DistanceTriple t = triple_of(p);
            CHECK(in_admissible_triples(t.h, t.i, t.j, D));
            CHECK(profile_of(t, D) == p);
        }
    CHECK_THROWS_AS(profile_of({1, 0, 0}, 3), NotInPprime);   // odd sum
    CHECK_THROWS_AS(profile_of({3, 1, 1}, 3), NotInPprime);   // triangle violation
    CHECK_THROWS_AS(profile_of({3, 3, 2}, 3), NotInPprime);   // sum > 2D
    CHECK_THROWS_AS(profile_of({-1, 1, 0}, 3), NotInPprime);
}

TEST_CASE("canonical scalar tables at D=3") {
    auto m = ModelParams::canonical(3);
    CHECK(m.theta(0).str() == "(q^2 + 1 + q^-2)/(1)");
    CHECK(m.theta(1) == Scalar::one());
    CHECK(m.theta(2) == Scalar::from_int(-1));
    CHECK(m.theta(3) == -m.theta(0));
    CHECK(m.c(2) == Scalar::qpow(2) + Scalar::qpow(-2));
    CHECK(m.K() == Scalar::parse("(q^1 + q^-1)/(q^2 - q^-2)"));
}

TEST_CASE("canonical tables: general identities") {
    for (int D = 1; D <= 8; ++D) {
        auto m = ModelParams::canonical(D);
        CHECK(m.c(1) == Scalar::one());
        CHECK(m.c(0).is_zero());
        CHECK(m.b(D).is_zero());
        CHECK(m.theta(0) == m.b(0));
        for (int i = 0; i <= D; ++i) {
            CHECK(m.c(i) + m.b(i) == m.b(0));                    // bipartite: c_i + b_i = k
            CHECK(m.theta(i) + m.theta(D - i) == Scalar::zero());
            if (i <= D - 1) CHECK(m.b(i) == m.c(D - i));          // antipodal 2-cover
        }
    }
}

TEST_CASE("H and K in canonical mode") {
    for (int D = 1; D <= 6; ++D) {
        auto m = ModelParams::canonical(D);
        CHECK(m.K() == Scalar::gauss_i() * m.H());
        CHECK(m.K().conj() == m.K());  // no imaginary part
        CHECK(m.K() == Scalar::binom_plus(D - 2) / Scalar::binom_minus(2));
        // H (q^2 - q^-2) = -i (q^{D-2} + q^{2-D})
        CHECK(m.H() * Scalar::binom_minus(2) == -Scalar::gauss_i() * Scalar::binom_plus(D - 2));
    }
}

TEST_CASE("coefficient C") {
    auto m = ModelParams::canonical(3);
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t)
            for (int u = 0; u <= 3; ++u) CHECK(m.C(0, s, t, u).is_zero());
    CHECK(m.C(1, 1, 1, 0) == Scalar::one());
    for (int D = 1; D <= 6; ++D) {
        auto md = ModelParams::canonical(D);
        CHECK(md.C(D, 0, 0, 0) == md.theta(0));
    }
}

TEST_CASE("codec round-trip of C(1,1,1,0) at D=3") {
    auto m = ModelParams::canonical(3);
    Scalar c = m.C(1, 1, 1, 0);
    CHECK(Scalar::parse(c.str()) == c);
    CHECK(Scalar::parse(c.str()).str() == c.str());
}

TEST_CASE("four-term partition of the neighborhood") {
    for (int D = 1; D <= 6; ++D) {
        auto m = ModelParams::canonical(D);
        for (const auto& p : m.profiles()) {
            Scalar sum = m.C(p.r, p.t, p.s, p.u) + m.C(p.s, p.u, p.r, p.t) + m.C(p.t, p.s, p.u, p.r) +
                         m.C(p.u, p.r, p.t, p.s);
            CHECK(sum == m.b(0));
        }
    }
}

TEST_CASE("three-term recurrences for the eigenvalue sequence") {
    Scalar beta = Scalar::qpow(2) + Scalar::qpow(-2);
    for (int D = 1; D <= 8; ++D) {
        auto m = ModelParams::canonical(D);
        Scalar rhs2 = Scalar::binom_plus(D - 2) * Scalar::binom_plus(D - 2);
        for (long i = -2; i <= D + 2; ++i) {
            CHECK(m.theta(i - 1) - beta * m.theta(i) + m.theta(i + 1) == Scalar::zero());
            Scalar lhs = m.theta(i - 1) * m.theta(i - 1) - beta * m.theta(i - 1) * m.theta(i) +
                         m.theta(i) * m.theta(i);
            CHECK(lhs == rhs2);  // = -H^2 (q^2-q^-2)^2 in canonical mode
            CHECK(lhs == -m.H() * m.H() * Scalar::binom_minus(2) * Scalar::binom_minus(2));
        }
    }
}

TEST_CASE("intersection tables") {
    for (int D = 1; D <= 8; ++D) {
        auto m = ModelParams::canonical(D);
        const auto& T = m.tables();
        CHECK(T.k[0] == Scalar::one());
        CHECK(T.k[D] == Scalar::one());
        for (int i = 0; i <= D; ++i) CHECK(T.k[i] == T.k[D - i]);
        for (int h = 0; h <= D; ++h)
            for (int i = 0; i <= D; ++i)
                for (int j = 0; j <= D; ++j) {
                    CHECK(T.p[h][i][j] == T.p[h][j][i]);
                    CHECK(T.p[h][i][j].is_zero() == !in_admissible_triples(h, i, j, D));
                }
    }
    auto m3 = ModelParams::canonical(3);
    CHECK(m3.size_x() == Scalar::parse("(2*q^2 + 4 + 2*q^-2)/(1)"));
    CHECK(std::abs(m3.size_x().evaluate({kPhi, 0.0}).real() - 10.0) < 1e-9);
}

TEST_CASE("profile counts n(r,s,t,u)") {
    for (int D = 1; D <= 6; ++D) {
        auto m = ModelParams::canonical(D);
        int idx_top = m.index_of({D, 0, 0, 0});
        CHECK(m.n(idx_top) == m.size_x());
        for (int i = 0; i < m.dim(); ++i) CHECK(!m.n(i).is_zero());
    }
    auto m3 = ModelParams::canonical(3);
    int idx = m3.index_of({0, 0, 0, 3});
    CHECK(std::abs(m3.n(idx).evaluate({kPhi, 0.0}).real() - 10.0) < 1e-9);
}

TEST_CASE("custom H mode") {
    CHECK_THROWS_AS(ModelParams::custom(3, Scalar::zero()), InvalidH);
    auto m = ModelParams::custom(3, Scalar::qpow(1));
    CHECK(m.h_mode() == HMode::custom);
    CHECK(m.K() == Scalar::gauss_i() * Scalar::qpow(1));
    CHECK_THROWS_AS(m.tables(), CustomHMode);
    CHECK_THROWS_AS(m.n(0), CustomHMode);
    // theta_i still obeys the defining recurrence with the custom H
    Scalar beta = Scalar::qpow(2) + Scalar::qpow(-2);
    for (long i = 0; i <= 3; ++i)
        CHECK(m.theta(i - 1) - beta * m.theta(i) + m.theta(i + 1) == Scalar::zero());
}

TEST_CASE("index_of") {
    auto m = ModelParams::canonical(4);
    for (int i = 0; i < m.dim(); ++i) CHECK(m.index_of(m.profiles()[static_cast<std::size_t>(i)]) == i);
    CHECK(m.index_of({5, 0, 0, 0}) == -1);
    CHECK(m.index_of({1, 1, 1, 0}) == -1);  // degree 3, not 4
}
