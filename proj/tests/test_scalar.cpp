#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <map>
#include <random>

#include "qso6/errors.hpp"
#include "qso6/scalar.hpp"

using namespace qso6;

namespace {

Scalar q() { return Scalar::qpow(1); }

// Independent long-division oracle over exponent->integer maps (test-only).
// Divides laurent polynomials with integer coefficients; requires exactness.
std::map<int, long> long_divide(std::map<int, long> num, const std::map<int, long>& den) {
    REQUIRE(!den.empty());
    auto lead = *den.rbegin();
    std::map<int, long> quot;
    while (!num.empty()) {
        auto nl = *num.rbegin();
        REQUIRE(nl.second % lead.second == 0);
        int e = nl.first - lead.first;
        long c = nl.second / lead.second;
        quot[e] += c;
        for (const auto& [de, dc] : den) {
            num[de + e] -= dc * c;
            if (num[de + e] == 0) num.erase(de + e);
        }
    }
    return quot;
}

Scalar from_int_terms(const std::map<int, long>& m) {
    Scalar s;
    for (const auto& [e, c] : m) s += Scalar::from_int(c) * Scalar::qpow(e);
    return s;
}

std::mt19937 rng(12345);

Scalar random_scalar(bool allow_imag = true, int max_exp = 3) {
    std::uniform_int_distribution<int> coeff(-4, 4), expd(-max_exp, max_exp), nterms(1, 4);
    auto random_poly = [&]() {
        std::vector<std::pair<int, GaussianRational>> ts;
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            GaussianRational c{mpq_class(coeff(rng))};
            if (allow_imag && coeff(rng) > 2) c.im = coeff(rng);
            ts.emplace_back(expd(rng), c);
        }
        return ts;
    };
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto numv = random_poly(), denv = random_poly();
        try {
            Scalar s = Scalar::normalize(numv, denv);
            return s;
        } catch (const DivisionByZero&) {
        }
    }
    return Scalar::one();
}

Scalar random_nonzero(bool allow_imag = true) {
    for (;;) {
        Scalar s = random_scalar(allow_imag);
        if (!s.is_zero()) return s;
    }
}

} // namespace

TEST_CASE("field arithmetic examples") {
    Scalar qm = q() - q().inverse();                      // q - q^-1
    Scalar qp = q() + q().inverse();                      // q + q^-1
    CHECK(qm * qp == Scalar::qpow(2) - Scalar::qpow(-2)); // difference of squares
    CHECK((Scalar::qpow(2) - Scalar::qpow(-2)) / qm == qp);
    CHECK(Scalar::gauss_i() * Scalar::gauss_i() == Scalar::from_int(-1));
}

TEST_CASE("normalize: exact cancellation against long-division oracle") {
    std::map<int, long> num{{3, 1}, {-3, -1}}, den{{1, 1}, {-1, -1}};
    auto expected = long_divide(num, den);  // oracle: (q^3-q^-3)/(q-q^-1)
    REQUIRE(expected == std::map<int, long>{{2, 1}, {0, 1}, {-2, 1}});
    Scalar s = Scalar::normalize({{3, GaussianRational(1)}, {-3, GaussianRational(-1)}},
                                 {{1, GaussianRational(1)}, {-1, GaussianRational(-1)}});
    CHECK(s == from_int_terms(expected));
    CHECK(s.str() == "(q^2 + 1 + q^-2)/(1)");
}

TEST_CASE("normalize: zero and constant scaling") {
    Scalar z = Scalar::normalize({}, {{5, GaussianRational(1)}});
    CHECK(z.is_zero());
    CHECK(z.str() == "(0)/(1)");
    Scalar half_q2 = Scalar::normalize({{2, GaussianRational(2)}}, {{0, GaussianRational(4)}});
    CHECK(half_q2.str() == "(1/2*q^2)/(1)");
    CHECK_THROWS_AS(Scalar::normalize({{0, GaussianRational(1)}}, {}), DivisionByZero);
}

TEST_CASE("evaluate") {
    Scalar qp = q() + q().inverse();
    CHECK(std::abs(qp.evaluate({2.0, 0.0}) - std::complex<double>(2.5, 0.0)) < 1e-14);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Scalar s = Scalar::qpow(2) + Scalar::one() + Scalar::qpow(-2);
    CHECK(std::abs(s.evaluate({phi, 0.0}) - std::complex<double>(4.0, 0.0)) < 1e-12);
    Scalar pole = Scalar::one() / (q() - q().inverse());
    CHECK_THROWS_AS(pole.evaluate({1.0, 0.0}), PoleError);
}

TEST_CASE("evaluate is a field homomorphism away from poles") {
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = random_scalar(), b = random_scalar();
        std::complex<double> q0(1.7, 0.3);
        try {
            auto lhs = (a * b).evaluate(q0);
            auto rhs = a.evaluate(q0) * b.evaluate(q0);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
            auto lhs2 = (a + b).evaluate(q0);
            auto rhs2 = a.evaluate(q0) + b.evaluate(q0);
            CHECK(std::abs(lhs2 - rhs2) <= 1e-9 * (1.0 + std::abs(rhs2)));
        } catch (const PoleError&) {
        }
    }
}

TEST_CASE("codec: canonical strings") {
    Scalar qp = q() + q().inverse();
    CHECK(qp.str() == "(q^1 + q^-1)/(1)");
    Scalar g = Scalar::parse("(2 + 1i)/(1)");
    CHECK(g == Scalar::from_gaussian({mpq_class(2), mpq_class(1)}));
    CHECK(Scalar::parse("q") == q());
    CHECK(Scalar::parse("(q^1)/(1)") == q());
    CHECK(Scalar::parse("-3/2*q^-2") == Scalar::normalize({{-2, GaussianRational(mpq_class(-3, 2))}},
                                                          {{0, GaussianRational(1)}}));
    CHECK_THROWS_AS(Scalar::parse("(q^1 + )/(1)"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("q^1 junk"), ParseError);
}

TEST_CASE("codec round-trips") {
    for (int trial = 0; trial < 300; ++trial) {
        Scalar a = random_scalar();
        Scalar back = Scalar::parse(a.str());
        CHECK(back == a);
        CHECK(back.str() == a.str());  // format is a fixed point on canonical strings
    }
}

TEST_CASE("canonical-form uniqueness: a == b iff identical strings") {
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = random_scalar();
        Scalar r = random_nonzero();
        Scalar b = (a * r) / r;  // same value, different computation history
        CHECK(a == b);
        CHECK(a.str() == b.str());
        Scalar c = a + Scalar::one();
        CHECK(a != c);
        CHECK(a.str() != c.str());
    }
}

TEST_CASE("conjugation") {
    Scalar iq = Scalar::gauss_i() * q();
    CHECK(iq.conj() == -iq);
    Scalar real = Scalar::qpow(2) + Scalar::qpow(-2);
    CHECK(real.conj() == real);
    for (int trial = 0; trial < 100; ++trial) {
        Scalar a = random_scalar();
        CHECK(a.conj().conj() == a);
        Scalar b = random_scalar();
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("field axioms on random scalars") {
    for (int trial = 0; trial < 100; ++trial) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar::zero());
        Scalar nz = random_nonzero();
        CHECK(nz * nz.inverse() == Scalar::one());
        CHECK(a / nz * nz == a);
    }
    CHECK_THROWS_AS(Scalar::one() / Scalar::zero(), DivisionByZero);
}

TEST_CASE("square roots") {
    for (int trial = 0; trial < 50; ++trial) {
        Scalar s = random_nonzero();
        Scalar sq = s * s;
        auto root = sq.sqrt();
        REQUIRE(root.has_value());
        CHECK(*root * *root == sq);
    }
    CHECK(!q().sqrt().has_value());
    CHECK(!Scalar::from_int(2).sqrt().has_value());
    auto r = (Scalar::from_int(-1)).sqrt();
    REQUIRE(r.has_value());
    CHECK(*r * *r == Scalar::from_int(-1));
    Scalar perfect = Scalar::qpow(2) + Scalar::from_int(2) + Scalar::qpow(-2);  // (q + q^-1)^2
    auto pr = perfect.sqrt();
    REQUIRE(pr.has_value());
    CHECK(*pr * *pr == perfect);
}

TEST_CASE("powers") {
    Scalar a = q() + Scalar::one();
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) == (a * a).inverse());
    CHECK(a.pow(0) == Scalar::one());
}
