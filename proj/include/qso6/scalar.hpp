#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qso6/laurent.hpp"

namespace qso6 {

// One denominator factor (q^a + sign*q^{-a})^mult with a >= 1.
struct DenFactor {
    std::int16_t a;
    std::int8_t sign;
    std::int16_t mult;
};

// Element of the field F = Q(i)(q), stored as
//
//     content * num / (prod of binomial factors * den_other)
//
// where `content` is rational, `num` has Gaussian-integer coefficients and
// `den_other` is a primitive integer polynomial (usually 1).  Denominators
// arising in this project are products of q^a +- q^{-a}, so keeping them in
// factored form makes reduction a handful of synthetic divisions instead of a
// polynomial gcd.  The spec-level canonical fraction is produced on demand.
class Scalar {
public:
    Scalar() = default;  // zero

    static Scalar zero() { return {}; }
    static Scalar one() { return from_int(1); }
    static Scalar from_int(long v);
    static Scalar from_rational(const mpq_class& v);
    static Scalar from_gaussian(const GaussianRational& v);
    static Scalar gauss_i();                 // sqrt(-1)
    static Scalar qpow(int k);               // q^k
    static Scalar binom_plus(int a);         // q^a + q^{-a}
    static Scalar binom_minus(int a);        // q^a - q^{-a}

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar inverse() const;
    Scalar conj() const;                     // q -> q, i -> -i
    Scalar pow(int e) const;

    // Value equality (exact).
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::complex<double> evaluate(const std::complex<double>& q0, double pole_eps = 1e-12) const;

    // Spec-level canonical fraction: numerator terms and a monic denominator
    // polynomial with nonzero constant term, gcd-reduced.
    struct Canonical {
        std::vector<std::pair<int, GaussianRational>> num;  // ascending exponents
        std::vector<std::pair<int, GaussianRational>> den;  // ordinary poly, monic
    };
    Canonical canonical() const;

    std::string str() const;                 // canonical string form
    static Scalar parse(const std::string& s);
    static Scalar normalize(const std::vector<std::pair<int, GaussianRational>>& num_terms,
                            const std::vector<std::pair<int, GaussianRational>>& den_terms);

    // Exact square root in F, if one exists.
    std::optional<Scalar> sqrt() const;

    // Rough size metric used by elimination pivoting.
    std::size_t complexity() const;

private:
    mpq_class content_ = 0;
    ZiPoly num_;
    std::vector<DenFactor> bin_;
    ZiPoly den_other_ = ZiPoly::integer(1);

    void reduce_light();
    ZiPoly expanded_den() const;             // includes binomials' q^{-a} parts
    static Scalar make(mpq_class content, ZiPoly num, std::vector<DenFactor> bin, ZiPoly den_other);
};

} // namespace qso6
