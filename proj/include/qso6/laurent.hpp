#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qso6/gaussian_rational.hpp"

namespace qso6 {

// Laurent polynomial in q with Gaussian-integer coefficients, stored densely
// between lo() and hi().  Coefficients that fit below kSmallMax live in int64
// arrays; anything larger is promoted to GMP integers transparently.  The zero
// polynomial is the empty coefficient block.
class ZiPoly {
public:
    static constexpr std::int64_t kSmallMax = std::int64_t(1) << 31;

    ZiPoly() = default;  // zero

    static ZiPoly xpow(int e);                    // q^e
    static ZiPoly integer(std::int64_t re, std::int64_t im = 0);
    static ZiPoly binom(int a, int sign);         // q^a + sign*q^{-a}, a >= 1

    bool is_zero() const { return size_ == 0; }
    bool is_small() const { return !big_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + size_ - 1; }
    int width() const { return size_; }

    GaussianRational coeff(int e) const;          // exact coefficient of q^e
    bool is_one() const;

    friend ZiPoly operator+(const ZiPoly& a, const ZiPoly& b);
    friend ZiPoly operator-(const ZiPoly& a, const ZiPoly& b);
    friend ZiPoly operator*(const ZiPoly& a, const ZiPoly& b);
    ZiPoly operator-() const;

    ZiPoly shifted(int k) const;                  // * q^k
    ZiPoly scaled(std::int64_t re, std::int64_t im) const;
    ZiPoly scaled_z(const mpz_class& re, const mpz_class& im) const;
    ZiPoly conj() const;                          // i -> -i on coefficients

    // Divide by q^a + sign*q^{-a} (a >= 1); returns false (out untouched) when
    // the division is not exact.
    bool divexact_binom(int a, int sign, ZiPoly& out) const;

    // gcd over Z of all coefficient integers (both parts); 0 for the zero poly.
    mpz_class int_content() const;
    void divide_content(const mpz_class& g);      // exact division of all coefficients

    std::complex<double> eval(const std::complex<double>& q0) const;

    bool operator==(const ZiPoly& o) const;
    bool operator!=(const ZiPoly& o) const { return !(*this == o); }

    // (exponent, coefficient) pairs in increasing exponent order, zeros skipped.
    std::vector<std::pair<int, GaussianRational>> terms() const;
    // Build from rational terms; the pulled-out rational content is returned
    // through `content` so that the stored coefficients are coprime integers.
    static ZiPoly from_terms(const std::vector<std::pair<int, GaussianRational>>& ts,
                             mpq_class& content);

private:
    int lo_ = 0;
    int size_ = 0;
    bool big_ = false;
    std::vector<std::int64_t> sre_, sim_;
    std::vector<mpz_class> bre_, bim_;

    void trim();
    void promote();
    mpz_class zre(int idx) const { return big_ ? bre_[idx] : mpz_class(static_cast<long>(sre_[idx])); }
    mpz_class zim(int idx) const { return big_ ? bim_[idx] : mpz_class(static_cast<long>(sim_[idx])); }

    friend ZiPoly add_impl(const ZiPoly& a, const ZiPoly& b, int bsign);
};

} // namespace qso6
