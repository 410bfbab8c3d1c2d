#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "qso6/errors.hpp"

namespace qso6 {

// Element of Q(i): re + im*sqrt(-1) with exact rational parts.
// mpq_class keeps each part in lowest terms, so equality is structural.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() = default;
    GaussianRational(long r) : re(r) {}        // NOLINT: implicit by design
    GaussianRational(mpq_class r) : re(std::move(r)) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    GaussianRational conj() const { return {re, mpq_class(-im)}; }
    mpq_class norm() const { return re * re + im * im; }  // re^2 + im^2

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {mpq_class(-re), mpq_class(-im)}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw DivisionByZero();
        mpq_class n = b.norm();
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

} // namespace qso6
