#include "qso6/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace qso6 {

namespace {

mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class r = (hi << 64) + mpz_class(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    return neg ? mpz_class(-r) : r;
}

} // namespace

void ZiPoly::trim() {
    auto nz = [&](int i) {
        return big_ ? (sgn(bre_[i]) != 0 || sgn(bim_[i]) != 0) : (sre_[i] != 0 || sim_[i] != 0);
    };
    int b = 0, e = size_;
    while (e > b && !nz(e - 1)) --e;
    while (b < e && !nz(b)) ++b;
    if (b == e) {
        *this = ZiPoly();
        return;
    }
    if (b > 0 || e < size_) {
        if (big_) {
            bre_ = std::vector<mpz_class>(bre_.begin() + b, bre_.begin() + e);
            bim_ = std::vector<mpz_class>(bim_.begin() + b, bim_.begin() + e);
        } else {
            sre_ = std::vector<std::int64_t>(sre_.begin() + b, sre_.begin() + e);
            sim_ = std::vector<std::int64_t>(sim_.begin() + b, sim_.begin() + e);
        }
        lo_ += b;
        size_ = e - b;
    }
    if (big_) {
        // demote when everything fits again
        bool fits = true;
        for (int i = 0; i < size_ && fits; ++i)
            fits = bre_[i].fits_slong_p() && bim_[i].fits_slong_p() &&
                   std::llabs(bre_[i].get_si()) <= kSmallMax && std::llabs(bim_[i].get_si()) <= kSmallMax;
        if (fits) {
            sre_.resize(size_);
            sim_.resize(size_);
            for (int i = 0; i < size_; ++i) {
                sre_[i] = bre_[i].get_si();
                sim_[i] = bim_[i].get_si();
            }
            bre_.clear();
            bim_.clear();
            big_ = false;
        }
    }
}

void ZiPoly::promote() {
    if (big_) return;
    bre_.resize(size_);
    bim_.resize(size_);
    for (int i = 0; i < size_; ++i) {
        bre_[i] = static_cast<long>(sre_[i]);
        bim_[i] = static_cast<long>(sim_[i]);
    }
    sre_.clear();
    sim_.clear();
    big_ = true;
}

ZiPoly ZiPoly::xpow(int e) {
    ZiPoly p;
    p.lo_ = e;
    p.size_ = 1;
    p.sre_ = {1};
    p.sim_ = {0};
    return p;
}

ZiPoly ZiPoly::integer(std::int64_t re, std::int64_t im) {
    if (re == 0 && im == 0) return {};
    ZiPoly p;
    p.lo_ = 0;
    p.size_ = 1;
    p.sre_ = {re};
    p.sim_ = {im};
    if (std::llabs(re) > kSmallMax || std::llabs(im) > kSmallMax) p.promote();
    return p;
}

ZiPoly ZiPoly::binom(int a, int sign) {
    assert(a >= 1 && (sign == 1 || sign == -1));
    ZiPoly p;
    p.lo_ = -a;
    p.size_ = 2 * a + 1;
    p.sre_.assign(p.size_, 0);
    p.sim_.assign(p.size_, 0);
    p.sre_.front() = sign;
    p.sre_.back() = 1;
    return p;
}

GaussianRational ZiPoly::coeff(int e) const {
    int idx = e - lo_;
    if (idx < 0 || idx >= size_) return {};
    return {mpq_class(zre(idx)), mpq_class(zim(idx))};
}

bool ZiPoly::is_one() const {
    return size_ == 1 && lo_ == 0 && !big_ && sre_[0] == 1 && sim_[0] == 0;
}

ZiPoly add_impl(const ZiPoly& a, const ZiPoly& b, int bsign) {
    if (a.is_zero()) return bsign > 0 ? b : -b;
    if (b.is_zero()) return a;
    ZiPoly r;
    r.lo_ = std::min(a.lo_, b.lo_);
    int hi = std::max(a.hi(), b.hi());
    r.size_ = hi - r.lo_ + 1;
    if (!a.big_ && !b.big_) {
        r.sre_.assign(r.size_, 0);
        r.sim_.assign(r.size_, 0);
        for (int i = 0; i < a.size_; ++i) {
            r.sre_[a.lo_ - r.lo_ + i] += a.sre_[i];
            r.sim_[a.lo_ - r.lo_ + i] += a.sim_[i];
        }
        for (int i = 0; i < b.size_; ++i) {
            r.sre_[b.lo_ - r.lo_ + i] += bsign * b.sre_[i];
            r.sim_[b.lo_ - r.lo_ + i] += bsign * b.sim_[i];
        }
        bool fits = true;
        for (int i = 0; i < r.size_ && fits; ++i)
            fits = std::llabs(r.sre_[i]) <= ZiPoly::kSmallMax && std::llabs(r.sim_[i]) <= ZiPoly::kSmallMax;
        if (!fits) r.promote();
    } else {
        r.big_ = true;
        r.bre_.assign(r.size_, mpz_class(0));
        r.bim_.assign(r.size_, mpz_class(0));
        for (int i = 0; i < a.size_; ++i) {
            r.bre_[a.lo_ - r.lo_ + i] += a.zre(i);
            r.bim_[a.lo_ - r.lo_ + i] += a.zim(i);
        }
        for (int i = 0; i < b.size_; ++i) {
            r.bre_[b.lo_ - r.lo_ + i] += bsign * b.zre(i);
            r.bim_[b.lo_ - r.lo_ + i] += bsign * b.zim(i);
        }
    }
    r.trim();
    return r;
}

ZiPoly operator+(const ZiPoly& a, const ZiPoly& b) { return add_impl(a, b, 1); }
ZiPoly operator-(const ZiPoly& a, const ZiPoly& b) { return add_impl(a, b, -1); }

ZiPoly ZiPoly::operator-() const {
    ZiPoly r = *this;
    if (r.big_) {
        for (auto& c : r.bre_) c = -c;
        for (auto& c : r.bim_) c = -c;
    } else {
        for (auto& c : r.sre_) c = -c;
        for (auto& c : r.sim_) c = -c;
    }
    return r;
}

ZiPoly operator*(const ZiPoly& a, const ZiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ZiPoly r;
    r.lo_ = a.lo_ + b.lo_;
    r.size_ = a.size_ + b.size_ - 1;
    if (!a.big_ && !b.big_) {
        std::vector<__int128> cre(r.size_, 0), cim(r.size_, 0);
        for (int i = 0; i < a.size_; ++i) {
            std::int64_t ar = a.sre_[i], ai = a.sim_[i];
            if (ar == 0 && ai == 0) continue;
            for (int j = 0; j < b.size_; ++j) {
                std::int64_t br = b.sre_[j], bi = b.sim_[j];
                if (br == 0 && bi == 0) continue;
                cre[i + j] += static_cast<__int128>(ar) * br - static_cast<__int128>(ai) * bi;
                cim[i + j] += static_cast<__int128>(ar) * bi + static_cast<__int128>(ai) * br;
            }
        }
        bool fits = true;
        for (int i = 0; i < r.size_ && fits; ++i) {
            __int128 x = cre[i] < 0 ? -cre[i] : cre[i];
            __int128 y = cim[i] < 0 ? -cim[i] : cim[i];
            fits = x <= ZiPoly::kSmallMax && y <= ZiPoly::kSmallMax;
        }
        if (fits) {
            r.sre_.resize(r.size_);
            r.sim_.resize(r.size_);
            for (int i = 0; i < r.size_; ++i) {
                r.sre_[i] = static_cast<std::int64_t>(cre[i]);
                r.sim_[i] = static_cast<std::int64_t>(cim[i]);
            }
        } else {
            r.big_ = true;
            r.bre_.resize(r.size_);
            r.bim_.resize(r.size_);
            for (int i = 0; i < r.size_; ++i) {
                r.bre_[i] = mpz_from_i128(cre[i]);
                r.bim_[i] = mpz_from_i128(cim[i]);
            }
        }
    } else {
        r.big_ = true;
        r.bre_.assign(r.size_, mpz_class(0));
        r.bim_.assign(r.size_, mpz_class(0));
        for (int i = 0; i < a.size_; ++i) {
            mpz_class ar = a.zre(i), ai = a.zim(i);
            if (sgn(ar) == 0 && sgn(ai) == 0) continue;
            for (int j = 0; j < b.size_; ++j) {
                mpz_class br = b.zre(j), bi = b.zim(j);
                if (sgn(br) == 0 && sgn(bi) == 0) continue;
                r.bre_[i + j] += ar * br - ai * bi;
                r.bim_[i + j] += ar * bi + ai * br;
            }
        }
    }
    r.trim();
    return r;
}

ZiPoly ZiPoly::shifted(int k) const {
    ZiPoly r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
}

ZiPoly ZiPoly::scaled(std::int64_t re, std::int64_t im) const {
    if (is_zero() || (re == 0 && im == 0)) return {};
    if (!big_ && std::llabs(re) <= kSmallMax && std::llabs(im) <= kSmallMax) {
        ZiPoly r;
        r.lo_ = lo_;
        r.size_ = size_;
        r.sre_.resize(size_);
        r.sim_.resize(size_);
        bool fits = true;
        for (int i = 0; i < size_; ++i) {
            __int128 cr = static_cast<__int128>(sre_[i]) * re - static_cast<__int128>(sim_[i]) * im;
            __int128 ci = static_cast<__int128>(sre_[i]) * im + static_cast<__int128>(sim_[i]) * re;
            __int128 x = cr < 0 ? -cr : cr, y = ci < 0 ? -ci : ci;
            if (x > kSmallMax || y > kSmallMax) {
                fits = false;
                break;
            }
            r.sre_[i] = static_cast<std::int64_t>(cr);
            r.sim_[i] = static_cast<std::int64_t>(ci);
        }
        if (fits) {
            r.trim();
            return r;
        }
    }
    return scaled_z(mpz_class(static_cast<long>(re)), mpz_class(static_cast<long>(im)));
}

ZiPoly ZiPoly::scaled_z(const mpz_class& re, const mpz_class& im) const {
    if (is_zero() || (sgn(re) == 0 && sgn(im) == 0)) return {};
    ZiPoly r;
    r.lo_ = lo_;
    r.size_ = size_;
    r.big_ = true;
    r.bre_.resize(size_);
    r.bim_.resize(size_);
    for (int i = 0; i < size_; ++i) {
        mpz_class ar = zre(i), ai = zim(i);
        r.bre_[i] = ar * re - ai * im;
        r.bim_[i] = ar * im + ai * re;
    }
    r.trim();
    return r;
}

ZiPoly ZiPoly::conj() const {
    ZiPoly r = *this;
    if (r.big_) {
        for (auto& c : r.bim_) c = -c;
    } else {
        for (auto& c : r.sim_) c = -c;
    }
    return r;
}

bool ZiPoly::divexact_binom(int a, int sign, ZiPoly& out) const {
    assert(a >= 1);
    if (is_zero()) {
        out = ZiPoly();
        return true;
    }
    // P / (q^a + s q^-a) = (P * q^a) / (q^{2a} + s)
    const int m = 2 * a;
    if (size_ - 1 < m) return false;
    if (!big_) {
        // synthetic division from the top; intermediate values are alternating
        // partial sums bounded by width * kSmallMax, safe in int64
        std::vector<std::int64_t> cre(sre_), cim(sim_);
        int qsize = size_ - m;
        std::vector<std::int64_t> qre(qsize), qim(qsize);
        for (int e = size_ - 1; e >= m; --e) {
            std::int64_t tr = cre[e], ti = cim[e];
            qre[e - m] = tr;
            qim[e - m] = ti;
            cre[e - m] -= sign * tr;
            cim[e - m] -= sign * ti;
        }
        for (int e = 0; e < m; ++e)
            if (cre[e] != 0 || cim[e] != 0) return false;
        ZiPoly r;
        r.lo_ = lo_ + a;  // * q^a, then the x^{2a}+s division removes 2a from the top
        r.size_ = qsize;
        r.sre_ = std::move(qre);
        r.sim_ = std::move(qim);
        bool fits = true;
        for (int i = 0; i < r.size_ && fits; ++i)
            fits = std::llabs(r.sre_[i]) <= kSmallMax && std::llabs(r.sim_[i]) <= kSmallMax;
        if (!fits) r.promote();
        r.trim();
        out = std::move(r);
        return true;
    }
    std::vector<mpz_class> cre(bre_), cim(bim_);
    int qsize = size_ - m;
    std::vector<mpz_class> qre(qsize), qim(qsize);
    for (int e = size_ - 1; e >= m; --e) {
        qre[e - m] = cre[e];
        qim[e - m] = cim[e];
        cre[e - m] -= sign * cre[e];
        cim[e - m] -= sign * cim[e];
    }
    for (int e = 0; e < m; ++e)
        if (sgn(cre[e]) != 0 || sgn(cim[e]) != 0) return false;
    ZiPoly r;
    r.lo_ = lo_ + a;
    r.size_ = qsize;
    r.big_ = true;
    r.bre_ = std::move(qre);
    r.bim_ = std::move(qim);
    r.trim();
    out = std::move(r);
    return true;
}

mpz_class ZiPoly::int_content() const {
    mpz_class g(0);
    for (int i = 0; i < size_; ++i) {
        mpz_class r = zre(i), m = zim(i);
        g = gcd(g, r);
        g = gcd(g, m);
        if (g == 1) return g;
    }
    return g;
}

void ZiPoly::divide_content(const mpz_class& g) {
    if (is_zero() || g == 1) return;
    assert(sgn(g) > 0);
    if (!big_ && g.fits_slong_p()) {
        long gs = g.get_si();
        for (int i = 0; i < size_; ++i) {
            sre_[i] /= gs;
            sim_[i] /= gs;
        }
        return;
    }
    promote();
    for (int i = 0; i < size_; ++i) {
        mpz_divexact(bre_[i].get_mpz_t(), bre_[i].get_mpz_t(), g.get_mpz_t());
        mpz_divexact(bim_[i].get_mpz_t(), bim_[i].get_mpz_t(), g.get_mpz_t());
    }
    trim();
}

std::complex<double> ZiPoly::eval(const std::complex<double>& q0) const {
    if (is_zero()) return {0.0, 0.0};
    std::complex<double> acc(0.0, 0.0);
    for (int i = size_ - 1; i >= 0; --i) {
        std::complex<double> c(big_ ? bre_[i].get_d() : static_cast<double>(sre_[i]),
                               big_ ? bim_[i].get_d() : static_cast<double>(sim_[i]));
        acc = acc * q0 + c;
    }
    return acc * std::pow(q0, lo_);
}

bool ZiPoly::operator==(const ZiPoly& o) const {
    if (size_ != o.size_) return false;
    if (size_ == 0) return true;
    if (lo_ != o.lo_) return false;
    for (int i = 0; i < size_; ++i)
        if (zre(i) != o.zre(i) || zim(i) != o.zim(i)) return false;
    return true;
}

std::vector<std::pair<int, GaussianRational>> ZiPoly::terms() const {
    std::vector<std::pair<int, GaussianRational>> ts;
    for (int i = 0; i < size_; ++i) {
        mpz_class r = zre(i), m = zim(i);
        if (sgn(r) == 0 && sgn(m) == 0) continue;
        ts.emplace_back(lo_ + i, GaussianRational(mpq_class(r), mpq_class(m)));
    }
    return ts;
}

ZiPoly ZiPoly::from_terms(const std::vector<std::pair<int, GaussianRational>>& ts, mpq_class& content) {
    mpz_class den_lcm(1);
    bool any = false;
    for (const auto& [e, c] : ts) {
        (void)e;
        if (c.is_zero()) continue;
        any = true;
        den_lcm = lcm(den_lcm, c.re.get_den());
        den_lcm = lcm(den_lcm, c.im.get_den());
    }
    if (!any) {
        content = 0;
        return {};
    }
    int lo = ts.front().first, hi = ts.front().first;
    for (const auto& [e, c] : ts) {
        if (c.is_zero()) continue;
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    ZiPoly p;
    p.lo_ = lo;
    p.size_ = hi - lo + 1;
    p.big_ = true;
    p.bre_.assign(p.size_, mpz_class(0));
    p.bim_.assign(p.size_, mpz_class(0));
    for (const auto& [e, c] : ts) {
        if (c.is_zero()) continue;
        p.bre_[e - lo] += mpz_class(c.re.get_num() * (den_lcm / c.re.get_den()));
        p.bim_[e - lo] += mpz_class(c.im.get_num() * (den_lcm / c.im.get_den()));
    }
    p.trim();
    if (p.is_zero()) {
        content = 0;
        return {};
    }
    mpz_class g = p.int_content();
    p.divide_content(g);
    content = mpq_class(g, den_lcm);
    content.canonicalize();
    return p;
}

} // namespace qso6
