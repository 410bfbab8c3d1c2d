#include "qso6/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>

#include "qso6/errors.hpp"

namespace qso6 {

namespace {

// --- dense rational-coefficient polynomials (degree-indexed from 0), used by
// --- the canonicalization / gcd / sqrt paths only.

using GRVec = std::vector<GaussianRational>;

void gr_trim(GRVec& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int gr_deg(const GRVec& p) { return static_cast<int>(p.size()) - 1; }

GRVec gr_mul(const GRVec& a, const GRVec& b) {
    if (a.empty() || b.empty()) return {};
    GRVec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    gr_trim(r);
    return r;
}

// A = Q*B + R with deg R < deg B
void gr_divmod(const GRVec& a, const GRVec& b, GRVec& quot, GRVec& rem) {
    assert(!b.empty());
    rem = a;
    gr_trim(rem);
    quot.assign(rem.size() > b.size() - 1 ? rem.size() - b.size() + 1 : 0, GaussianRational());
    const GaussianRational& lead = b.back();
    while (gr_deg(rem) >= gr_deg(b)) {
        int shift = gr_deg(rem) - gr_deg(b);
        GaussianRational f = rem.back() / lead;
        quot[shift] += f;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        gr_trim(rem);
        if (rem.empty()) break;
    }
    gr_trim(quot);
}

GRVec gr_monic(const GRVec& p) {
    GRVec r = p;
    gr_trim(r);
    if (r.empty()) return r;
    GaussianRational lc = r.back();
    for (auto& c : r) c = c / lc;
    return r;
}

GRVec gr_gcd_monic(GRVec a, GRVec b) {
    gr_trim(a);
    gr_trim(b);
    while (!b.empty()) {
        GRVec q, r;
        gr_divmod(a, b, q, r);
        a = std::move(b);
        b = gr_monic(r);
    }
    if (a.empty()) return a;
    return gr_monic(a);
}

GRVec gr_derivative(const GRVec& p) {
    if (p.size() <= 1) return {};
    GRVec d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * GaussianRational(static_cast<long>(i));
    gr_trim(d);
    return d;
}

bool gr_divexact(const GRVec& a, const GRVec& b, GRVec& quot) {
    GRVec r;
    gr_divmod(a, b, quot, r);
    return r.empty();
}

GRVec zipoly_to_grvec(const ZiPoly& p) {
    // p must have lo() >= 0
    GRVec v(static_cast<std::size_t>(p.hi() + 1));
    for (const auto& [e, c] : p.terms()) v[static_cast<std::size_t>(e)] = c;
    return v;
}

std::optional<mpq_class> rat_sqrt(const mpq_class& x) {
    if (sgn(x) < 0) return std::nullopt;
    if (sgn(x) == 0) return mpq_class(0);
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

std::optional<GaussianRational> gr_sqrt(const GaussianRational& x) {
    if (x.is_zero()) return GaussianRational();
    if (x.is_real()) {
        if (auto r = rat_sqrt(x.re)) return GaussianRational(*r);
        if (auto r = rat_sqrt(mpq_class(-x.re))) return GaussianRational(mpq_class(0), *r);
        return std::nullopt;
    }
    auto n = rat_sqrt(x.norm());
    if (!n) return std::nullopt;
    auto u = rat_sqrt(mpq_class((x.re + *n) / 2));
    if (!u || sgn(*u) == 0) return std::nullopt;
    mpq_class v = x.im / (2 * (*u));
    GaussianRational cand(*u, v);
    if (cand * cand == x) return cand;
    return std::nullopt;
}

// Square root of a monic polynomial over Q(i), via repeated gcd with the
// derivative.  Returns nullopt when no polynomial square root exists.
std::optional<GRVec> sqrt_monic(const GRVec& p) {
    if (p.empty()) return std::nullopt;
    if (gr_deg(p) == 0) return GRVec{GaussianRational(1)};
    if (gr_deg(p) % 2 != 0) return std::nullopt;
    GRVec g = gr_gcd_monic(p, gr_derivative(p));
    GRVec rad;
    if (!gr_divexact(p, g, rad)) return std::nullopt;
    rad = gr_monic(rad);
    GRVec rad2 = gr_mul(rad, rad);
    GRVec rest;
    if (!gr_divexact(p, rad2, rest)) return std::nullopt;
    auto inner = sqrt_monic(gr_monic(rest));
    if (!inner) return std::nullopt;
    return gr_mul(rad, *inner);
}

mpq_class rat_gcd(const mpq_class& a, const mpq_class& b) {
    if (sgn(a) == 0) return abs(b);
    if (sgn(b) == 0) return abs(a);
    mpz_class g = gcd(mpz_class(a.get_num() * b.get_den()), mpz_class(b.get_num() * a.get_den()));
    mpq_class r(g, a.get_den() * b.get_den());
    r.canonicalize();
    return abs(r);
}

ZiPoly mul_binom(const ZiPoly& p, int a, int sign) {
    return sign > 0 ? p.shifted(a) + p.shifted(-a) : p.shifted(a) - p.shifted(-a);
}

// Pull binomial factors q^a +- q^{-a} out of p into a factor bag, largest
// span first, so denominators keep their factored form across inversions.
std::vector<DenFactor> peel_binomials(ZiPoly& p) {
    std::vector<DenFactor> bag;
    if (p.is_zero() || p.width() <= 1) return bag;
    ZiPoly tmp;
    for (int a = p.width() / 2; a >= 1; --a) {
        for (int sign : {1, -1}) {
            std::int16_t mult = 0;
            while (p.width() > 2 * a && p.divexact_binom(a, sign, tmp)) {
                p = std::move(tmp);
                ++mult;
            }
            if (mult > 0) bag.push_back({static_cast<std::int16_t>(a), static_cast<std::int8_t>(sign), mult});
        }
    }
    std::sort(bag.begin(), bag.end(), [](const DenFactor& x, const DenFactor& y) {
        return std::make_pair(x.a, x.sign) < std::make_pair(y.a, y.sign);
    });
    return bag;
}

} // namespace

Scalar Scalar::make(mpq_class content, ZiPoly num, std::vector<DenFactor> bin, ZiPoly den_other) {
    Scalar s;
    if (num.is_zero() || sgn(content) == 0) return s;
    s.content_ = std::move(content);
    s.num_ = std::move(num);
    s.bin_ = std::move(bin);
    s.den_other_ = std::move(den_other);
    s.reduce_light();
    return s;
}

Scalar Scalar::from_int(long v) {
    Scalar s;
    if (v == 0) return s;
    s.content_ = v;
    s.num_ = ZiPoly::integer(1);
    return s;
}

Scalar Scalar::from_rational(const mpq_class& v) {
    Scalar s;
    if (sgn(v) == 0) return s;
    s.content_ = v;
    s.num_ = ZiPoly::integer(1);
    return s;
}

Scalar Scalar::from_gaussian(const GaussianRational& v) {
    Scalar s;
    if (v.is_zero()) return s;
    mpq_class content;
    s.num_ = ZiPoly::from_terms({{0, v}}, content);
    s.content_ = content;
    return s;
}

Scalar Scalar::gauss_i() {
    Scalar s;
    s.content_ = 1;
    s.num_ = ZiPoly::integer(0, 1);
    return s;
}

Scalar Scalar::qpow(int k) {
    Scalar s;
    s.content_ = 1;
    s.num_ = ZiPoly::xpow(k);
    return s;
}

Scalar Scalar::binom_plus(int a) {
    if (a < 0) a = -a;
    if (a == 0) return from_int(2);
    Scalar s;
    s.content_ = 1;
    s.num_ = ZiPoly::binom(a, 1);
    return s;
}

Scalar Scalar::binom_minus(int a) {
    if (a == 0) return {};
    bool neg = a < 0;
    Scalar s;
    s.content_ = neg ? -1 : 1;
    s.num_ = ZiPoly::binom(neg ? -a : a, -1);
    return s;
}

bool Scalar::is_one() const {
    if (is_zero()) return false;
    if (content_ == 1 && num_.is_one() && bin_.empty() && den_other_.is_one()) return true;
    return (*this - one()).is_zero();
}

void Scalar::reduce_light() {
    if (num_.is_zero()) {
        *this = Scalar();
        return;
    }
    ZiPoly tmp;
    for (auto& f : bin_) {
        while (f.mult > 0 && num_.divexact_binom(f.a, f.sign, tmp)) {
            num_ = std::move(tmp);
            --f.mult;
        }
    }
    bin_.erase(std::remove_if(bin_.begin(), bin_.end(), [](const DenFactor& f) { return f.mult == 0; }),
               bin_.end());
    mpz_class g = num_.int_content();
    if (g > 1) {
        num_.divide_content(g);
        content_ *= g;
    }
}

namespace {
std::vector<DenFactor> merge_bags_add(const std::vector<DenFactor>& x, const std::vector<DenFactor>& y) {
    std::vector<DenFactor> r;
    std::size_t i = 0, j = 0;
    auto key = [](const DenFactor& f) { return (static_cast<int>(f.a) << 2) | (f.sign > 0 ? 1 : 0); };
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && key(x[i]) < key(y[j]))) r.push_back(x[i++]);
        else if (i == x.size() || key(y[j]) < key(x[i])) r.push_back(y[j++]);
        else {
            r.push_back(x[i]);
            r.back().mult = static_cast<std::int16_t>(x[i].mult + y[j].mult);
            ++i;
            ++j;
        }
    }
    return r;
}
} // namespace

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ZiPoly den_other =
        a.den_other_.is_one() ? b.den_other_ : (b.den_other_.is_one() ? a.den_other_ : a.den_other_ * b.den_other_);
    return Scalar::make(a.content_ * b.content_, a.num_ * b.num_, merge_bags_add(a.bin_, b.bin_),
                        std::move(den_other));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // common denominator: per-factor max multiplicity, cross product of the general parts
    auto key = [](const DenFactor& f) { return (static_cast<int>(f.a) << 2) | (f.sign > 0 ? 1 : 0); };
    std::vector<DenFactor> bag;
    ZiPoly numA = a.num_, numB = b.num_;
    std::size_t i = 0, j = 0;
    while (i < a.bin_.size() || j < b.bin_.size()) {
        if (j == b.bin_.size() || (i < a.bin_.size() && key(a.bin_[i]) < key(b.bin_[j]))) {
            bag.push_back(a.bin_[i]);
            for (int m = 0; m < a.bin_[i].mult; ++m) numB = mul_binom(numB, a.bin_[i].a, a.bin_[i].sign);
            ++i;
        } else if (i == a.bin_.size() || key(b.bin_[j]) < key(a.bin_[i])) {
            bag.push_back(b.bin_[j]);
            for (int m = 0; m < b.bin_[j].mult; ++m) numA = mul_binom(numA, b.bin_[j].a, b.bin_[j].sign);
            ++j;
        } else {
            int mx = std::max(a.bin_[i].mult, b.bin_[j].mult);
            bag.push_back(a.bin_[i]);
            bag.back().mult = static_cast<std::int16_t>(mx);
            for (int m = a.bin_[i].mult; m < mx; ++m) numA = mul_binom(numA, a.bin_[i].a, a.bin_[i].sign);
            for (int m = b.bin_[j].mult; m < mx; ++m) numB = mul_binom(numB, b.bin_[j].a, b.bin_[j].sign);
            ++i;
            ++j;
        }
    }
    ZiPoly den_other;
    if (a.den_other_ == b.den_other_) {
        den_other = a.den_other_;
    } else {
        numA = numA * b.den_other_;
        numB = numB * a.den_other_;
        den_other = a.den_other_ * b.den_other_;
    }
    mpq_class g = rat_gcd(a.content_, b.content_);
    mpq_class sa = a.content_ / g, sb = b.content_ / g;
    assert(sa.get_den() == 1 && sb.get_den() == 1);
    ZiPoly num = numA.scaled_z(sa.get_num(), mpz_class(0)) + numB.scaled_z(sb.get_num(), mpz_class(0));
    return Scalar::make(std::move(g), std::move(num), std::move(bag), std::move(den_other));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.content_ = -r.content_;
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    ZiPoly den = expanded_den();
    ZiPoly n = num_;
    mpz_class g = n.int_content();
    n.divide_content(g);
    std::vector<DenFactor> bag = peel_binomials(n);
    int k = n.lo();
    n = n.shifted(-k);
    mpq_class content = mpq_class(1) / (content_ * g);
    return make(std::move(content), den.shifted(-k), std::move(bag), std::move(n));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::conj() const {
    Scalar r = *this;
    r.num_ = r.num_.conj();
    r.den_other_ = r.den_other_.conj();
    return r;
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = one(), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

ZiPoly Scalar::expanded_den() const {
    ZiPoly d = den_other_;
    for (const auto& f : bin_)
        for (int m = 0; m < f.mult; ++m) d = mul_binom(d, f.a, f.sign);
    return d;
}

std::complex<double> Scalar::evaluate(const std::complex<double>& q0, double pole_eps) const {
    if (is_zero()) return {0.0, 0.0};
    auto eval_den = [&](const Scalar& s) {
        std::complex<double> den = s.den_other_.eval(q0);
        for (const auto& f : s.bin_) {
            std::complex<double> b = std::pow(q0, f.a) + static_cast<double>(f.sign) * std::pow(q0, -f.a);
            for (int m = 0; m < f.mult; ++m) den *= b;
        }
        return den;
    };
    std::complex<double> den = eval_den(*this);
    if (std::abs(den) < pole_eps) {
        // a non-canonical representation may hide a cancelling factor; retry on
        // the fully reduced form before reporting a pole
        Canonical can = canonical();
        Scalar red = normalize(can.num, can.den);
        std::complex<double> den2 = red.den_other_.eval(q0);
        for (const auto& f : red.bin_) {
            std::complex<double> b = std::pow(q0, f.a) + static_cast<double>(f.sign) * std::pow(q0, -f.a);
            for (int m = 0; m < f.mult; ++m) den2 *= b;
        }
        if (std::abs(den2) < pole_eps)
            throw PoleError("denominator magnitude " + std::to_string(std::abs(den2)) + " below pole threshold");
        return red.content_.get_d() * red.num_.eval(q0) / den2;
    }
    return content_.get_d() * num_.eval(q0) / den;
}

Scalar::Canonical Scalar::canonical() const {
    Canonical can;
    if (is_zero()) {
        can.den = {{0, GaussianRational(1)}};
        return can;
    }
    ZiPoly D = expanded_den();
    int kD = D.lo();
    ZiPoly D0 = D.shifted(-kD);
    int kN = num_.lo();
    ZiPoly N = num_.shifted(-kN);
    GRVec nv = zipoly_to_grvec(N), dv = zipoly_to_grvec(D0);
    GRVec g = gr_gcd_monic(nv, dv);
    if (gr_deg(g) > 0) {
        GRVec q1, q2;
        bool ok1 = gr_divexact(nv, g, q1), ok2 = gr_divexact(dv, g, q2);
        assert(ok1 && ok2);
        (void)ok1;
        (void)ok2;
        nv = std::move(q1);
        dv = std::move(q2);
    }
    GaussianRational lc = dv.back();
    GaussianRational num_scale = GaussianRational(content_) / lc;
    int base = kN - kD;
    for (std::size_t e = 0; e < nv.size(); ++e) {
        if (nv[e].is_zero()) continue;
        can.num.emplace_back(base + static_cast<int>(e), nv[e] * num_scale);
    }
    for (std::size_t e = 0; e < dv.size(); ++e) {
        if (dv[e].is_zero()) continue;
        can.den.emplace_back(static_cast<int>(e), dv[e] / lc);
    }
    return can;
}

Scalar Scalar::normalize(const std::vector<std::pair<int, GaussianRational>>& num_terms,
                         const std::vector<std::pair<int, GaussianRational>>& den_terms) {
    mpq_class cn, cd;
    ZiPoly n = ZiPoly::from_terms(num_terms, cn);
    ZiPoly d = ZiPoly::from_terms(den_terms, cd);
    if (d.is_zero()) throw DivisionByZero();
    if (n.is_zero()) return {};
    std::vector<DenFactor> bag = peel_binomials(d);
    int k = d.lo();
    return make(cn / cd, n.shifted(-k), std::move(bag), d.shifted(-k));
}

std::size_t Scalar::complexity() const {
    std::size_t c = static_cast<std::size_t>(num_.width()) + static_cast<std::size_t>(den_other_.width());
    for (const auto& f : bin_) c += static_cast<std::size_t>(f.mult);
    return c;
}

std::optional<Scalar> Scalar::sqrt() const {
    if (is_zero()) return Scalar();
    Canonical can = canonical();
    int m = can.num.front().first;
    if (m % 2 != 0) return std::nullopt;
    GRVec nv(static_cast<std::size_t>(can.num.back().first - m + 1));
    for (const auto& [e, c] : can.num) nv[static_cast<std::size_t>(e - m)] = c;
    GRVec dv(static_cast<std::size_t>(can.den.back().first + 1));
    for (const auto& [e, c] : can.den) dv[static_cast<std::size_t>(e)] = c;
    GaussianRational lcn = nv.back();
    auto s_lcn = gr_sqrt(lcn);
    if (!s_lcn) return std::nullopt;
    auto sn = sqrt_monic(gr_monic(nv));
    if (!sn) return std::nullopt;
    auto sd = sqrt_monic(dv);  // canonical den is monic
    if (!sd) return std::nullopt;
    std::vector<std::pair<int, GaussianRational>> num_terms, den_terms;
    for (std::size_t e = 0; e < sn->size(); ++e)
        if (!(*sn)[e].is_zero()) num_terms.emplace_back(m / 2 + static_cast<int>(e), (*sn)[e] * (*s_lcn));
    for (std::size_t e = 0; e < sd->size(); ++e)
        if (!(*sd)[e].is_zero()) den_terms.emplace_back(static_cast<int>(e), (*sd)[e]);
    Scalar root = normalize(num_terms, den_terms);
    if (root * root == *this) return root;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// canonical string form and parsing

namespace {

std::string rat_str(const mpq_class& v) {
    return v.get_str();
}

void emit_atom(std::string& out, bool& first, const mpq_class& val, bool imag, int e) {
    if (sgn(val) == 0) return;
    mpq_class mag = abs(val);
    if (first) {
        if (sgn(val) < 0) out += "-";
        first = false;
    } else {
        out += sgn(val) < 0 ? " - " : " + ";
    }
    std::string body;
    if (imag) {
        body = rat_str(mag) + "i";
    } else if (e != 0 && mag == 1) {
        body = "";
    } else {
        body = rat_str(mag);
    }
    out += body;
    if (e != 0) {
        if (!body.empty()) out += "*";
        out += "q^" + std::to_string(e);
    }
}

std::string poly_str(const std::vector<std::pair<int, GaussianRational>>& terms_asc) {
    if (terms_asc.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_asc.rbegin(); it != terms_asc.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!c.is_real() && sgn(c.re) != 0 && e != 0) {
            // mixed coefficient with a monomial: parenthesized group
            if (first) {
                first = false;
            } else {
                out += " + ";
            }
            out += "(" + rat_str(c.re) + (sgn(c.im) < 0 ? " - " : " + ") + rat_str(abs(c.im)) + "i)*q^" +
                   std::to_string(e);
            continue;
        }
        emit_atom(out, first, c.re, false, e);
        emit_atom(out, first, c.im, true, e);
    }
    return out;
}

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool at_end() {
        skip_ws();
        return pos == s.size();
    }

    mpz_class parse_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected digits", pos);
        return mpz_class(s.substr(start, pos - start));
    }

    int parse_int() {
        skip_ws();
        int sign = 1;
        if (accept('-')) sign = -1;
        else accept('+');
        mpz_class v = parse_uint();
        if (!v.fits_sint_p()) throw ParseError("exponent out of range", pos);
        return sign * static_cast<int>(v.get_si());
    }

    mpq_class parse_rat() {
        mpz_class n = parse_uint();
        if (accept('/')) {
            mpz_class d = parse_uint();
            if (sgn(d) == 0) throw ParseError("zero denominator in coefficient", pos);
            mpq_class r(n, d);
            r.canonicalize();
            return r;
        }
        return mpq_class(n);
    }

    // monomial: "q" ["^" int]; returns exponent
    int parse_mono() {
        expect('q');
        if (accept('^')) return parse_int();
        return 1;
    }

    // one atom: returns (coefficient, exponent)
    std::pair<GaussianRational, int> parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of polynomial", pos);
        if (s[pos] == '(') {
            // (a +- bi) [*q^e]
            ++pos;
            int sign1 = accept('-') ? -1 : (accept('+'), 1);
            mpq_class a = parse_rat() * sign1;
            skip_ws();
            int sign2 = accept('-') ? -1 : (accept('+') ? 1 : throw ParseError("expected '+' or '-'", pos));
            mpq_class b = parse_rat() * sign2;
            if (!accept('i')) throw ParseError("expected 'i'", pos);
            expect(')');
            int e = 0;
            if (accept('*')) e = parse_mono();
            return {GaussianRational(a, b), e};
        }
        if (s[pos] == 'q') {
            int e = parse_mono();
            return {GaussianRational(1), e};
        }
        if (s[pos] == 'i') {
            ++pos;
            int e = 0;
            if (accept('*')) e = parse_mono();
            return {GaussianRational::unit_i(), e};
        }
        mpq_class mag = parse_rat();
        bool imag = accept('i');
        int e = 0;
        if (accept('*')) e = parse_mono();
        else if (peek('q')) e = parse_mono();
        GaussianRational c = imag ? GaussianRational(mpq_class(0), mag) : GaussianRational(mag);
        return {c, e};
    }

    std::vector<std::pair<int, GaussianRational>> parse_poly() {
        std::vector<std::pair<int, GaussianRational>> acc;
        int sign = 1;
        skip_ws();
        if (accept('-')) sign = -1;
        while (true) {
            auto [c, e] = parse_atom();
            if (sign < 0) c = -c;
            bool merged = false;
            for (auto& [te, tc] : acc)
                if (te == e) {
                    tc += c;
                    merged = true;
                    break;
                }
            if (!merged) acc.emplace_back(e, c);
            skip_ws();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else {
                break;
            }
        }
        std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        acc.erase(std::remove_if(acc.begin(), acc.end(), [](const auto& t) { return t.second.is_zero(); }),
                  acc.end());
        return acc;
    }
};

} // namespace

std::string Scalar::str() const {
    Canonical can = canonical();
    return "(" + poly_str(can.num) + ")/(" + poly_str(can.den) + ")";
}

Scalar Scalar::parse(const std::string& s) {
    Parser p(s);
    std::vector<std::pair<int, GaussianRational>> num, den{{0, GaussianRational(1)}};
    if (p.peek('(')) {
        p.expect('(');
        num = p.parse_poly();
        p.expect(')');
        if (p.accept('/')) {
            p.expect('(');
            den = p.parse_poly();
            p.expect(')');
        }
    } else {
        num = p.parse_poly();
    }
    if (!p.at_end()) throw ParseError("trailing characters", p.pos);
    return normalize(num, den);
}

} // namespace qso6
