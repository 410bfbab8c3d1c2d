#include "qso6/model_params.hpp"

#include <json.hpp>

#include "qso6/errors.hpp"

namespace qso6 {

bool in_admissible_triples(int h, int i, int j, int D) {
    if (h < 0 || i < 0 || j < 0 || h > D || i > D || j > D) return false;
    if ((h + i + j) % 2 != 0) return false;
    if (h + i + j > 2 * D) return false;
    return h <= i + j && i <= j + h && j <= h + i;
}

std::vector<Profile> enumerate_profiles(int D) {
    std::vector<Profile> ps;
    for (int r = 0; r <= D; ++r)
        for (int s = 0; s + r <= D; ++s)
            for (int t = 0; t + s + r <= D; ++t) ps.push_back({r, s, t, D - r - s - t});
    return ps;
}

DistanceTriple triple_of(const Profile& p) { return {p.t + p.u, p.u + p.s, p.s + p.t}; }

Profile profile_of(const DistanceTriple& tr, int D) {
    if (!in_admissible_triples(tr.h, tr.i, tr.j, D)) throw NotInPprime(tr.h, tr.i, tr.j);
    return {(2 * D - tr.h - tr.i - tr.j) / 2, (tr.i + tr.j - tr.h) / 2, (tr.j + tr.h - tr.i) / 2,
            (tr.h + tr.i - tr.j) / 2};
}

ModelParams ModelParams::canonical(int D) {
    ModelParams m;
    m.D_ = D;
    m.mode_ = HMode::canonical;
    // H = sqrt(-1) (q^{D-2}+q^{2-D}) / (q^-2 - q^2), so K = H*i is real in q
    m.K_ = Scalar::binom_plus(D - 2) / Scalar::binom_minus(2);
    m.H_ = -Scalar::gauss_i() * m.K_;
    m.build_common();
    m.build_canonical_tables();
    return m;
}

ModelParams ModelParams::custom(int D, const Scalar& H) {
    if (H.is_zero()) throw InvalidH();
    ModelParams m;
    m.D_ = D;
    m.mode_ = HMode::custom;
    m.H_ = H;
    m.K_ = Scalar::gauss_i() * H;
    m.build_common();
    return m;
}

void ModelParams::build_common() {
    if (D_ < 1) throw std::invalid_argument("diameter must be >= 1");
    c_.resize(D_ + 1);
    b_.resize(D_ + 1);
    for (int i = 0; i <= D_; ++i) {
        c_[i] = K_ * Scalar::binom_minus(2 * i) / Scalar::binom_plus(D_ - 2 * i);
        b_[i] = K_ * Scalar::binom_minus(2 * D_ - 2 * i) / Scalar::binom_plus(D_ - 2 * i);
    }
    profiles_ = enumerate_profiles(D_);
    index_.assign(static_cast<std::size_t>(D_ + 1) * (D_ + 1) * (D_ + 1), -1);
    for (std::size_t n = 0; n < profiles_.size(); ++n) {
        const Profile& p = profiles_[n];
        index_[(static_cast<std::size_t>(p.r) * (D_ + 1) + p.s) * (D_ + 1) + p.t] = static_cast<int>(n);
    }
}

void ModelParams::build_canonical_tables() {
    const int D = D_;
    auto& P = tables_.p;
    P.assign(D + 1, std::vector<std::vector<Scalar>>(D + 1, std::vector<Scalar>(D + 1)));
    // p^h_{0,j} = delta_{h,j}; ascend in i with the three-term recurrence
    for (int h = 0; h <= D; ++h) P[h][0][h] = Scalar::one();
    for (int i = 0; i + 1 <= D; ++i) {
        for (int h = 0; h <= D; ++h) {
            for (int j = 0; j <= D; ++j) {
                Scalar acc;
                if (j >= 1 && !P[h][i][j - 1].is_zero()) acc += b_[j - 1] * P[h][i][j - 1];
                if (j + 1 <= D && !P[h][i][j + 1].is_zero()) acc += c_[j + 1] * P[h][i][j + 1];
                if (i >= 1 && !P[h][i - 1][j].is_zero()) acc -= b_[i - 1] * P[h][i - 1][j];
                if (!acc.is_zero()) P[h][i + 1][j] = acc / c_[i + 1];
            }
        }
    }
    tables_.k.resize(D + 1);
    tables_.k[0] = Scalar::one();
    for (int i = 1; i <= D; ++i) tables_.k[i] = tables_.k[i - 1] * b_[i - 1] / c_[i];
    tables_.size_x = Scalar::zero();
    for (int i = 0; i <= D; ++i) tables_.size_x += tables_.k[i];
    have_tables_ = true;

    n_.resize(profiles_.size());
    for (std::size_t idx = 0; idx < profiles_.size(); ++idx) {
        DistanceTriple tr = triple_of(profiles_[idx]);
        Scalar n1 = tables_.size_x * tables_.k[tr.h] * P[tr.h][tr.i][tr.j];
        Scalar n2 = tables_.size_x * tables_.k[tr.i] * P[tr.i][tr.j][tr.h];
        Scalar n3 = tables_.size_x * tables_.k[tr.j] * P[tr.j][tr.h][tr.i];
        if (n1 != n2 || n1 != n3)
            throw std::logic_error("profile count expressions disagree at " + profiles_[idx].str());
        n_[idx] = n1;
    }
}

Scalar ModelParams::theta(long i) const {
    return K_ * Scalar::binom_minus(static_cast<int>(D_ - 2 * i));
}

Scalar ModelParams::C(long r, long s, long t, long u) const {
    if (r == 0) return Scalar::zero();
    Scalar num = K_ * Scalar::binom_minus(static_cast<int>(2 * r)) *
                 Scalar::binom_plus(static_cast<int>(r + s + u - t));
    return num / Scalar::binom_plus(static_cast<int>(r + u - s - t)) /
           Scalar::binom_plus(static_cast<int>(r + s - t - u));
}

int ModelParams::index_of(const Profile& p) const {
    if (p.r < 0 || p.s < 0 || p.t < 0 || p.u < 0) return -1;
    if (p.r + p.s + p.t + p.u != D_) return -1;
    return index_[(static_cast<std::size_t>(p.r) * (D_ + 1) + p.s) * (D_ + 1) + p.t];
}

const IntersectionTables& ModelParams::tables() const {
    if (!have_tables_) throw CustomHMode("intersection tables");
    return tables_;
}

const Scalar& ModelParams::n(int profile_index) const {
    if (!have_tables_) throw CustomHMode("profile counts n(r,s,t,u)");
    return n_[static_cast<std::size_t>(profile_index)];
}

const Scalar& ModelParams::size_x() const { return tables().size_x; }

std::string ModelParams::dump_json() const {
    nlohmann::json j;
    j["D"] = D_;
    j["h_mode"] = mode_ == HMode::canonical ? "canonical" : "custom";
    auto strs = [](const std::vector<Scalar>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const auto& s : v) out.push_back(s.str());
        return out;
    };
    std::vector<Scalar> th;
    for (int i = 0; i <= D_; ++i) th.push_back(theta(i));
    j["theta"] = strs(th);
    j["c"] = strs(c_);
    j["b"] = strs(b_);
    j["H"] = H_.str();
    j["K"] = K_.str();
    if (have_tables_) j["X_size"] = tables_.size_x.str();
    return j.dump(2);
}

} // namespace qso6
