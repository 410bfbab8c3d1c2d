#pragma once

#include <array>
#include <string>
#include <vector>

#include "qso6/scalar.hpp"

namespace qso6 {

// 4-tuple of naturals summing to the diameter; indexes the module basis.
struct Profile {
    int r = 0, s = 0, t = 0, u = 0;

    bool operator==(const Profile&) const = default;
    auto operator<=>(const Profile&) const = default;
    int degree() const { return r + s + t + u; }
    std::array<int, 4> arr() const { return {r, s, t, u}; }
    std::string str() const {
        return "(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + "," +
               std::to_string(u) + ")";
    }
};

// Triple of pairwise distances (h,i,j) realizable by three vertices.
struct DistanceTriple {
    int h = 0, i = 0, j = 0;

    bool operator==(const DistanceTriple&) const = default;
};

// membership in the admissible triple set: 0 <= h,i,j <= D, even sum,
// sum <= 2D, triangle inequalities
bool in_admissible_triples(int h, int i, int j, int D);

std::vector<Profile> enumerate_profiles(int D);        // lexicographic ascending
DistanceTriple triple_of(const Profile& p);            // (t+u, u+s, s+t)
Profile profile_of(const DistanceTriple& t, int D);    // throws NotInPprime

enum class HMode { canonical, custom };

struct IntersectionTables {
    std::vector<std::vector<std::vector<Scalar>>> p;   // p[h][i][j]
    std::vector<Scalar> k;                             // k[0..D]
    Scalar size_x;                                     // |X| = sum k_i
};

// Diameter, H-mode and every scalar table of the model.  Immutable after
// construction; safe to share between threads.
class ModelParams {
public:
    static ModelParams canonical(int D);
    static ModelParams custom(int D, const Scalar& H);  // throws InvalidH on H = 0

    int D() const { return D_; }
    HMode h_mode() const { return mode_; }
    const Scalar& H() const { return H_; }
    const Scalar& K() const { return K_; }              // K = H * sqrt(-1)

    Scalar theta(long i) const;                         // defined for all integers i
    const Scalar& c(int i) const { return c_[i]; }      // 0 <= i <= D
    const Scalar& b(int i) const { return b_[i]; }      // 0 <= i <= D (b_D = 0)

    Scalar C(long r, long s, long t, long u) const;     // total on Z^4

    int dim() const { return static_cast<int>(profiles_.size()); }
    const std::vector<Profile>& profiles() const { return profiles_; }
    int index_of(const Profile& p) const;               // -1 when outside the profile set

    // canonical mode only (throw CustomHMode otherwise)
    const IntersectionTables& tables() const;
    const Scalar& n(int profile_index) const;           // profile count n(r,s,t,u)
    const Scalar& size_x() const;

    std::string dump_json() const;

private:
    ModelParams() = default;
    void build_common();
    void build_canonical_tables();

    int D_ = 0;
    HMode mode_ = HMode::canonical;
    Scalar H_, K_;
    std::vector<Scalar> c_, b_;
    std::vector<Profile> profiles_;
    std::vector<int> index_;                            // (r*(D+1)+s)*(D+1)+t -> profile index
    IntersectionTables tables_;
    std::vector<Scalar> n_;
    bool have_tables_ = false;
};

} // namespace qso6
