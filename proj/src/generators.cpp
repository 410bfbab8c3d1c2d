#include "qso6/generators.hpp"

#include <json.hpp>
#include <map>

#include "qso6/errors.hpp"

namespace qso6 {

namespace {

struct Move {
    std::array<int, 4> delta;   // applied to (r,s,t,u)
    std::array<int, 4> cargs;   // C-argument order as indices into (r,s,t,u)
};

// Coefficient tables of the module action.  The first C argument is always
// the coordinate being decremented, so out-of-range targets get coefficient
// C(0,...) = 0 and are pruned.
constexpr std::array<std::array<Move, 4>, 3> kMoves = {{
    // axis 1
    {{{{-1, 1, 0, 0}, {0, 2, 1, 3}},
      {{1, -1, 0, 0}, {1, 3, 0, 2}},
      {{0, 0, -1, 1}, {2, 1, 3, 0}},
      {{0, 0, 1, -1}, {3, 0, 2, 1}}}},
    // axis 2
    {{{{-1, 0, 1, 0}, {0, 3, 2, 1}},
      {{0, -1, 0, 1}, {1, 0, 3, 2}},
      {{1, 0, -1, 0}, {2, 1, 0, 3}},
      {{0, 1, 0, -1}, {3, 2, 1, 0}}}},
    // axis 3
    {{{{-1, 0, 0, 1}, {0, 1, 3, 2}},
      {{0, -1, 1, 0}, {1, 3, 2, 0}},
      {{0, 1, -1, 0}, {2, 0, 1, 3}},
      {{1, 0, 0, -1}, {3, 2, 0, 1}}}},
}};

int diag_distance(const Profile& p, int axis) {
    switch (axis) {
        case 1: return p.t + p.u;
        case 2: return p.u + p.s;
        default: return p.s + p.t;
    }
}

SparseOperator build_hopping(int axis, BasisKind basis, const ModelParams& params) {
    SparseOperator op(params.dim(), basis);
    const auto& moves = kMoves[static_cast<std::size_t>(axis - 1)];
    for (int cidx = 0; cidx < params.dim(); ++cidx) {
        const Profile& p = params.profiles()[static_cast<std::size_t>(cidx)];
        std::array<int, 4> coords = p.arr();
        for (const Move& mv : moves) {
            Scalar coef = params.C(coords[static_cast<std::size_t>(mv.cargs[0])],
                                   coords[static_cast<std::size_t>(mv.cargs[1])],
                                   coords[static_cast<std::size_t>(mv.cargs[2])],
                                   coords[static_cast<std::size_t>(mv.cargs[3])]);
            Profile tgt{p.r + mv.delta[0], p.s + mv.delta[1], p.t + mv.delta[2], p.u + mv.delta[3]};
            int ridx = params.index_of(tgt);
            if (ridx < 0) {
                // pruned boundary term must carry an exactly zero coefficient
                if (!coef.is_zero())
                    throw std::logic_error("nonzero coefficient for out-of-range target at " + p.str());
                continue;
            }
            if (!coef.is_zero()) op.set_entry(ridx, cidx, std::move(coef));
        }
    }
    return op;
}

SparseOperator build_diagonal(int axis, BasisKind basis, const ModelParams& params) {
    std::vector<Scalar> diag(static_cast<std::size_t>(params.dim()));
    for (int i = 0; i < params.dim(); ++i)
        diag[static_cast<std::size_t>(i)] =
            params.theta(diag_distance(params.profiles()[static_cast<std::size_t>(i)], axis));
    return SparseOperator::diagonal(std::move(diag), basis);
}

} // namespace

SparseOperator build_generator(GenKind kind, int axis, BasisKind basis, const ModelParams& params) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("axis must be 1, 2 or 3");
    // In the tildeB basis A^(i) hops and A*^(i) is diagonal; the roles swap in
    // the tildeB* basis (with identical coefficient tables).
    bool hopping = (kind == GenKind::A) == (basis == BasisKind::TildeB);
    return hopping ? build_hopping(axis, basis, params) : build_diagonal(axis, basis, params);
}

std::array<SparseOperator, 6> six_generators(BasisKind basis, const ModelParams& params) {
    return {build_generator(GenKind::A, 1, basis, params),
            build_generator(GenKind::A, 2, basis, params),
            build_generator(GenKind::A, 3, basis, params),
            build_generator(GenKind::Astar, 1, basis, params),
            build_generator(GenKind::Astar, 2, basis, params),
            build_generator(GenKind::Astar, 3, basis, params)};
}

SparseOperator rescaled_B(int index, Variant variant, BasisKind basis, const ModelParams& params) {
    if (index < 1 || index > 6) throw std::invalid_argument("generator index must be in 1..6");
    Scalar h2 = params.H() * (Scalar::qpow(2) - Scalar::qpow(-2));    // H (q^2 - q^-2)
    Scalar h2m = -h2;                                                 // H (q^-2 - q^2)
    struct Slot {
        GenKind kind;
        int axis;
        bool plus_scale;  // divide by H(q^2-q^-2) rather than H(q^-2-q^2)
    };
    // Theorem tables: odd B's carry one family, even B's the other.
    static constexpr std::array<Slot, 6> kMain = {{{GenKind::A, 1, true},
                                                   {GenKind::Astar, 3, false},
                                                   {GenKind::A, 2, true},
                                                   {GenKind::Astar, 1, false},
                                                   {GenKind::A, 3, true},
                                                   {GenKind::Astar, 2, false}}};
    static constexpr std::array<Slot, 6> kMain2 = {{{GenKind::Astar, 1, true},
                                                    {GenKind::A, 3, false},
                                                    {GenKind::Astar, 2, true},
                                                    {GenKind::A, 1, false},
                                                    {GenKind::Astar, 3, true},
                                                    {GenKind::A, 2, false}}};
    const Slot& s = (variant == Variant::main ? kMain : kMain2)[static_cast<std::size_t>(index - 1)];
    SparseOperator gen = build_generator(s.kind, s.axis, basis, params);
    return gen.scaled((s.plus_scale ? h2 : h2m).inverse());
}

std::array<SparseOperator, 6> all_rescaled_B(Variant variant, BasisKind basis, const ModelParams& params) {
    std::array<SparseOperator, 6> out = {
        rescaled_B(1, variant, basis, params), rescaled_B(2, variant, basis, params),
        rescaled_B(3, variant, basis, params), rescaled_B(4, variant, basis, params),
        rescaled_B(5, variant, basis, params), rescaled_B(6, variant, basis, params)};
    return out;
}

namespace {
int upper_index(int i, int j) {  // 1 <= i < j <= 6 -> 0..14
    return (i - 1) * (12 - i) / 2 + (j - i - 1);
}
} // namespace

PbwSet::PbwSet(Variant variant, BasisKind basis, const ModelParams& params)
    : b_(all_rescaled_B(variant, basis, params)), upper_(15) {
    Scalar qs = Scalar::qpow(1);
    for (int i = 1; i <= 5; ++i) upper_[static_cast<std::size_t>(upper_index(i, i + 1))] = b_[static_cast<std::size_t>(i - 1)];
    for (int span = 2; span <= 5; ++span)
        for (int i = 1; i + span <= 6; ++i) {
            int j = i + span;
            upper_[static_cast<std::size_t>(upper_index(i, j))] =
                q_commutator(b_[static_cast<std::size_t>(i - 1)],
                             upper_[static_cast<std::size_t>(upper_index(i + 1, j))], qs);
        }
}

const SparseOperator& PbwSet::upper(int i, int j) const {
    return upper_[static_cast<std::size_t>(upper_index(i, j))];
}

SparseOperator PbwSet::I(int i, int j) const {
    if (i < j) return upper(i, j);
    return -upper(j, i);
}

std::vector<Scalar> gram_weights(const ModelParams& params) {
    std::vector<Scalar> w(static_cast<std::size_t>(params.dim()));
    for (int i = 0; i < params.dim(); ++i) w[static_cast<std::size_t>(i)] = params.n(i).inverse();
    return w;
}

bool gram_adjoint_check(const SparseOperator& x, const ModelParams& params) {
    std::vector<Scalar> w = gram_weights(params);
    return x.scale_rows(w) == x.conj_transpose().scale_cols(w);
}

std::vector<std::pair<Scalar, int>> spectrum_multiplicities(const SparseOperator& x) {
    if (!x.is_diagonal()) throw NotDiagonal();
    std::vector<std::pair<Scalar, int>> out;
    std::map<std::string, std::size_t> where;
    for (int c = 0; c < x.dim(); ++c) {
        Scalar v = x.entry(c, c);
        std::string key = v.str();
        auto it = where.find(key);
        if (it == where.end()) {
            where.emplace(std::move(key), out.size());
            out.emplace_back(std::move(v), 1);
        } else {
            ++out[it->second].second;
        }
    }
    return out;
}

int multiplicity_of(const SparseOperator& x, const Scalar& eigenvalue) {
    for (const auto& [v, m] : spectrum_multiplicities(x))
        if (v == eigenvalue) return m;
    return 0;
}

std::string dump_operator_json(const SparseOperator& op, const ModelParams& params,
                               const std::string& kind) {
    nlohmann::json j;
    j["D"] = params.D();
    j["basis"] = basis_name(op.basis());
    j["kind"] = kind;
    nlohmann::json entries = nlohmann::json::array();
    for (int c = 0; c < op.dim(); ++c) {
        auto cp = params.profiles()[static_cast<std::size_t>(c)].arr();
        for (const auto& [r, v] : op.col(c)) {
            auto rp = params.profiles()[static_cast<std::size_t>(r)].arr();
            entries.push_back({std::vector<int>(cp.begin(), cp.end()),
                               std::vector<int>(rp.begin(), rp.end()), v.str()});
        }
    }
    j["entries"] = std::move(entries);
    return j.dump();
}

} // namespace qso6
