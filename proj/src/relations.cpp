#include "qso6/relations.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <functional>
#include <json.hpp>

#include "qso6/linsolve.hpp"

namespace qso6 {

namespace {

using Clock = std::chrono::steady_clock;

struct SuiteBuilder {
    SuiteReport rep;
    const ModelParams& params;
    Clock::time_point t0 = Clock::now();

    SuiteBuilder(std::string name, const ModelParams& p) : params(p) {
        rep.suite = std::move(name);
        rep.D = p.D();
        rep.h_mode = p.h_mode() == HMode::canonical ? "canonical" : "custom";
    }

    void zero_check(std::string id, const SparseOperator& residual) {
        RelationResult r;
        r.id = std::move(id);
        int c = residual.first_nonzero_column();
        r.holds = c < 0;
        if (c >= 0)
            r.witness = RelationWitness{r.id, params.profiles()[static_cast<std::size_t>(c)],
                                        residual.col(c).front().second.str()};
        rep.relations.push_back(std::move(r));
    }

    void scalar_check(std::string id, const Scalar& residual, const Profile& where) {
        RelationResult r;
        r.id = std::move(id);
        r.holds = residual.is_zero();
        if (!r.holds) r.witness = RelationWitness{r.id, where, residual.str()};
        rep.relations.push_back(std::move(r));
    }

    SuiteReport finish() {
        rep.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return std::move(rep);
    }
};

} // namespace

bool SuiteReport::passed() const {
    for (const auto& r : relations)
        if (!r.holds) return false;
    return true;
}

std::string SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["D"] = D;
    j["h_mode"] = h_mode;
    j["passed"] = passed();
    j["wall_seconds"] = wall_seconds;
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : relations) {
        nlohmann::json e;
        e["id"] = r.id;
        e["status"] = r.holds ? "holds exactly" : "fails";
        if (r.witness)
            e["witness"] = {{"relation", r.witness->relation},
                            {"column", r.witness->column.str()},
                            {"residual", r.witness->residual}};
        rels.push_back(std::move(e));
    }
    j["relations"] = std::move(rels);
    return j.dump(2);
}

std::string SuiteReport::summary() const {
    int ok = 0;
    for (const auto& r : relations) ok += r.holds;
    return suite + ": " + std::to_string(ok) + "/" + std::to_string(relations.size()) +
           (passed() ? " hold exactly" : " hold, FAILURES present");
}

GeneratorSet make_generator_set(BasisKind basis, const ModelParams& params) {
    return {six_generators(basis, params), basis};
}

// ---------------------------------------------------------------------------

SuiteReport check_nrels(const GeneratorSet& gens, const ModelParams& params) {
    SuiteBuilder sb("nrels[" + std::string(basis_name(gens.basis)) + "]", params);
    const auto& g = gens.g;
    auto A = [&](int i) -> const SparseOperator& { return g[static_cast<std::size_t>(i - 1)]; };
    auto As = [&](int i) -> const SparseOperator& { return g[static_cast<std::size_t>(i + 2)]; };
    Scalar qs = Scalar::qpow(1);
    Scalar beta = Scalar::qpow(2) + Scalar::qpow(-2);
    Scalar hq = params.H() * (Scalar::qpow(2) - Scalar::qpow(-2));
    Scalar aw_rhs = -(hq * hq);  // -H^2 (q^2 - q^-2)^2

    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            sb.zero_check("nrels.i.[A" + std::to_string(i) + ",A" + std::to_string(j) + "]",
                          commutator(A(i), A(j)));
            sb.zero_check("nrels.i.[A*" + std::to_string(i) + ",A*" + std::to_string(j) + "]",
                          commutator(As(i), As(j)));
        }
    for (int i = 1; i <= 3; ++i)
        sb.zero_check("nrels.ii.[A" + std::to_string(i) + ",A*" + std::to_string(i) + "]",
                      commutator(A(i), As(i)));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            std::string tag = std::to_string(i) + "." + std::to_string(j);
            const SparseOperator &X = A(i), &Y = As(j);
            sb.zero_check("nrels.iii.a." + tag,
                          X * X * Y - (X * Y * X).scaled(beta) + Y * X * X - Y.scaled(aw_rhs));
            sb.zero_check("nrels.iii.b." + tag,
                          Y * Y * X - (Y * X * Y).scaled(beta) + X * Y * Y - X.scaled(aw_rhs));
        }
    static constexpr int kPerms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& p : kPerms) {
        int h = p[0], i = p[1], j = p[2];
        SparseOperator lhs = q_commutator(A(h), q_commutator(As(i), A(j), qs), qs);
        SparseOperator rhs = q_commutator(As(h), q_commutator(A(i), As(j), qs), qs);
        sb.zero_check("nrels.iv." + std::to_string(h) + std::to_string(i) + std::to_string(j), lhs - rhs);
    }
    return sb.finish();
}

SuiteReport check_nrels(const ModelParams& params, BasisKind basis) {
    return check_nrels(make_generator_set(basis, params), params);
}

SuiteReport check_recover(const GeneratorSet& gens, const ModelParams& params) {
    SuiteBuilder sb("recover[" + std::string(basis_name(gens.basis)) + "]", params);
    const auto& g = gens.g;
    auto A = [&](int i) -> const SparseOperator& { return g[static_cast<std::size_t>(i - 1)]; };
    auto As = [&](int i) -> const SparseOperator& { return g[static_cast<std::size_t>(i + 2)]; };
    Scalar qs = Scalar::qpow(1);
    Scalar hq = params.H() * (Scalar::qpow(2) - Scalar::qpow(-2));
    Scalar scale = hq * hq * hq * hq;  // H^4 (q^2-q^-2)^4
    static constexpr int kPerms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& p : kPerms) {
        int h = p[0], i = p[1], j = p[2];
        std::string tag = std::to_string(h) + std::to_string(i) + std::to_string(j);
        SparseOperator rhs1 = q_commutator(
            As(i), q_commutator(A(j), q_commutator(As(h), q_commutator(A(i), As(j), qs), qs), qs), qs);
        sb.zero_check("recover.A." + tag, A(h).scaled(scale) - rhs1);
        SparseOperator rhs2 = q_commutator(
            A(i), q_commutator(As(j), q_commutator(A(h), q_commutator(As(i), A(j), qs), qs), qs), qs);
        sb.zero_check("recover.A*." + tag, As(h).scaled(scale) - rhs2);
    }
    return sb.finish();
}

SuiteReport check_recover(const ModelParams& params, BasisKind basis) {
    return check_recover(make_generator_set(basis, params), params);
}

namespace {
SparseOperator serre_cubic(const SparseOperator& x, const SparseOperator& y, const Scalar& beta) {
    // x^2 y - beta x y x + y x^2 + y
    return x * x * y - (x * y * x).scaled(beta) + y * x * x + y;
}
} // namespace

SuiteReport check_uq_defining(const std::array<SparseOperator, 6>& B, const ModelParams& params,
                              Variant variant, BasisKind basis) {
    SuiteBuilder sb("uq-defining[" + std::string(variant_name(variant)) + "," + basis_name(basis) + "]",
                    params);
    Scalar beta = Scalar::qpow(2) + Scalar::qpow(-2);
    auto b = [&](int i) -> const SparseOperator& { return B[static_cast<std::size_t>(i - 1)]; };
    for (int i = 1; i <= 4; ++i) {
        int j = i + 1;
        sb.zero_check("uq.i.cubic." + std::to_string(i) + "." + std::to_string(j),
                      serre_cubic(b(i), b(j), beta));
        sb.zero_check("uq.i.cubic." + std::to_string(j) + "." + std::to_string(i),
                      serre_cubic(b(j), b(i), beta));
    }
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 2; j <= 5; ++j)
            sb.zero_check("uq.ii.[B" + std::to_string(i) + ",B" + std::to_string(j) + "]",
                          commutator(b(i), b(j)));
    for (int i : {1, 5}) {
        sb.zero_check("uq.wrap.cubic." + std::to_string(i) + ".6", serre_cubic(b(i), b(6), beta));
        sb.zero_check("uq.wrap.cubic.6." + std::to_string(i), serre_cubic(b(6), b(i), beta));
    }
    for (int i = 2; i <= 4; ++i)
        sb.zero_check("uq.wrap.[B6,B" + std::to_string(i) + "]", commutator(b(6), b(i)));
    return sb.finish();
}

SuiteReport check_uq_defining(const ModelParams& params, Variant variant, BasisKind basis) {
    return check_uq_defining(all_rescaled_B(variant, basis, params), params, variant, basis);
}

// ---------------------------------------------------------------------------
// hexagon geometry

Orientation classify_orientation(const std::vector<int>& seq, int n) {
    if (seq.size() < 3) return Orientation::neither;
    auto runs_clockwise = [&](const std::vector<int>& s) {
        std::size_t next = 1;
        for (int step = 1; step < n && next < s.size(); ++step) {
            int v = (s[0] - 1 + step) % n + 1;
            if (v == s[next]) ++next;
            else if (std::find(s.begin(), s.end(), v) != s.end()) return false;
        }
        return next == s.size();
    };
    if (runs_clockwise(seq)) return Orientation::clockwise;
    std::vector<int> rev(seq.rbegin(), seq.rend());
    if (runs_clockwise(rev)) return Orientation::cclockwise;
    return Orientation::neither;
}

bool diagonals_overlap(int h, int i, int j, int k, int n) {
    // segments hi and jk with distinct endpoints cross iff exactly one of j,k
    // lies strictly inside the clockwise arc from h to i
    bool j_inside = false, k_inside = false;
    for (int v = h % n + 1; v != i; v = v % n + 1) {
        if (v == j) j_inside = true;
        if (v == k) k_inside = true;
    }
    return j_inside != k_inside;
}

SuiteReport check_pbw_relations(const ModelParams& params, Variant variant, BasisKind basis) {
    SuiteBuilder sb("pbw[" + std::string(variant_name(variant)) + "," + basis_name(basis) + "]", params);
    PbwSet pbw(variant, basis, params);
    Scalar qp = Scalar::qpow(1), qm = Scalar::qpow(-1);
    Scalar expand_cw = Scalar::qpow(-2) - Scalar::qpow(2);
    Scalar expand_ccw = Scalar::qpow(2) - Scalar::qpow(-2);

    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            sb.zero_check("pbw.antisym." + std::to_string(i) + std::to_string(j),
                          pbw.I(i, j) + pbw.I(j, i));

    // triple relations over every ordered sequence of distinct vertices
    for (int h = 1; h <= 6; ++h)
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) {
                if (h == i || h == j || i == j) continue;
                Orientation o = classify_orientation({h, i, j}, 6);
                const Scalar& g = o == Orientation::clockwise ? qp : qm;
                std::string tag = std::to_string(h) + std::to_string(i) + std::to_string(j);
                sb.zero_check("pbw.triple." + tag + (o == Orientation::clockwise ? ".cw" : ".ccw"),
                              q_commutator(pbw.I(h, i), pbw.I(i, j), g) + pbw.I(j, h));
            }

    // pairs of disjoint diagonals: plain commutation when they do not overlap,
    // both expansion identities when they cross
    for (int h = 1; h <= 6; ++h)
        for (int i = h + 1; i <= 6; ++i)
            for (int j = h + 1; j <= 6; ++j)
                for (int k = j + 1; k <= 6; ++k) {
                    if (j == i || k == i) continue;
                    std::string tag =
                        std::to_string(h) + std::to_string(i) + "." + std::to_string(j) + std::to_string(k);
                    if (!diagonals_overlap(h, i, j, k, 6)) {
                        sb.zero_check("pbw.disjoint." + tag, commutator(pbw.I(h, i), pbw.I(j, k)));
                        continue;
                    }
                    int hh = 0, ii = 0, jj = 0, kk = 0;
                    bool found = false;
                    for (int flip_hi = 0; flip_hi < 2 && !found; ++flip_hi)
                        for (int flip_jk = 0; flip_jk < 2 && !found; ++flip_jk) {
                            int a = flip_hi ? i : h, b = flip_hi ? h : i;
                            int c = flip_jk ? k : j, d = flip_jk ? j : k;
                            if (classify_orientation({a, c, b, d}, 6) == Orientation::clockwise) {
                                hh = a;
                                ii = b;
                                jj = c;
                                kk = d;
                                found = true;
                            }
                        }
                    if (!found) {
                        sb.scalar_check("pbw.cross." + tag + ".orientation", Scalar::one(), Profile{});
                        continue;
                    }
                    SparseOperator rhs_cw =
                        (pbw.I(hh, jj) * pbw.I(ii, kk) + pbw.I(jj, ii) * pbw.I(kk, hh)).scaled(expand_cw);
                    sb.zero_check("pbw.cross." + tag + ".cw",
                                  commutator(pbw.I(hh, ii), pbw.I(jj, kk)) - rhs_cw);
                    int h2 = kk, j2 = ii, i2 = jj, k2 = hh;  // reversed arrangement runs c-clockwise
                    SparseOperator rhs_ccw =
                        (pbw.I(h2, j2) * pbw.I(i2, k2) + pbw.I(j2, i2) * pbw.I(k2, h2)).scaled(expand_ccw);
                    sb.zero_check("pbw.cross." + tag + ".ccw",
                                  commutator(pbw.I(h2, i2), pbw.I(j2, k2)) - rhs_ccw);
                }
    return sb.finish();
}

// ---------------------------------------------------------------------------
// appendix scalar identities

SuiteReport check_appendix(const ModelParams& params) {
    SuiteBuilder sb("appendix", params);
    const int D = params.D();
    Scalar beta = Scalar::qpow(2) + Scalar::qpow(-2);
    Scalar q2 = Scalar::qpow(2), qm2 = Scalar::qpow(-2), q1 = Scalar::qpow(1), qm1 = Scalar::qpow(-1);
    Scalar hq2 = params.H() * params.H() * (q2 - qm2) * (q2 - qm2);  // H^2 (q^2-q^-2)^2
    Scalar two = Scalar::from_int(2);
    auto C = [&](long a, long b, long c, long d) { return params.C(a, b, c, d); };
    auto th = [&](long i) { return params.theta(i); };

    // eigenvalue recurrences on the stated index range
    for (long i = -2; i <= D + 2; ++i) {
        sb.scalar_check("app.rec1.i=" + std::to_string(i), th(i - 1) - beta * th(i) + th(i + 1), Profile{});
        sb.scalar_check("app.rec2.i=" + std::to_string(i),
                        th(i - 1) * th(i - 1) - beta * th(i - 1) * th(i) + th(i) * th(i) + hq2, Profile{});
    }

    using Fn = std::function<Scalar(long, long, long, long)>;
    std::vector<std::pair<std::string, Fn>> ids;

    // products behind the commutation of the first two hopping generators
    ids.emplace_back("app.comm.1", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(r - 1, u, t, s + 1) - C(r, u, t, s) * C(r - 1, t + 1, s, u);
    });
    ids.emplace_back("app.comm.2", [&](long r, long s, long t, long u) {
        return C(s, u, r, t) * C(t, s - 1, r + 1, u) - C(t, s, r, u) * C(s, u, r + 1, t - 1);
    });
    ids.emplace_back("app.comm.3", [&](long r, long s, long t, long u) {
        return C(s, u, r, t) * C(s - 1, r + 1, u, t) - C(s, r, u, t) * C(s - 1, u + 1, r, t);
    });
    ids.emplace_back("app.comm.4", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(u, t, s + 1, r - 1) - C(u, t, s, r) * C(r, t, s + 1, u - 1);
    });
    ids.emplace_back("app.comm.5", [&](long r, long s, long t, long u) {
        return C(t, s, u, r) * C(t - 1, s, r, u + 1) - C(t, s, r, u) * C(t - 1, s, u, r + 1);
    });
    ids.emplace_back("app.comm.6", [&](long r, long s, long t, long u) {
        return C(u, r, t, s) * C(r, u - 1, t + 1, s) - C(r, u, t, s) * C(u, r - 1, t + 1, s);
    });
    ids.emplace_back("app.comm.7", [&](long r, long s, long t, long u) {
        return C(u, r, t, s) * C(u - 1, t + 1, s, r) - C(u, t, s, r) * C(u - 1, r, t, s + 1);
    });
    ids.emplace_back("app.comm.8", [&](long r, long s, long t, long u) {
        return C(t, s, u, r) * C(s, r, u + 1, t - 1) - C(s, r, u, t) * C(t, s - 1, u + 1, r);
    });
    ids.emplace_back("app.comm.sum.1", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(s + 1, r - 1, u, t) + C(t, s, u, r) * C(r, u + 1, t - 1, s) -
               C(r, u, t, s) * C(t + 1, s, u, r - 1) - C(s, r, u, t) * C(r, t, s - 1, u + 1);
    });
    ids.emplace_back("app.comm.sum.2", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(t, s + 1, r - 1, u) + C(t, s, u, r) * C(u + 1, t - 1, s, r) -
               C(t, s, r, u) * C(r + 1, t - 1, s, u) - C(u, t, s, r) * C(t, s + 1, u - 1, r);
    });
    ids.emplace_back("app.comm.sum.3", [&](long r, long s, long t, long u) {
        return C(s, u, r, t) * C(r + 1, u, t, s - 1) + C(u, r, t, s) * C(s, r, u - 1, t + 1) -
               C(r, u, t, s) * C(s, u, r - 1, t + 1) - C(s, r, u, t) * C(u + 1, r, t, s - 1);
    });
    ids.emplace_back("app.comm.sum.4", [&](long r, long s, long t, long u) {
        return C(s, u, r, t) * C(u, t, s - 1, r + 1) + C(u, r, t, s) * C(t + 1, s, r, u - 1) -
               C(t, s, r, u) * C(u, r + 1, t - 1, s) - C(u, t, s, r) * C(s + 1, u - 1, r, t);
    });

    // Askey-Wilson support identities (rec1 above is the fourth member)
    ids.emplace_back("app.aw.1", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(u, r - 1, t, s + 1) * (two * th(s + u) - beta * th(s + u + 1)) +
               C(u, r, t, s) * C(r, t + 1, s, u - 1) * (two * th(s + u) - beta * th(s + u - 1));
    });
    ids.emplace_back("app.aw.2", [&](long r, long s, long t, long u) {
        return C(s, u, r, t) * C(t, s - 1, u, r + 1) * (two * th(s + u) - beta * th(s + u - 1)) +
               C(t, s, u, r) * C(s, u + 1, r, t - 1) * (two * th(s + u) - beta * th(s + u + 1));
    });
    ids.emplace_back("app.aw.3", [&](long r, long s, long t, long u) {
        return C(r, t, s, u) * C(s + 1, u, r - 1, t) * (two * th(s + u) - beta * th(s + u + 1)) +
               C(t, s, u, r) * C(u + 1, r, t - 1, s) * (two * th(s + u) - beta * th(s + u + 1)) +
               C(s, u, r, t) * C(r + 1, t, s - 1, u) * (two * th(s + u) - beta * th(s + u - 1)) +
               C(u, r, t, s) * C(t + 1, s, u - 1, r) * (two * th(s + u) - beta * th(s + u - 1)) +
               hq2 * th(s + u);
    });

    // identities behind the q-Serre-type relation
    ids.emplace_back("app.serre.1", [&](long r, long s, long t, long u) {
        return C(r, u, t, s) * C(r - 1, t + 1, s, u) * (q2 * th(s + t + 1) - th(s + t)) +
               C(r, t, s, u) * C(r - 1, u, t, s + 1) * (qm2 * th(s + t + 1) - th(s + t + 2));
    });
    ids.emplace_back("app.serre.2", [&](long r, long s, long t, long u) {
        return C(t, s, r, u) * C(s, u, r + 1, t - 1) * (q2 * th(s + t - 1) - th(s + t)) +
               C(s, u, r, t) * C(t, s - 1, r + 1, u) * (qm2 * th(s + t - 1) - th(s + t - 2));
    });
    ids.emplace_back("app.serre.3", [&](long r, long s, long t, long u) {
        return C(s, r, u, t) * C(s - 1, u + 1, r, t) * (q2 * th(s + t - 1) - th(s + t)) +
               C(s, u, r, t) * C(s - 1, r + 1, u, t) * (qm2 * th(s + t - 1) - th(s + t - 2));
    });
    ids.emplace_back("app.serre.4", [&](long r, long s, long t, long u) {
        return C(u, t, s, r) * C(r, t, s + 1, u - 1) * (q2 * th(s + t + 1) - th(s + t)) +
               C(r, t, s, u) * C(u, t, s + 1, r - 1) * (qm2 * th(s + t + 1) - th(s + t + 2));
    });
    ids.emplace_back("app.serre.5", [&](long r, long s, long t, long u) {
        return C(t, s, r, u) * C(t - 1, s, u, r + 1) * (q2 * th(s + t - 1) - th(s + t)) +
               C(t, s, u, r) * C(t - 1, s, r, u + 1) * (qm2 * th(s + t - 1) - th(s + t - 2));
    });
    ids.emplace_back("app.serre.6", [&](long r, long s, long t, long u) {
        return C(r, u, t, s) * C(u, r - 1, t + 1, s) * (q2 * th(s + t + 1) - th(s + t)) +
               C(u, r, t, s) * C(r, u - 1, t + 1, s) * (qm2 * th(s + t + 1) - th(s + t + 2));
    });
    ids.emplace_back("app.serre.7", [&](long r, long s, long t, long u) {
        return C(u, t, s, r) * C(u - 1, r, t, s + 1) * (q2 * th(s + t + 1) - th(s + t)) +
               C(u, r, t, s) * C(u - 1, t + 1, s, r) * (qm2 * th(s + t + 1) - th(s + t + 2));
    });
    ids.emplace_back("app.serre.8", [&](long r, long s, long t, long u) {
        return C(s, r, u, t) * C(t, s - 1, u + 1, r) * (q2 * th(s + t - 1) - th(s + t)) +
               C(t, s, u, r) * C(s, r, u + 1, t - 1) * (qm2 * th(s + t - 1) - th(s + t - 2));
    });
    ids.emplace_back("app.serre.sum.1", [&](long r, long s, long t, long u) {
        return C(r, u, t, s) * C(t + 1, s, u, r - 1) * (q2 * th(s + t + 1) - th(s + t)) +
               C(s, r, u, t) * C(r, t, s - 1, u + 1) * (q2 * th(s + t - 1) - th(s + t)) +
               C(r, t, s, u) * C(s + 1, r - 1, u, t) * (qm2 * th(s + t + 1) - th(s + t)) +
               C(t, s, u, r) * C(r, u + 1, t - 1, s) * (qm2 * th(s + t - 1) - th(s + t)) -
               C(r, s, u, t) * (q1 * th(t + u + 1) - qm1 * th(t + u)) *
                   (q1 * th(u + s) - qm1 * th(u + s + 1));
    });
    ids.emplace_back("app.serre.sum.2", [&](long r, long s, long t, long u) {
        return C(t, s, r, u) * C(r + 1, t - 1, s, u) * (q2 * th(s + t - 1) - th(s + t)) +
               C(u, t, s, r) * C(t, s + 1, u - 1, r) * (q2 * th(s + t + 1) - th(s + t)) +
               C(r, t, s, u) * C(t, s + 1, r - 1, u) * (qm2 * th(s + t + 1) - th(s + t)) +
               C(t, s, u, r) * C(u + 1, t - 1, s, r) * (qm2 * th(s + t - 1) - th(s + t)) -
               C(t, r, s, u) * (q1 * th(t + u - 1) - qm1 * th(t + u)) *
                   (q1 * th(u + s) - qm1 * th(u + s + 1));
    });
    ids.emplace_back("app.serre.sum.3", [&](long r, long s, long t, long u) {
        return C(r, u, t, s) * C(s, u, r - 1, t + 1) * (q2 * th(s + t + 1) - th(s + t)) +
               C(s, r, u, t) * C(u + 1, r, t, s - 1) * (q2 * th(s + t - 1) - th(s + t)) +
               C(s, u, r, t) * C(r + 1, u, t, s - 1) * (qm2 * th(s + t - 1) - th(s + t)) +
               C(u, r, t, s) * C(s, r, u - 1, t + 1) * (qm2 * th(s + t + 1) - th(s + t)) -
               C(s, u, t, r) * (q1 * th(t + u + 1) - qm1 * th(t + u)) *
                   (q1 * th(u + s) - qm1 * th(u + s - 1));
    });
    ids.emplace_back("app.serre.sum.4", [&](long r, long s, long t, long u) {
        return C(t, s, r, u) * C(u, r + 1, t - 1, s) * (q2 * th(s + t - 1) - th(s + t)) +
               C(u, t, s, r) * C(s + 1, u - 1, r, t) * (q2 * th(s + t + 1) - th(s + t)) +
               C(s, u, r, t) * C(u, t, s - 1, r + 1) * (qm2 * th(s + t - 1) - th(s + t)) +
               C(u, r, t, s) * C(t + 1, s, r, u - 1) * (qm2 * th(s + t + 1) - th(s + t)) -
               C(u, t, r, s) * (q1 * th(t + u - 1) - qm1 * th(t + u)) *
                   (q1 * th(u + s) - qm1 * th(u + s - 1));
    });

    for (const auto& [id, fn] : ids) {
        bool failed = false;
        for (const auto& p : params.profiles()) {
            Scalar res = fn(p.r, p.s, p.t, p.u);
            if (!res.is_zero()) {
                sb.scalar_check(id, res, p);
                failed = true;
                break;
            }
        }
        if (!failed) sb.scalar_check(id, Scalar::zero(), Profile{});
    }
    return sb.finish();
}

// ---------------------------------------------------------------------------
// commutant

int check_commutant_exact(const ModelParams& params) {
    const int N = params.dim();
    GeneratorSet gens = make_generator_set(BasisKind::TildeB, params);
    SparseSystem sys(N * N);
    for (const auto& G : gens.g) {
        SparseOperator GT = G.conj_transpose();  // GT.col(a) holds conj of row a of G
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                // (XG - GX)[a,b] = sum_c X[a,c] G[c,b] - sum_c G[a,c] X[c,b]
                std::vector<std::pair<int, Scalar>> row;
                for (const auto& [c, v] : G.col(b)) row.emplace_back(a * N + c, v);
                for (const auto& [c, v] : GT.col(a)) row.emplace_back(c * N + b, -(v.conj()));
                sys.add_row(std::move(row));
            }
    }
    return N * N - system_rank(std::move(sys));
}

int check_commutant_numeric(const ModelParams& params, std::complex<double> q0, double null_threshold) {
    const int N = params.dim();
    GeneratorSet gens = make_generator_set(BasisKind::TildeB, params);
    // stack the six commutator maps into a 6N^2 x N^2 matrix and count tiny
    // singular values directly (the Gram route would square the conditioning)
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(6 * N * N, N * N);
    int base = 0;
    double max_imag = 0;
    for (const auto& G : gens.g) {
        for (int c = 0; c < N; ++c)
            for (const auto& [r, v] : G.col(c)) {
                std::complex<double> x = v.evaluate(q0);
                max_imag = std::max(max_imag, std::abs(x.imag()));
                for (int a = 0; a < N; ++a) {
                    A(base + a * N + c, a * N + r) += x;  // X[a,r] G[r,c] inside (XG)[a,c]
                    A(base + r * N + a, c * N + a) -= x;  // G[r,c] X[c,a] inside (GX)[r,a]
                }
            }
        base += N * N;
    }
    int nullity = 0;
    if (max_imag < 1e-12) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(A.real());
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) < null_threshold) ++nullity;
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) < null_threshold) ++nullity;
    }
    return nullity;
}

// ---------------------------------------------------------------------------
// spectra

std::vector<Scalar> char_poly(const SparseOperator& x) {
    const int n = x.dim();
    std::vector<Scalar> c(static_cast<std::size_t>(n + 1));
    c[static_cast<std::size_t>(n)] = Scalar::one();
    SparseOperator M = SparseOperator::identity(n, x.basis());
    for (int k = 1; k <= n; ++k) {
        SparseOperator AM = x * M;
        Scalar tr;
        for (int i = 0; i < n; ++i) tr += AM.entry(i, i);
        Scalar ck = -(tr / Scalar::from_int(k));
        c[static_cast<std::size_t>(n - k)] = ck;
        if (k < n) M = AM + SparseOperator::identity(n, x.basis()).scaled(ck);
    }
    return c;
}

std::vector<std::complex<double>> numeric_spectrum(const SparseOperator& x, std::complex<double> q0) {
    const int n = x.dim();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int c = 0; c < n; ++c)
        for (const auto& [r, v] : x.col(c)) M(r, c) = v.evaluate(q0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

} // namespace qso6
