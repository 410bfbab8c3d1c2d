#include "qso6/drg.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "qso6/errors.hpp"
#include "qso6/generators.hpp"

namespace qso6 {

namespace {

// all eigenvalues of the symmetric tridiagonal matrix with zero diagonal and
// off-diagonal entries delta[0..m-2], by Sturm-sequence bisection
std::vector<double> tridiag_eigenvalues(const std::vector<double>& delta, double bound) {
    const int m = static_cast<int>(delta.size()) + 1;
    auto count_below = [&](double x) {
        int cnt = 0;
        double d = -x;
        if (d < 0) ++cnt;
        for (int i = 1; i < m; ++i) {
            double off = delta[static_cast<std::size_t>(i - 1)];
            double denom = std::abs(d) < 1e-300 ? std::copysign(1e-300, d == 0 ? -1.0 : d) : d;
            d = -x - off * off / denom;
            if (d < 0) ++cnt;
        }
        return cnt;
    };
    std::vector<double> ev(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        double lo = -bound - 1, hi = bound + 1;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (count_below(mid) >= k + 1) hi = mid;
            else lo = mid;
        }
        ev[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    }
    return ev;
}

double theta_formula(int D, int i, double q) {
    auto sp = [&](int a) { return std::pow(q, a) + std::pow(q, -a); };
    auto sm = [&](int a) { return std::pow(q, a) - std::pow(q, -a); };
    return sp(D - 2) * sm(D - 2 * i) / sm(2);
}

} // namespace

DrgCertificate certify_drg(const Graph& g) {
    DrgCertificate cert;
    const int n = g.n;
    const int D = g.diameter;
    cert.diameter = D;

    // full intersection-number independence check over every vertex pair
    std::vector<std::vector<std::vector<long>>> ref(
        static_cast<std::size_t>(D + 1),
        std::vector<std::vector<long>>(static_cast<std::size_t>(D + 1),
                                       std::vector<long>(static_cast<std::size_t>(D + 1), -1)));
    bool ok = true;
    std::pair<int, int> bad{-1, -1};
    std::string reason;
#pragma omp parallel for schedule(dynamic)
    for (int x = 0; x < n; ++x) {
        std::vector<std::vector<long>> counts(static_cast<std::size_t>(D + 1),
                                              std::vector<long>(static_cast<std::size_t>(D + 1), 0));
        for (int y = 0; y < n; ++y) {
            bool local_ok = true;
            for (auto& row : counts) std::fill(row.begin(), row.end(), 0);
            int h = g.d(x, y);
            for (int z = 0; z < n; ++z) ++counts[static_cast<std::size_t>(g.d(x, z))][static_cast<std::size_t>(g.d(y, z))];
            for (int i = 0; i <= D && local_ok; ++i)
                for (int j = 0; j <= D && local_ok; ++j) {
#pragma omp critical(ref_table)
                    {
                        long& slot = ref[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(j)];
                        long val = counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                        if (slot < 0) slot = val;
                        else if (slot != val) {
                            if (ok) {
                                ok = false;
                                bad = {x, y};
                                reason = "count |G_" + std::to_string(i) + "(x) n G_" + std::to_string(j) +
                                         "(y)| at distance " + std::to_string(h) + " is " +
                                         std::to_string(val) + ", expected " + std::to_string(slot);
                            }
                            local_ok = false;
                        }
                    }
                }
        }
    }
    cert.distance_regular = ok;
    if (!ok) {
        cert.witness = bad;
        cert.witness_reason = reason;
        return cert;
    }

    cert.p = ref;
    cert.c.assign(static_cast<std::size_t>(D + 1), 0);
    cert.a.assign(static_cast<std::size_t>(D + 1), 0);
    cert.b.assign(static_cast<std::size_t>(D + 1), 0);
    cert.k.assign(static_cast<std::size_t>(D + 1), 0);
    for (int i = 0; i <= D; ++i) {
        cert.k[static_cast<std::size_t>(i)] = ref[0][static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        if (i >= 1) cert.c[static_cast<std::size_t>(i)] = ref[static_cast<std::size_t>(i)][1][static_cast<std::size_t>(i - 1)];
        cert.a[static_cast<std::size_t>(i)] = ref[static_cast<std::size_t>(i)][1][static_cast<std::size_t>(i)];
        if (i < D) cert.b[static_cast<std::size_t>(i)] = ref[static_cast<std::size_t>(i)][1][static_cast<std::size_t>(i + 1)];
    }

    // two-coloring check for bipartiteness (equivalent to all a_i = 0 here)
    cert.bipartite = true;
    for (int x = 0; x < n && cert.bipartite; ++x)
        for (int y : g.adj[static_cast<std::size_t>(x)])
            if (g.d(0, x) % 2 == g.d(0, y) % 2) cert.bipartite = false;
    cert.antipodal_2cover = cert.k[static_cast<std::size_t>(D)] == 1;

    cert.hypercube = true;
    for (int i = 0; i < D; ++i) {
        if (cert.b[static_cast<std::size_t>(i)] != D - i) cert.hypercube = false;
        if (cert.c[static_cast<std::size_t>(i + 1)] != i + 1) cert.hypercube = false;
    }
    cert.cycle = cert.b[0] == 2;  // a connected 2-regular graph is a cycle
    return cert;
}

void fit_q(DrgCertificate& cert, double spectrum_tol) {
    if (!cert.distance_regular) throw NoRealFit("graph is not distance-regular");
    const int D = cert.diameter;
    double b0 = static_cast<double>(cert.b[0]);

    auto theta0 = [&](double q) { return theta_formula(D, 0, q); };
    double lo = 1.0 + 1e-8, hi = 2.0;
    if (theta0(lo) >= b0) throw NoRealFit("valency too small for a real q > 1");
    while (theta0(hi) < b0) {
        hi *= 2;
        if (hi > 1e9) throw NoRealFit("no real q > 1 matches the valency");
    }
    for (int it = 0; it < 300; ++it) {
        double mid = 0.5 * (lo + hi);
        if (theta0(mid) < b0) lo = mid;
        else hi = mid;
    }
    double q = 0.5 * (lo + hi);

    // spectrum of the tridiagonal intersection matrix (zero diagonal)
    std::vector<double> delta(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i)
        delta[static_cast<std::size_t>(i)] = std::sqrt(static_cast<double>(cert.b[static_cast<std::size_t>(i)]) *
                                                       static_cast<double>(cert.c[static_cast<std::size_t>(i + 1)]));
    std::vector<double> ev = tridiag_eigenvalues(delta, b0);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    for (int i = 0; i <= D; ++i) {
        double want = theta_formula(D, i, q);
        if (std::abs(want - ev[static_cast<std::size_t>(i)]) > spectrum_tol * (1 + std::abs(want)))
            throw NoRealFit("spectrum does not match the canonical formulas at q = " + std::to_string(q));
    }
    cert.theta.assign(ev.begin(), ev.end());

    // multiplicities from the standard cosine recurrence
    long X = 0;
    for (long kk : cert.k) X += kk;
    cert.mult.clear();
    for (int e = 0; e <= D; ++e) {
        double th = ev[static_cast<std::size_t>(e)];
        std::vector<double> u(static_cast<std::size_t>(D + 1));
        u[0] = 1;
        u[1] = th / b0;
        for (int j = 1; j < D; ++j)
            u[static_cast<std::size_t>(j + 1)] =
                (th * u[static_cast<std::size_t>(j)] -
                 static_cast<double>(cert.c[static_cast<std::size_t>(j)]) * u[static_cast<std::size_t>(j - 1)]) /
                static_cast<double>(cert.b[static_cast<std::size_t>(j)]);
        double denom = 0;
        for (int j = 0; j <= D; ++j)
            denom += static_cast<double>(cert.k[static_cast<std::size_t>(j)]) * u[static_cast<std::size_t>(j)] *
                     u[static_cast<std::size_t>(j)];
        cert.mult.push_back(std::lround(static_cast<double>(X) / denom));
    }

    cert.q = q;
    auto sp = [&](int a) { return std::pow(q, a) + std::pow(q, -a); };
    auto sm = [&](int a) { return std::pow(q, a) - std::pow(q, -a); };
    cert.h_imag = -sp(D - 2) / sm(2);  // H = h_imag * sqrt(-1)
    cert.fitted = true;
}

std::string DrgCertificate::to_json() const {
    nlohmann::json j;
    j["distance_regular"] = distance_regular;
    if (witness) {
        j["witness"] = {witness->first, witness->second};
        j["witness_reason"] = witness_reason;
        return j.dump(2);
    }
    j["diameter"] = diameter;
    j["intersection_array"] = {{"b", std::vector<long>(b.begin(), b.end() - 1)},
                               {"c", std::vector<long>(c.begin() + 1, c.end())}};
    j["k"] = k;
    j["bipartite"] = bipartite;
    j["antipodal_2cover"] = antipodal_2cover;
    j["hypercube"] = hypercube;
    j["cycle"] = cycle;
    if (fitted) {
        j["q"] = q;
        j["H"] = {{"re", 0.0}, {"im", h_imag}};
        nlohmann::json spec = nlohmann::json::array();
        for (std::size_t i = 0; i < theta.size(); ++i)
            spec.push_back({{"theta", theta[i]}, {"multiplicity", mult[i]}});
        j["spectrum"] = std::move(spec);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// triple counts

namespace {

struct CTables {
    int D;
    // per distance triple, the four expected cardinalities
    std::vector<std::array<double, 4>> vals;
    int idx(int h, int i, int j) const { return (h * (D + 1) + i) * (D + 1) + j; }
};

CTables build_c_tables(int D, double q) {
    CTables t;
    t.D = D;
    t.vals.assign(static_cast<std::size_t>((D + 1) * (D + 1) * (D + 1)), {0, 0, 0, 0});
    auto m = ModelParams::canonical(D);
    std::complex<double> q0(q, 0);
    for (const auto& p : m.profiles()) {
        DistanceTriple tr = triple_of(p);
        std::array<double, 4> v = {m.C(p.r, p.t, p.s, p.u).evaluate(q0).real(),
                                   m.C(p.s, p.u, p.r, p.t).evaluate(q0).real(),
                                   m.C(p.t, p.s, p.u, p.r).evaluate(q0).real(),
                                   m.C(p.u, p.r, p.t, p.s).evaluate(q0).real()};
        t.vals[static_cast<std::size_t>(t.idx(tr.h, tr.i, tr.j))] = v;
    }
    return t;
}

TripleCountReport scan_triples_of_source(const Graph& g, const CTables& tables, int x, double tol) {
    TripleCountReport rep;
    rep.tol = tol;
    const int n = g.n;
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
            int h = g.d(y, z), i = g.d(z, x), j = g.d(x, y);
            long cnt[4] = {0, 0, 0, 0};  // (i+1,j+1), (i-1,j-1), (i+1,j-1), (i-1,j+1)
            bool classified = true;
            for (int xi : g.adj[static_cast<std::size_t>(x)]) {
                int dz = g.d(xi, z) - i, dy = g.d(xi, y) - j;
                if (dz == 1 && dy == 1) ++cnt[0];
                else if (dz == -1 && dy == -1) ++cnt[1];
                else if (dz == 1 && dy == -1) ++cnt[2];
                else if (dz == -1 && dy == 1) ++cnt[3];
                else classified = false;
            }
            ++rep.total;
            const auto& want = tables.vals[static_cast<std::size_t>(tables.idx(h, i, j))];
            bool bad = !classified;
            double err = 0;
            long sum = 0;
            for (int s = 0; s < 4; ++s) {
                err = std::max(err, std::abs(static_cast<double>(cnt[s]) - want[s]));
                if (std::lround(want[s]) != cnt[s]) bad = true;
                sum += cnt[s];
            }
            if (sum != static_cast<long>(g.adj[static_cast<std::size_t>(x)].size())) bad = true;
            rep.max_abs_err = std::max(rep.max_abs_err, err);
            if (bad || err > tol) {
                ++rep.mismatched;
                if (!rep.witness) rep.witness = {x, y, z};
            }
        }
    return rep;
}

TripleCountReport merge_reports(std::vector<TripleCountReport>& parts, double tol) {
    TripleCountReport rep;
    rep.tol = tol;
    for (auto& p : parts) {
        rep.total += p.total;
        rep.mismatched += p.mismatched;
        rep.max_abs_err = std::max(rep.max_abs_err, p.max_abs_err);
        if (!rep.witness && p.witness) rep.witness = p.witness;
    }
    return rep;
}

} // namespace

TripleCountReport check_triple_counts(const Graph& g, const DrgCertificate& cert, double tol) {
    if (!cert.fitted) throw NoRealFit("fit q before checking triple counts");
    CTables tables = build_c_tables(cert.diameter, cert.q);
    std::vector<TripleCountReport> parts(static_cast<std::size_t>(g.n));
#pragma omp parallel for schedule(dynamic)
    for (int x = 0; x < g.n; ++x)
        parts[static_cast<std::size_t>(x)] = scan_triples_of_source(g, tables, x, tol);
    return merge_reports(parts, tol);
}

TripleCountReport check_triple_counts_serial(const Graph& g, const DrgCertificate& cert, double tol) {
    if (!cert.fitted) throw NoRealFit("fit q before checking triple counts");
    CTables tables = build_c_tables(cert.diameter, cert.q);
    std::vector<TripleCountReport> parts;
    for (int x = 0; x < g.n; ++x) parts.push_back(scan_triples_of_source(g, tables, x, tol));
    return merge_reports(parts, tol);
}

std::string TripleCountReport::to_json() const {
    nlohmann::json j;
    j["total"] = total;
    j["mismatched"] = mismatched;
    j["max_abs_err"] = max_abs_err;
    j["passed"] = passed();
    if (witness) j["witness"] = {(*witness)[0], (*witness)[1], (*witness)[2]};
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// strongly balanced condition

namespace {

using Mat = std::vector<std::vector<double>>;

Mat adjacency_matrix(const Graph& g) {
    Mat A(static_cast<std::size_t>(g.n), std::vector<double>(static_cast<std::size_t>(g.n), 0));
    for (int x = 0; x < g.n; ++x)
        for (int y : g.adj[static_cast<std::size_t>(x)]) A[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 1;
    return A;
}

Mat matmul(const Mat& a, const Mat& b) {
    std::size_t n = a.size();
    Mat r(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double v = a[i][k];
            if (v == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += v * b[k][j];
        }
    return r;
}

// primitive idempotent E_e by the spectral product formula
Mat idempotent(const Mat& A, const std::vector<double>& theta, int e) {
    std::size_t n = A.size();
    Mat M(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) M[i][i] = 1;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        if (static_cast<int>(j) == e) continue;
        double denom = theta[static_cast<std::size_t>(e)] - theta[j];
        Mat AM = matmul(A, M);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) M[r][c] = (AM[r][c] - theta[j] * M[r][c]) / denom;
    }
    return M;
}

} // namespace

bool BalancedReport::passed() const {
    return e_idempotent <= tol && e_symmetric <= tol && max_cosine_err <= tol &&
           max_span_residual <= tol && max_distance_sum <= tol && max_antipodal <= tol &&
           coeff_specialization <= tol;
}

std::string BalancedReport::to_json() const {
    nlohmann::json j;
    j["e_idempotent"] = e_idempotent;
    j["e_symmetric"] = e_symmetric;
    j["max_cosine_err"] = max_cosine_err;
    j["max_span_residual"] = max_span_residual;
    j["max_distance_sum"] = max_distance_sum;
    j["max_antipodal"] = max_antipodal;
    j["coeff_specialization"] = coeff_specialization;
    j["tol"] = tol;
    j["passed"] = passed();
    return j.dump(2);
}

BalancedReport check_strongly_balanced(const Graph& g, const DrgCertificate& cert, double tol) {
    if (!cert.fitted) throw NoRealFit("fit q before the strongly-balanced checks");
    BalancedReport rep;
    rep.tol = tol;
    const int n = g.n;
    const int D = cert.diameter;
    double X = static_cast<double>(n);
    std::vector<double> th(cert.theta);  // theta_i = theta*_i (formally self-dual)

    Mat A = adjacency_matrix(g);
    Mat E = idempotent(A, th, 1);

    Mat E2 = matmul(E, E);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            rep.e_idempotent = std::max(rep.e_idempotent,
                                        std::abs(E2[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -
                                                 E[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]));
            rep.e_symmetric = std::max(rep.e_symmetric,
                                       std::abs(E[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -
                                                E[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]));
            rep.max_cosine_err =
                std::max(rep.max_cosine_err,
                         std::abs(E[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -
                                  th[static_cast<std::size_t>(g.d(x, y))] / X));
        }

    // whole-sphere sums: sum_{xi in G_i(x)} E xi = (k_i theta*_i / theta*_0) E x
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int i = 0; i <= D; ++i) {
            std::fill(col.begin(), col.end(), 0.0);
            for (int xi = 0; xi < n; ++xi)
                if (g.d(x, xi) == i)
                    for (int r = 0; r < n; ++r)
                        col[static_cast<std::size_t>(r)] += E[static_cast<std::size_t>(r)][static_cast<std::size_t>(xi)];
            double f = static_cast<double>(cert.k[static_cast<std::size_t>(i)]) * th[static_cast<std::size_t>(i)] / th[0];
            double resid = 0;
            for (int r = 0; r < n; ++r)
                resid = std::max(resid, std::abs(col[static_cast<std::size_t>(r)] -
                                                 f * E[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)]));
            rep.max_distance_sum = std::max(rep.max_distance_sum, resid);
        }

    // span residuals with the closed-form coefficients, 1 <= h <= D-1
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int h = g.d(x, y);
            if (h == D && x != y) {
                double resid = 0;
                for (int r = 0; r < n; ++r)
                    resid = std::max(resid, std::abs(E[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)] +
                                                     E[static_cast<std::size_t>(r)][static_cast<std::size_t>(y)]));
                rep.max_antipodal = std::max(rep.max_antipodal, resid);
                continue;
            }
            if (h < 1 || h > D - 1) continue;
            double denom = th[0] * th[0] - th[static_cast<std::size_t>(h)] * th[static_cast<std::size_t>(h)];
            for (int i = 0; i <= D; ++i)
                for (int j = 0; j <= D; ++j) {
                    std::fill(col.begin(), col.end(), 0.0);
                    long count = 0;
                    for (int xi = 0; xi < n; ++xi)
                        if (g.d(x, xi) == i && g.d(y, xi) == j) {
                            ++count;
                            for (int r = 0; r < n; ++r)
                                col[static_cast<std::size_t>(r)] +=
                                    E[static_cast<std::size_t>(r)][static_cast<std::size_t>(xi)];
                        }
                    double pc = static_cast<double>(count);
                    double rc = pc * (th[0] * th[static_cast<std::size_t>(i)] -
                                      th[static_cast<std::size_t>(h)] * th[static_cast<std::size_t>(j)]) / denom;
                    double sc = pc * (th[0] * th[static_cast<std::size_t>(j)] -
                                      th[static_cast<std::size_t>(h)] * th[static_cast<std::size_t>(i)]) / denom;
                    double resid = 0;
                    for (int r = 0; r < n; ++r)
                        resid = std::max(resid,
                                         std::abs(col[static_cast<std::size_t>(r)] -
                                                  rc * E[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)] -
                                                  sc * E[static_cast<std::size_t>(r)][static_cast<std::size_t>(y)]));
                    rep.max_span_residual = std::max(rep.max_span_residual, resid);
                }
        }

    // specialization consistency: at (i,j) = (1, h-1) the generic coefficients
    // reduce to the c_h forms
    for (int h = 1; h <= D - 1; ++h) {
        double denom = th[0] * th[0] - th[static_cast<std::size_t>(h)] * th[static_cast<std::size_t>(h)];
        double ch = static_cast<double>(cert.c[static_cast<std::size_t>(h)]);
        double general_r = ch * (th[0] * th[1] - th[static_cast<std::size_t>(h)] * th[static_cast<std::size_t>(h - 1)]) / denom;
        double special_r = ch * (th[0] * th[1] - th[static_cast<std::size_t>(h - 1)] * th[static_cast<std::size_t>(h)]) / denom;
        rep.coeff_specialization = std::max(rep.coeff_specialization, std::abs(general_r - special_r));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// concrete tensor-cube construction

bool ConcreteLambdaReport::passed() const {
    return span_dim == expected_dim && max_b_norm_err <= tol && max_q_norm_err <= tol &&
           max_action_err <= tol && max_sum_err <= tol && max_duality_err <= tol;
}

std::string ConcreteLambdaReport::to_json() const {
    nlohmann::json j;
    j["span_dim"] = span_dim;
    j["expected_dim"] = expected_dim;
    j["max_b_norm_err"] = max_b_norm_err;
    j["max_q_norm_err"] = max_q_norm_err;
    j["max_action_err"] = max_action_err;
    j["max_sum_err"] = max_sum_err;
    j["max_duality_err"] = max_duality_err;
    j["tol"] = tol;
    j["passed"] = passed();
    return j.dump(2);
}

ConcreteLambdaReport build_concrete_lambda(const Graph& g, const DrgCertificate& cert, double tol,
                                           int vertex_budget) {
    if (!cert.fitted) throw NoRealFit("fit q before the concrete module construction");
    if (g.n > vertex_budget)
        throw MemoryBudget("vertex count " + std::to_string(g.n) + " above the tensor-cube budget " +
                           std::to_string(vertex_budget));
    ConcreteLambdaReport rep;
    rep.tol = tol;
    const int n = g.n;
    const int D = cert.diameter;
    const double X = static_cast<double>(n);
    std::complex<double> q0(cert.q, 0);
    auto model = ModelParams::canonical(D);
    rep.expected_dim = model.dim();

    // partition the vertex triples into profile classes
    auto tidx = [&](int x, int y, int z) { return (static_cast<std::size_t>(x) * n + y) * n + z; };
    std::vector<int> class_of(static_cast<std::size_t>(n) * n * n, -1);
    std::vector<long> class_size(static_cast<std::size_t>(model.dim()), 0);
    std::vector<std::vector<std::array<int, 3>>> members(static_cast<std::size_t>(model.dim()));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Profile p = profile_of({g.d(y, z), g.d(z, x), g.d(x, y)}, D);
                int idx = model.index_of(p);
                class_of[tidx(x, y, z)] = idx;
                ++class_size[static_cast<std::size_t>(idx)];
                members[static_cast<std::size_t>(idx)].push_back({x, y, z});
            }
    rep.span_dim = 0;
    for (long s : class_size) rep.span_dim += s > 0;

    // ||B(p)||^2 = n(p)
    for (int pi = 0; pi < model.dim(); ++pi) {
        double want = model.n(pi).evaluate(q0).real();
        rep.max_b_norm_err = std::max(rep.max_b_norm_err,
                                      std::abs(static_cast<double>(class_size[static_cast<std::size_t>(pi)]) - want));
    }

    // module action of the three hopping generators on the normalized classes
    for (int axis = 1; axis <= 3; ++axis) {
        SparseOperator Aop = build_generator(GenKind::A, axis, BasisKind::TildeB, model);
        std::vector<long> gamma(static_cast<std::size_t>(model.dim()));
        for (int pi = 0; pi < model.dim(); ++pi) {
            std::fill(gamma.begin(), gamma.end(), -1);
            // count, per produced triple, how many (member, neighbor) pairs land
            // there; two-homogeneity demands constancy on each target class
            std::vector<long> hits(static_cast<std::size_t>(n) * n * n, 0);
            for (const auto& m3 : members[static_cast<std::size_t>(pi)]) {
                int x = m3[0], y = m3[1], z = m3[2];
                if (axis == 1)
                    for (int xi : g.adj[static_cast<std::size_t>(x)]) ++hits[tidx(xi, y, z)];
                else if (axis == 2)
                    for (int xi : g.adj[static_cast<std::size_t>(y)]) ++hits[tidx(x, xi, z)];
                else
                    for (int xi : g.adj[static_cast<std::size_t>(z)]) ++hits[tidx(x, y, xi)];
            }
            bool constant = true;
            for (std::size_t t = 0; t < hits.size(); ++t) {
                int cl = class_of[t];
                long& slot = gamma[static_cast<std::size_t>(cl)];
                if (slot < 0) slot = hits[t];
                else if (slot != hits[t]) constant = false;
            }
            if (!constant) {
                rep.max_action_err = std::max(rep.max_action_err, 1.0);
                continue;
            }
            for (int pj = 0; pj < model.dim(); ++pj) {
                double got = static_cast<double>(gamma[static_cast<std::size_t>(pj)]) *
                             static_cast<double>(class_size[static_cast<std::size_t>(pj)]) /
                             static_cast<double>(class_size[static_cast<std::size_t>(pi)]);
                double want = Aop.entry(pj, pi).evaluate(q0).real();
                rep.max_action_err = std::max(rep.max_action_err, std::abs(got - want));
            }
        }
    }

    // primitive idempotents and the dual family Q
    Mat A = adjacency_matrix(g);
    std::vector<Mat> E;
    for (int e = 0; e <= D; ++e) E.push_back(idempotent(A, cert.theta, e));

    std::vector<std::vector<double>> Q(static_cast<std::size_t>((D + 1) * (D + 1) * (D + 1)));
    auto qidx = [&](int h, int i, int j) { return (h * (D + 1) + i) * (D + 1) + j; };
    for (int h = 0; h <= D; ++h)
        for (int i = 0; i <= D; ++i)
            for (int j = 0; j <= D; ++j) {
                std::vector<double> v(static_cast<std::size_t>(n) * n * n, 0.0);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z) {
                            double acc = 0;
                            for (int w = 0; w < n; ++w)
                                acc += E[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)][static_cast<std::size_t>(w)] *
                                       E[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)][static_cast<std::size_t>(w)] *
                                       E[static_cast<std::size_t>(j)][static_cast<std::size_t>(z)][static_cast<std::size_t>(w)];
                            v[tidx(x, y, z)] = X * acc;
                        }
                Q[static_cast<std::size_t>(qidx(h, i, j))] = std::move(v);
            }

    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
        return s;
    };

    // ||Q_hij||^2 = |X| m_h q^h_ij with m = k and Krein parameters equal to
    // the intersection numbers; inadmissible triples give the zero vector
    for (int h = 0; h <= D; ++h)
        for (int i = 0; i <= D; ++i)
            for (int j = 0; j <= D; ++j) {
                const auto& v = Q[static_cast<std::size_t>(qidx(h, i, j))];
                double want = in_admissible_triples(h, i, j, D)
                                  ? X * static_cast<double>(cert.k[static_cast<std::size_t>(h)]) *
                                        static_cast<double>(cert.p[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)]
                                                                 [static_cast<std::size_t>(j)])
                                  : 0.0;
                rep.max_q_norm_err = std::max(rep.max_q_norm_err, std::abs(dot(v, v) - want));
            }

    // the two basis-sum identities: B*(D000) = |X|^-1 sum_p B(p) means the
    // (0,0,0) member of the dual family is the constant 1/|X| tensor, and
    // |X|^-1 sum of the dual family is the diagonal indicator
    {
        const auto& q000 = Q[static_cast<std::size_t>(qidx(0, 0, 0))];
        for (std::size_t t = 0; t < q000.size(); ++t)
            rep.max_sum_err = std::max(rep.max_sum_err, std::abs(q000[t] - 1.0 / X));
        std::vector<double> total(static_cast<std::size_t>(n) * n * n, 0.0);
        for (const auto& p : model.profiles()) {
            DistanceTriple tr = triple_of(p);
            const auto& v = Q[static_cast<std::size_t>(qidx(tr.h, tr.i, tr.j))];
            for (std::size_t t = 0; t < v.size(); ++t) total[t] += v[t];
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    double want = (x == y && y == z) ? 1.0 : 0.0;
                    rep.max_sum_err = std::max(rep.max_sum_err,
                                               std::abs(total[tidx(x, y, z)] / X - want));
                }
    }

    // duality of both families: classes are disjoint 0/1 vectors, and the dual
    // family must be orthogonal with squared norms n(p)
    for (int pi = 0; pi < model.dim(); ++pi) {
        DistanceTriple ti = triple_of(model.profiles()[static_cast<std::size_t>(pi)]);
        const auto& qi = Q[static_cast<std::size_t>(qidx(ti.h, ti.i, ti.j))];
        for (int pj = 0; pj < model.dim(); ++pj) {
            DistanceTriple tj = triple_of(model.profiles()[static_cast<std::size_t>(pj)]);
            const auto& qj = Q[static_cast<std::size_t>(qidx(tj.h, tj.i, tj.j))];
            double want = pi == pj ? 1.0 : 0.0;
            // <tildeB*(pi), B*(pj)> = <Q_i, Q_j> / n(pi)
            rep.max_duality_err =
                std::max(rep.max_duality_err,
                         std::abs(dot(qi, qj) / static_cast<double>(class_size[static_cast<std::size_t>(pi)]) - want));
            // <tildeB(pi), B(pj)> via the disjoint supports
            double pair_bb = pi == pj ? 1.0 : 0.0;  // exact by construction
            rep.max_duality_err = std::max(rep.max_duality_err, std::abs(pair_bb - want));
        }
    }
    return rep;
}

} // namespace qso6
