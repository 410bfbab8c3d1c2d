#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qso6/drg.hpp"
#include "qso6/errors.hpp"

using namespace qso6;

namespace {
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, e);
}

std::string data_file(const char* name) { return std::string(QSO6_SOURCE_DIR) + "/tests/data/" + name; }
} // namespace

TEST_CASE("graph construction and validation") {
    Graph crown = gen_crown(5);
    CHECK(crown.n == 10);
    std::size_t edges = 0;
    for (const auto& a : crown.adj) edges += a.size();
    CHECK(edges / 2 == 20);
    CHECK(crown.diameter == 3);
    CHECK(gen_cycle(6).diameter == 3);
    CHECK_THROWS_AS(make_graph(3, {{0, 0}}), SelfLoop);
    CHECK_THROWS_AS(make_graph(4, {{0, 1}, {2, 3}}), Disconnected);
}

TEST_CASE("graph json round trip") {
    Graph g = gen_crown(4);
    std::string path = "round_trip_graph.json";
    save_graph(g, path);
    Graph back = load_graph(path);
    CHECK(back.n == g.n);
    CHECK(back.adj == g.adj);
    CHECK(back.diameter == g.diameter);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_graph("does_not_exist.json"), IoError);
}

TEST_CASE("crown graph certificate") {
    DrgCertificate cert = certify_drg(gen_crown(5));
    REQUIRE(cert.distance_regular);
    CHECK(cert.diameter == 3);
    CHECK(cert.b == std::vector<long>{4, 3, 1, 0});
    CHECK(cert.c == std::vector<long>{0, 1, 3, 4});
    CHECK(cert.k == std::vector<long>{1, 4, 4, 1});
    CHECK(cert.bipartite);
    CHECK(cert.antipodal_2cover);
    CHECK(!cert.hypercube);
    CHECK(!cert.cycle);
    CHECK(cert.eligible());
    for (int i = 0; i <= 3; ++i) CHECK(cert.a[static_cast<std::size_t>(i)] == 0);
}

TEST_CASE("crown graph q fit hits the golden ratio") {
    DrgCertificate cert = certify_drg(gen_crown(5));
    fit_q(cert);
    CHECK(std::abs(cert.q - kPhi) < 1e-9);
    CHECK(std::abs(cert.theta[0] - 4.0) < 1e-9);
    CHECK(cert.mult == std::vector<long>{1, 4, 4, 1});
    CHECK(cert.h_imag < 0);
}

TEST_CASE("hadamard graph of order 8") {
    Graph g = gen_hadamard(data_file("hadamard8.txt"));
    CHECK(g.n == 32);
    DrgCertificate cert = certify_drg(g);
    REQUIRE(cert.distance_regular);
    CHECK(cert.b == std::vector<long>{8, 7, 4, 1, 0});
    CHECK(cert.c == std::vector<long>{0, 1, 4, 7, 8});
    CHECK(cert.eligible());
    fit_q(cert);
    CHECK(std::abs(cert.q - std::sqrt(1.0 + std::sqrt(2.0))) < 1e-6);
}

TEST_CASE("hadamard input validation") {
    std::ofstream("bad_hadamard.txt") << "1 1\n1 1\n";
    CHECK_THROWS_AS(gen_hadamard("bad_hadamard.txt"), IoError);  // rows not orthogonal
    std::remove("bad_hadamard.txt");
}

TEST_CASE("petersen graph: distance-regular but not bipartite") {
    DrgCertificate cert = certify_drg(gen_petersen());
    CHECK(cert.distance_regular);
    CHECK(!cert.bipartite);
    CHECK(!cert.eligible());
}

TEST_CASE("path graph is rejected with a witness") {
    DrgCertificate cert = certify_drg(path_graph(4));
    CHECK(!cert.distance_regular);
    CHECK(cert.witness.has_value());
    CHECK(!cert.witness_reason.empty());
}

TEST_CASE("cycle and hypercube flags") {
    DrgCertificate c6 = certify_drg(gen_cycle(6));
    CHECK(c6.distance_regular);
    CHECK(c6.cycle);
    CHECK(!c6.eligible());
    CHECK(c6.b == std::vector<long>{2, 1, 1, 0});
    CHECK(c6.c == std::vector<long>{0, 1, 1, 2});
    DrgCertificate h3 = certify_drg(gen_hypercube(3));
    CHECK(h3.distance_regular);
    CHECK(h3.hypercube);
    CHECK(!h3.eligible());
    CHECK_THROWS_AS(fit_q(h3), NoRealFit);
}

TEST_CASE("crown triple counts match the closed forms") {
    Graph g = gen_crown(5);
    DrgCertificate cert = certify_drg(g);
    fit_q(cert);
    TripleCountReport rep = check_triple_counts(g, cert);
    CHECK(rep.total == 1000);
    CHECK(rep.mismatched == 0);
    CHECK(rep.max_abs_err <= 1e-6);
    CHECK(rep.passed());
    TripleCountReport ser = check_triple_counts_serial(g, cert);
    CHECK(ser.total == rep.total);
    CHECK(ser.mismatched == rep.mismatched);
    CHECK(ser.max_abs_err == rep.max_abs_err);
}

TEST_CASE("the all-equal triple has counts (k,0,0,0)") {
    // profile of (x,x,x) is (D,0,0,0) whose four coefficients are (theta_0,0,0,0)
    auto m = ModelParams::canonical(3);
    CHECK(m.C(3, 0, 0, 0) == m.theta(0));
    CHECK(m.C(0, 0, 3, 0).is_zero());
    CHECK(m.C(0, 3, 0, 0).is_zero());
    CHECK(m.C(0, 0, 0, 3).is_zero());
}

TEST_CASE("strongly balanced condition on the crown graph") {
    Graph g = gen_crown(5);
    DrgCertificate cert = certify_drg(g);
    fit_q(cert);
    BalancedReport rep = check_strongly_balanced(g, cert, 1e-9);
    INFO(rep.to_json());
    CHECK(rep.passed());
    CHECK(rep.e_idempotent <= 1e-9);
    CHECK(rep.max_antipodal <= 1e-9);
}

TEST_CASE("concrete tensor-cube module on the crown graph") {
    Graph g = gen_crown(5);
    DrgCertificate cert = certify_drg(g);
    fit_q(cert);
    ConcreteLambdaReport rep = build_concrete_lambda(g, cert, 1e-9);
    INFO(rep.to_json());
    CHECK(rep.span_dim == 20);
    CHECK(rep.passed());
}

TEST_CASE("tensor-cube budget") {
    Graph g = gen_hadamard(data_file("hadamard8.txt"));
    DrgCertificate cert = certify_drg(g);
    fit_q(cert);
    CHECK_THROWS_AS(build_concrete_lambda(g, cert, 1e-9, 16), MemoryBudget);
}
