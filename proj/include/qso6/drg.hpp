#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qso6/graph.hpp"
#include "qso6/model_params.hpp"

namespace qso6 {

struct DrgCertificate {
    bool distance_regular = false;
    std::optional<std::pair<int, int>> witness;  // vertex pair violating regularity
    std::string witness_reason;

    int diameter = 0;
    std::vector<long> b, c, a, k;                // intersection array and valencies
    std::vector<std::vector<std::vector<long>>> p;  // full intersection numbers
    bool bipartite = false;
    bool antipodal_2cover = false;
    bool hypercube = false;
    bool cycle = false;

    // filled by fit_q
    bool fitted = false;
    double q = 0;
    double h_imag = 0;                           // H = h_imag * sqrt(-1)
    std::vector<double> theta;                   // spectrum from the intersection array
    std::vector<long> mult;

    bool eligible() const { return distance_regular && bipartite && antipodal_2cover && !hypercube && !cycle; }
    std::string to_json() const;
};

DrgCertificate certify_drg(const Graph& g);

// Fits the real q > 1 with theta_0(q) = b_0 and checks the whole spectrum
// against the canonical formulas; throws NoRealFit.
void fit_q(DrgCertificate& cert, double spectrum_tol = 1e-6);

struct TripleCountReport {
    long total = 0;
    long mismatched = 0;
    double max_abs_err = 0;
    std::optional<std::array<int, 3>> witness;
    double tol = 1e-6;

    bool passed() const { return mismatched == 0 && max_abs_err <= tol; }
    std::string to_json() const;
};

// Compares the four neighborhood counts of every vertex triple against the
// closed-form coefficients evaluated at q.  OpenMP kernel plus the serial
// reference it is tested against.
TripleCountReport check_triple_counts(const Graph& g, const DrgCertificate& cert, double tol = 1e-6);
TripleCountReport check_triple_counts_serial(const Graph& g, const DrgCertificate& cert,
                                             double tol = 1e-6);

struct BalancedReport {
    double e_idempotent = 0;      // max |(E^2 - E)|
    double e_symmetric = 0;       // max |(E - E^T)|
    double max_cosine_err = 0;    // <Ex,Ey> vs theta*_h / |X|
    double max_span_residual = 0; // distance-partition sums vs r Ex + s Ey
    double max_distance_sum = 0;  // whole-sphere sums vs (k_i theta*_i/theta*_0) Ex
    double max_antipodal = 0;     // ||Ex + Ey|| at distance D
    double coeff_specialization = 0;  // (i,j) = (1, h-1) coefficients vs the c_h form
    double tol = 1e-9;

    bool passed() const;
    std::string to_json() const;
};

BalancedReport check_strongly_balanced(const Graph& g, const DrgCertificate& cert, double tol = 1e-9);

struct ConcreteLambdaReport {
    int span_dim = 0;
    int expected_dim = 0;
    double max_b_norm_err = 0;     // ||B(p)||^2 vs n(p)
    double max_q_norm_err = 0;     // ||Q_hij||^2 vs |X| m_h q^h_ij
    double max_action_err = 0;     // module action coefficients vs the C tables
    double max_sum_err = 0;        // the two basis-sum identities
    double max_duality_err = 0;    // dual pairings of both bases
    double tol = 1e-9;

    bool passed() const;
    std::string to_json() const;
};

ConcreteLambdaReport build_concrete_lambda(const Graph& g, const DrgCertificate& cert,
                                           double tol = 1e-9, int vertex_budget = 40);

} // namespace qso6
