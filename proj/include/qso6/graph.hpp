#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qso6 {

// Finite simple connected graph with an all-pairs BFS distance matrix.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<std::int16_t>> dist;
    int diameter = 0;

    int d(int x, int y) const { return dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
};

// Validates (no self-loops, connected, n >= 2) and fills the distance matrix.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);

Graph load_graph(const std::string& path);          // JSON {"vertices": N, "edges": [[u,v],...]}
std::string graph_to_json(const Graph& g);
void save_graph(const Graph& g, const std::string& path);

// bundled generators for the test corpora
Graph gen_crown(int n);          // K_{n,n} minus a perfect matching
Graph gen_hypercube(int d);
Graph gen_cycle(int n);
Graph gen_petersen();

// order-n Hadamard matrix (entries +-1, rows x cols) -> 4n-vertex graph
Graph hadamard_graph(const std::vector<std::vector<int>>& H);
Graph gen_hadamard(const std::string& matrix_path);  // whitespace-separated +-1 entries

} // namespace qso6
