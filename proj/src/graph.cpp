#include "qso6/graph.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <queue>
#include <set>
#include <sstream>

#include "qso6/errors.hpp"

namespace qso6 {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 2) throw IoError("graph needs at least 2 vertices");
    Graph g;
    g.n = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw IoError("edge endpoint out of range");
        if (u == v) throw SelfLoop();
        auto e = std::minmax(u, v);
        if (!seen.insert({e.first, e.second}).second) continue;
        g.adj[static_cast<std::size_t>(u)].push_back(v);
        g.adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());

    g.dist.assign(static_cast<std::size_t>(n), std::vector<std::int16_t>(static_cast<std::size_t>(n), -1));
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < n; ++s) {
        auto& row = g.dist[static_cast<std::size_t>(s)];
        std::queue<int> bfs;
        bfs.push(s);
        row[static_cast<std::size_t>(s)] = 0;
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop();
            for (int y : g.adj[static_cast<std::size_t>(x)])
                if (row[static_cast<std::size_t>(y)] < 0) {
                    row[static_cast<std::size_t>(y)] =
                        static_cast<std::int16_t>(row[static_cast<std::size_t>(x)] + 1);
                    bfs.push(y);
                }
        }
    }
    int diam = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (g.d(x, y) < 0) throw Disconnected();
            diam = std::max(diam, g.d(x, y));
        }
    g.diameter = diam;
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph json: ") + e.what(), 0);
    }
    if (!j.contains("vertices") || !j.contains("edges"))
        throw ParseError("graph json needs 'vertices' and 'edges'", 0);
    int n = j["vertices"].get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a [u,v] pair", 0);
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return make_graph(n, edges);
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["vertices"] = g.n;
    nlohmann::json edges = nlohmann::json::array();
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << graph_to_json(g) << "\n";
}

Graph gen_crown(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) edges.emplace_back(i, n + j);
    return make_graph(2 * n, edges);
}

Graph gen_hypercube(int d) {
    int n = 1 << d;
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b)
            if (x < (x ^ (1 << b))) edges.emplace_back(x, x ^ (1 << b));
    return make_graph(n, edges);
}

Graph gen_cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return make_graph(n, edges);
}

Graph gen_petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer pentagon
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        edges.emplace_back(i, 5 + i);                // spokes
    }
    return make_graph(10, edges);
}

Graph hadamard_graph(const std::vector<std::vector<int>>& H) {
    int n = static_cast<int>(H.size());
    for (const auto& row : H) {
        if (static_cast<int>(row.size()) != n) throw IoError("Hadamard matrix must be square");
        for (int v : row)
            if (v != 1 && v != -1) throw IoError("Hadamard entries must be +-1");
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            long dot = 0;
            for (int c = 0; c < n; ++c) dot += H[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] *
                                                H[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
            if (dot != 0) throw IoError("rows are not orthogonal: not a Hadamard matrix");
        }
    // vertices: r+, r-, c+, c-; join r^e to c^f iff e*f*H[r][c] = 1
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int rp = r, rm = n + r, cp = 2 * n + c, cm = 3 * n + c;
            if (H[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 1) {
                edges.emplace_back(rp, cp);
                edges.emplace_back(rm, cm);
            } else {
                edges.emplace_back(rp, cm);
                edges.emplace_back(rm, cp);
            }
        }
    return make_graph(4 * n, edges);
}

Graph gen_hadamard(const std::string& matrix_path) {
    std::ifstream in(matrix_path);
    if (!in) throw IoError("cannot open " + matrix_path);
    std::vector<std::vector<int>> H;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            if (tok == "+" || tok == "+1" || tok == "1") row.push_back(1);
            else if (tok == "-" || tok == "-1") row.push_back(-1);
            else throw ParseError("bad Hadamard entry '" + tok + "'", 0);
        }
        if (!row.empty()) H.push_back(std::move(row));
    }
    if (H.empty()) throw ParseError("empty Hadamard matrix file", 0);
    return hadamard_graph(H);
}

} // namespace qso6
