#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tww/contraction.hpp"
#include "tww/graph.hpp"

namespace tww::test {

// The running 6-vertex example: A..F = 0..5, twin-width 2.
inline Trigraph example6() {
    Trigraph g = Trigraph::with_vertices(6);
    const int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;
    for (auto [u, v] : std::vector<std::pair<int, int>>{
             {A, B}, {B, C}, {C, F}, {F, E}, {E, D}, {D, B}, {A, C}, {C, E}})
        g.add_edge(u, v, EdgeColor::Black);
    return g;
}

inline Trigraph path_n(int n) {
    Trigraph g = Trigraph::with_vertices(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, EdgeColor::Black);
    return g;
}

inline Trigraph cycle_n(int n) {
    Trigraph g = path_n(n);
    if (n >= 3) g.add_edge(n - 1, 0, EdgeColor::Black);
    return g;
}

inline Trigraph complete_n(int n) {
    Trigraph g = Trigraph::with_vertices(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v, EdgeColor::Black);
    return g;
}

inline Trigraph star_n(int leaves) {
    Trigraph g = Trigraph::with_vertices(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i, EdgeColor::Black);
    return g;
}

inline Trigraph random_graph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    Trigraph g = Trigraph::with_vertices(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v, EdgeColor::Black);
    return g;
}

// Random trigraph: each present edge is red with probability p_red.
inline Trigraph random_trigraph(std::mt19937& rng, int n, double p, double p_red) {
    std::bernoulli_distribution coin(p), red(p_red);
    Trigraph g = Trigraph::with_vertices(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v, red(rng) ? EdgeColor::Red : EdgeColor::Black);
    return g;
}

namespace detail {

inline std::string partition_key(const BagMap& bags) {
    std::map<Vertex, Vertex> rep;
    for (const auto& [live, bag] : bags) {
        (void)live;
        Vertex low = *bag.begin();
        for (Vertex o : bag) rep[o] = low;
    }
    std::string key;
    for (const auto& [o, r] : rep) {
        (void)o;
        key.push_back(static_cast<char>(r));
    }
    return key;
}

inline void oracle_dfs(const Trigraph& cur, const BagMap& bags, int running, int& best,
                       std::map<std::string, int>& seen) {
    if (running >= best) return;
    if (cur.vertex_count() <= 1) {
        best = running;
        return;
    }
    std::string key = partition_key(bags);
    auto it = seen.find(key);
    if (it != seen.end() && it->second <= running) return;
    seen[key] = running;
    auto vs = cur.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Vertex w = cur.max_vertex_id() + 1;
            Trigraph next = contract(cur, vs[i], vs[j], w);
            BagMap nb = bags;
            nb[w] = nb.at(vs[i]);
            nb[w].insert(nb.at(vs[j]).begin(), nb.at(vs[j]).end());
            nb.erase(vs[i]);
            nb.erase(vs[j]);
            oracle_dfs(next, nb, std::max(running, next.max_red_degree()), best, seen);
        }
    }
}

}  // namespace detail

// Plain reference solver: exhausts contraction orders on Trigraph values,
// pruned only by the running width. Keep n small (<= 8 or so).
inline int oracle_tww(const Trigraph& g) {
    if (g.vertex_count() <= 1) return 0;
    BagMap bags;
    for (Vertex v : g.vertices()) bags[v] = {v};
    int best = g.vertex_count();
    std::map<std::string, int> seen;
    detail::oracle_dfs(g, bags, g.max_red_degree(), best, seen);
    return best;
}

}  // namespace tww::test
