#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tww/errors.hpp"

namespace tww {

using Vertex = int;

enum class EdgeColor : std::uint8_t { Black, Red };

struct DegreeReport {
    int black = 0;
    int red = 0;
    int total = 0;
};

// Graph whose edge set is split into black and red edges. A plain graph is a
// trigraph without red edges. Treat values as immutable snapshots once built;
// algorithms that contract vertices produce new snapshots or work on their own
// private copy, so sharing a const Trigraph across threads is safe.
//
// Adjacency is kept as ordered maps so that every iteration order is
// deterministic. Vertex ids are arbitrary non-negative ints; they stay stable
// under induced() so subgraphs can be related back to the host graph.
class Trigraph {
public:
    Trigraph() = default;

    // n isolated vertices 0..n-1.
    static Trigraph with_vertices(int n);

    void add_vertex(Vertex v);
    void remove_vertex(Vertex v);
    bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }

    void add_edge(Vertex u, Vertex v, EdgeColor color);
    void remove_edge(Vertex u, Vertex v);
    std::optional<EdgeColor> edge(Vertex u, Vertex v) const;

    const std::map<Vertex, EdgeColor>& neighbors(Vertex v) const;
    const std::map<Vertex, std::map<Vertex, EdgeColor>>& adjacency() const { return adj_; }

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int black_edge_count() const { return black_edges_; }
    int red_edge_count() const { return red_edges_; }
    int edge_count() const { return black_edges_ + red_edges_; }

    std::vector<Vertex> vertices() const;
    Vertex max_vertex_id() const;  // -1 when empty

    DegreeReport degree(Vertex v) const;
    int red_degree(Vertex v) const;
    int max_red_degree() const;

    Trigraph induced(const std::set<Vertex>& keep) const;

    // Edges normalized to u < v, sorted.
    std::vector<std::tuple<Vertex, Vertex, EdgeColor>> edges() const;

    // Same vertex set, all edges black.
    Trigraph blackened() const;

    bool operator==(const Trigraph& other) const;
    bool operator!=(const Trigraph& other) const { return !(*this == other); }

private:
    std::map<Vertex, std::map<Vertex, EdgeColor>> adj_;
    int black_edges_ = 0;
    int red_edges_ = 0;
};

// Components sorted internally and ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Trigraph& g);

// True iff V(h) ⊆ V(g) and h has exactly g's edges (with colors) inside V(h).
bool is_induced_subtrigraph(const Trigraph& h, const Trigraph& g);

bool is_connected(const Trigraph& g);

// Edge count test: a forest has exactly n - #components edges.
bool is_forest(const Trigraph& g);

// Non-tree edges of a deterministic BFS spanning forest, normalized (u < v)
// and sorted. Removing them makes the graph acyclic; the count is the
// feedback edge number m - n + #components.
std::vector<std::pair<Vertex, Vertex>> feedback_edge_set(const Trigraph& g);

// A dangling tree hangs off the rest of the graph by the single edge
// attach -- root; `vertices` is the whole tree including root.
struct DanglingTree {
    Vertex attach = -1;
    Vertex root = -1;
    std::vector<Vertex> vertices;
};

// Maximal run of degree-2 vertices, listed in path order. attach_front /
// attach_back are the outside neighbors of the first / last run vertex,
// if any.
struct DanglingPath {
    std::vector<Vertex> vertices;
    std::optional<Vertex> attach_front;
    std::optional<Vertex> attach_back;
};

struct DanglingStructures {
    std::vector<DanglingTree> trees;
    std::vector<DanglingPath> paths;
};

// Maximal dangling trees and maximal degree-2 paths. Components that are
// entirely acyclic contribute no dangling tree (there is no "rest of the
// graph" to hang from); cycle components whose vertices all have degree 2
// contribute no dangling path. Edge colors are ignored for degrees here;
// callers on plain graphs get the classic notions.
DanglingStructures dangling_structures(const Trigraph& g);

}  // namespace tww
