#include "tww/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace tww {

Trigraph Trigraph::with_vertices(int n) {
    Trigraph g;
    for (Vertex v = 0; v < n; ++v) g.add_vertex(v);
    return g;
}

void Trigraph::add_vertex(Vertex v) {
    if (v < 0) throw Error("vertex ids must be non-negative");
    if (!adj_.emplace(v, std::map<Vertex, EdgeColor>{}).second)
        throw Error("vertex " + std::to_string(v) + " already present");
}

void Trigraph::remove_vertex(Vertex v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw Error("unknown vertex " + std::to_string(v));
    for (const auto& [w, color] : it->second) {
        if (color == EdgeColor::Black) --black_edges_; else --red_edges_;
        adj_.at(w).erase(v);
    }
    adj_.erase(it);
}

void Trigraph::add_edge(Vertex u, Vertex v, EdgeColor color) {
    if (u == v) throw Error("self loop at vertex " + std::to_string(u));
    auto iu = adj_.find(u), iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end())
        throw Error("edge endpoints must exist: " + std::to_string(u) + " " + std::to_string(v));
    if (iu->second.count(v))
        throw Error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    iu->second.emplace(v, color);
    iv->second.emplace(u, color);
    if (color == EdgeColor::Black) ++black_edges_; else ++red_edges_;
}

void Trigraph::remove_edge(Vertex u, Vertex v) {
    auto iu = adj_.find(u), iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end())
        throw Error("unknown edge endpoint");
    auto e = iu->second.find(v);
    if (e == iu->second.end()) throw Error("no such edge");
    if (e->second == EdgeColor::Black) --black_edges_; else --red_edges_;
    iu->second.erase(e);
    iv->second.erase(u);
}

std::optional<EdgeColor> Trigraph::edge(Vertex u, Vertex v) const {
    auto iu = adj_.find(u);
    if (iu == adj_.end()) throw Error("unknown vertex " + std::to_string(u));
    if (!adj_.count(v)) throw Error("unknown vertex " + std::to_string(v));
    auto e = iu->second.find(v);
    if (e == iu->second.end()) return std::nullopt;
    return e->second;
}

const std::map<Vertex, EdgeColor>& Trigraph::neighbors(Vertex v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw Error("unknown vertex " + std::to_string(v));
    return it->second;
}

std::vector<Vertex> Trigraph::vertices() const {
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
}

Vertex Trigraph::max_vertex_id() const {
    if (adj_.empty()) return -1;
    return adj_.rbegin()->first;
}

DegreeReport Trigraph::degree(Vertex v) const {
    DegreeReport d;
    for (const auto& [_, color] : neighbors(v)) {
        if (color == EdgeColor::Black) ++d.black; else ++d.red;
    }
    d.total = d.black + d.red;
    return d;
}

int Trigraph::red_degree(Vertex v) const {
    int r = 0;
    for (const auto& [_, color] : neighbors(v))
        if (color == EdgeColor::Red) ++r;
    return r;
}

int Trigraph::max_red_degree() const {
    int best = 0;
    for (const auto& [v, nbrs] : adj_) {
        int r = 0;
        for (const auto& [_, color] : nbrs)
            if (color == EdgeColor::Red) ++r;
        best = std::max(best, r);
    }
    return best;
}

Trigraph Trigraph::induced(const std::set<Vertex>& keep) const {
    Trigraph out;
    for (Vertex v : keep) {
        if (!adj_.count(v)) throw Error("induced: unknown vertex " + std::to_string(v));
        out.add_vertex(v);
    }
    for (Vertex v : keep) {
        for (const auto& [w, color] : adj_.at(v)) {
            if (w > v && keep.count(w)) out.add_edge(v, w, color);
        }
    }
    return out;
}

std::vector<std::tuple<Vertex, Vertex, EdgeColor>> Trigraph::edges() const {
    std::vector<std::tuple<Vertex, Vertex, EdgeColor>> out;
    for (const auto& [v, nbrs] : adj_)
        for (const auto& [w, color] : nbrs)
            if (v < w) out.emplace_back(v, w, color);
    return out;
}

Trigraph Trigraph::blackened() const {
    Trigraph out;
    for (const auto& [v, _] : adj_) out.add_vertex(v);
    for (const auto& [u, v, color] : edges()) {
        (void)color;
        out.add_edge(u, v, EdgeColor::Black);
    }
    return out;
}

bool Trigraph::operator==(const Trigraph& other) const {
    return adj_ == other.adj_;
}

std::vector<std::vector<Vertex>> connected_components(const Trigraph& g) {
    std::vector<std::vector<Vertex>> comps;
    std::set<Vertex> seen;
    for (const auto& [start, _] : g.adjacency()) {
        if (seen.count(start)) continue;
        std::vector<Vertex> comp;
        std::deque<Vertex> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (const auto& [w, _c] : g.neighbors(v)) {
                if (seen.insert(w).second) queue.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Trigraph& g) {
    return connected_components(g).size() <= 1;
}

bool is_induced_subtrigraph(const Trigraph& h, const Trigraph& g) {
    for (const auto& [v, _] : h.adjacency())
        if (!g.has_vertex(v)) return false;
    for (const auto& [v, nbrs] : h.adjacency()) {
        int inside = 0;
        for (const auto& [w, color] : g.neighbors(v)) {
            if (!h.has_vertex(w)) continue;
            ++inside;
            auto e = h.edge(v, w);
            if (!e || *e != color) return false;
        }
        if (inside != static_cast<int>(nbrs.size())) return false;
    }
    return true;
}

bool is_forest(const Trigraph& g) {
    auto comps = connected_components(g);
    return g.edge_count() == g.vertex_count() - static_cast<int>(comps.size());
}

std::vector<std::pair<Vertex, Vertex>> feedback_edge_set(const Trigraph& g) {
    std::set<std::pair<Vertex, Vertex>> tree_edges;
    std::set<Vertex> seen;
    for (const auto& [start, _] : g.adjacency()) {
        if (seen.count(start)) continue;
        std::deque<Vertex> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (const auto& [w, _c] : g.neighbors(v)) {
                if (seen.insert(w).second) {
                    tree_edges.emplace(std::min(v, w), std::max(v, w));
                    queue.push_back(w);
                }
            }
        }
    }
    std::vector<std::pair<Vertex, Vertex>> fes;
    for (const auto& [u, v, color] : g.edges()) {
        (void)color;
        if (!tree_edges.count({u, v})) fes.emplace_back(u, v);
    }
    return fes;
}

namespace {

// Peels degree-1 vertices of one cyclic component; returns the peeled set.
std::set<Vertex> peel_leaves(const Trigraph& g, const std::vector<Vertex>& comp) {
    std::map<Vertex, int> deg;
    for (Vertex v : comp) deg[v] = g.degree(v).total;
    std::deque<Vertex> queue;
    for (Vertex v : comp)
        if (deg[v] <= 1) queue.push_back(v);
    std::set<Vertex> peeled;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (!peeled.insert(v).second) continue;
        for (const auto& [w, _c] : g.neighbors(v)) {
            if (peeled.count(w)) continue;
            if (--deg[w] <= 1) queue.push_back(w);
        }
    }
    return peeled;
}

}  // namespace

DanglingStructures dangling_structures(const Trigraph& g) {
    DanglingStructures out;

    // Dangling trees: peel leaves per cyclic component; each peeled
    // component is one maximal dangling tree attached by a single edge.
    for (const auto& comp : connected_components(g)) {
        int comp_edges = 0;
        for (Vertex v : comp) comp_edges += g.degree(v).total;
        comp_edges /= 2;
        if (comp_edges < static_cast<int>(comp.size())) continue;  // acyclic component

        std::set<Vertex> peeled = peel_leaves(g, comp);
        if (peeled.empty()) continue;
        Trigraph forest = g.induced(peeled);
        for (const auto& tree_comp : connected_components(forest)) {
            DanglingTree t;
            t.vertices = tree_comp;
            for (Vertex v : tree_comp) {
                for (const auto& [w, _c] : g.neighbors(v)) {
                    if (!peeled.count(w)) {
                        if (t.attach != -1)
                            throw CheckError("dangling tree with two attachment edges");
                        t.attach = w;
                        t.root = v;
                    }
                }
            }
            TWW_CHECK(t.attach != -1, "peeled tree has no attachment");
            out.trees.push_back(std::move(t));
        }
    }
    std::sort(out.trees.begin(), out.trees.end(),
              [](const DanglingTree& a, const DanglingTree& b) {
                  return std::tie(a.attach, a.root) < std::tie(b.attach, b.root);
              });

    // Dangling paths: runs of degree-2 vertices that do not close a cycle.
    std::set<Vertex> deg2;
    for (Vertex v : g.vertices())
        if (g.degree(v).total == 2) deg2.insert(v);
    if (deg2.empty()) return out;
    Trigraph runs = g.induced(deg2);
    for (const auto& run : connected_components(runs)) {
        std::vector<Vertex> ends;
        for (Vertex v : run)
            if (runs.degree(v).total <= 1) ends.push_back(v);
        if (ends.empty()) continue;  // a whole cycle of degree-2 vertices is not a path
        std::sort(ends.begin(), ends.end());
        Vertex start = ends.front();
        DanglingPath p;
        Vertex prev = -1, cur = start;
        while (true) {
            p.vertices.push_back(cur);
            Vertex next = -1;
            for (const auto& [w, _c] : runs.neighbors(cur))
                if (w != prev) next = w;
            if (next == -1) break;
            prev = cur;
            cur = next;
        }
        auto outside = [&](Vertex v) -> std::vector<Vertex> {
            std::vector<Vertex> res;
            for (const auto& [w, _c] : g.neighbors(v))
                if (!deg2.count(w)) res.push_back(w);
            return res;
        };
        std::vector<Vertex> front_out = outside(p.vertices.front());
        std::vector<Vertex> back_out = outside(p.vertices.back());
        if (p.vertices.size() == 1) {
            // single degree-2 vertex between two outside neighbors
            if (!front_out.empty()) p.attach_front = front_out.front();
            if (front_out.size() > 1) p.attach_back = front_out[1];
        } else {
            if (!front_out.empty()) p.attach_front = front_out.front();
            if (!back_out.empty()) p.attach_back = back_out.front();
        }
        out.paths.push_back(std::move(p));
    }
    std::sort(out.paths.begin(), out.paths.end(),
              [](const DanglingPath& a, const DanglingPath& b) {
                  return a.vertices.front() < b.vertices.front();
              });
    return out;
}

}  // namespace tww
