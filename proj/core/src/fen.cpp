#include "tww/fen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

namespace tww {

namespace {

// ReplayState plus the step log, so a partial sequence can be assembled while
// the width is tracked on the fly. After every apply the newest product is
// the maximum live id, so a sub-sequence computed on current() itself can be
// appended verbatim.
struct Recorder {
    ReplayState rs;
    std::vector<ContractionStep> steps;

    explicit Recorder(const Trigraph& g) : rs(g) {}

    Vertex contract_pair(Vertex a, Vertex b) {
        if (a > b) std::swap(a, b);
        const Vertex w = rs.next_fresh();
        rs.apply({a, b, w});
        steps.push_back({a, b, w});
        return w;
    }

    void append(const std::vector<ContractionStep>& sub) {
        for (const ContractionStep& s : sub) {
            rs.apply(s);
            steps.push_back(s);
        }
    }

    // For sub-sequences computed on an induced piece of current(); products
    // get renumbered into this recorder's fresh range. Returns the last
    // product (-1 when sub is empty).
    Vertex append_translated(const std::vector<ContractionStep>& sub) {
        std::map<Vertex, Vertex> alias;
        Vertex last = -1;
        for (const ContractionStep& s : sub) {
            const auto au = alias.find(s.u);
            const auto av = alias.find(s.v);
            last = contract_pair(au == alias.end() ? s.u : au->second,
                                 av == alias.end() ? s.v : av->second);
            alias[s.w] = last;
        }
        return last;
    }

    const Trigraph& current() const { return rs.current(); }

    ContractionSequence sequence(const Trigraph& initial) const {
        return {initial, steps};
    }
};

std::map<Vertex, int> distances_from(const Trigraph& g, const std::set<Vertex>& sources) {
    std::map<Vertex, int> dist;
    std::deque<Vertex> q;
    for (Vertex s : sources) {
        dist[s] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        const Vertex v = q.front();
        q.pop_front();
        for (const auto& [u, color] : g.neighbors(v)) {
            if (dist.count(u)) continue;
            dist[u] = dist.at(v) + 1;
            q.push_back(u);
        }
    }
    return dist;
}

// comp must induce a simple path in g when restricted to `within`; returns it
// in order, starting at the lowest-id endpoint.
std::vector<Vertex> path_order(const Trigraph& g, const std::vector<Vertex>& comp,
                               const std::set<Vertex>& within) {
    if (comp.size() == 1) return comp;
    auto inside_degree = [&](Vertex v) {
        int d = 0;
        for (const auto& [u, color] : g.neighbors(v))
            if (within.count(u)) ++d;
        return d;
    };
    Vertex start = -1;
    for (Vertex v : comp) {  // comp is sorted, so this is the lowest-id end
        if (inside_degree(v) <= 1) {
            start = v;
            break;
        }
    }
    TWW_CHECK(start != -1, "degree-2 run closes a cycle");
    std::vector<Vertex> out{start};
    Vertex prev = -1;
    Vertex cur = start;
    for (;;) {
        Vertex nxt = -1;
        for (const auto& [u, color] : g.neighbors(cur)) {
            if (within.count(u) && u != prev) {
                nxt = u;
                break;
            }
        }
        if (nxt == -1) break;
        out.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    TWW_CHECK(out.size() == comp.size(), "run does not form a simple path");
    return out;
}

// Unique a-b path inside the tree induced by `allowed`, endpoints included.
std::vector<Vertex> tree_path(const Trigraph& g, const std::set<Vertex>& allowed,
                              Vertex a, Vertex b) {
    std::map<Vertex, Vertex> parent;
    std::deque<Vertex> q{a};
    parent[a] = a;
    while (!q.empty() && !parent.count(b)) {
        const Vertex v = q.front();
        q.pop_front();
        for (const auto& [u, color] : g.neighbors(v)) {
            if (!allowed.count(u) || parent.count(u)) continue;
            parent[u] = v;
            q.push_back(u);
        }
    }
    TWW_CHECK(parent.count(b), "attachment points not connected in the tree");
    std::vector<Vertex> out{b};
    while (out.back() != a) out.push_back(parent.at(out.back()));
    std::reverse(out.begin(), out.end());
    return out;
}

int sqrt_ceiling(int k) {
    int s = static_cast<int>(std::sqrt(87.0 * k));
    while (s * s < 87 * k) ++s;
    while (s > 0 && (s - 1) * (s - 1) >= 87 * k) --s;
    return s + 10;
}

}  // namespace

std::set<Vertex> DanglingContractionResult::spikes() const {
    std::set<Vertex> out;
    for (const auto& [host, s] : spike_of) out.insert(s);
    return out;
}

DanglingContractionResult contract_dangling_trees(const Trigraph& g) {
    Recorder rec(g);
    std::map<Vertex, Vertex> spike_of;
    for (const DanglingTree& t : dangling_structures(g).trees) {
        Vertex spike = t.root;
        if (t.vertices.size() > 1) {
            const std::set<Vertex> keep(t.vertices.begin(), t.vertices.end());
            spike = rec.append_translated(tree_sequence(g.induced(keep), t.root).steps);
        }
        const auto it = spike_of.find(t.attach);
        if (it == spike_of.end()) {
            spike_of[t.attach] = spike;
        } else {
            // trees arrive grouped by host, so the merge happens as soon as a
            // second spike exists and the host never carries more than two
            it->second = rec.contract_pair(it->second, spike);
        }
    }
    // components that are trees outright collapse to isolated vertices
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        const std::set<Vertex> keep(comp.begin(), comp.end());
        const Trigraph sub = g.induced(keep);
        if (!is_forest(sub)) continue;
        rec.append_translated(tree_sequence(sub, comp.front()).steps);
    }
    if (g.red_edge_count() == 0)
        TWW_CHECK(rec.rs.width() <= 2, "dangling tree collapse exceeded width 2");
    return {rec.sequence(g), rec.current(), std::move(spike_of)};
}

ContractionSequence follow_on_trigraph(const Trigraph& g_red,
                                       const ContractionSequence& c_black) {
    if (g_red.max_red_degree() > 2)
        throw Error("follow_on_trigraph: max red degree above 2");
    for (const auto& [u, v, color] : g_red.edges()) {
        if (color != EdgeColor::Red) continue;
        if (g_red.degree(u).total > 2 && g_red.degree(v).total > 2)
            throw Error("follow_on_trigraph: red edge with both endpoints of degree above 2");
    }
    if (!(c_black.initial == g_red.blackened()))
        throw Error("follow_on_trigraph: sequence does not start from the blackened trigraph");
    const ContractionSequence out{g_red, c_black.steps};
    const int black_width = replay_width(c_black).width();
    const int red_width = replay_width(out).width();
    TWW_CHECK(red_width <= black_width + 4,
              "following the all-black sequence overshot the +4 budget");
    return out;
}

SolveResult sqrt_bound_sequence(const Trigraph& g, SqrtBoundReport* report) {
    if (!is_connected(g)) throw Error("sqrt_bound_sequence needs a connected graph");
    if (g.red_edge_count() != 0)
        throw Error("sqrt_bound_sequence expects an all-black graph");
    SqrtBoundReport rep;
    const auto fes = feedback_edge_set(g);
    rep.k = static_cast<int>(fes.size());
    rep.soft_ceiling = sqrt_ceiling(rep.k);
    if (rep.k == 0) {
        ContractionSequence c{g, {}};
        if (g.vertex_count() > 1) c = tree_sequence(g, g.vertices().front());
        const int w = replay_width(c).width();
        rep.partial_width = rep.total_width = w;
        if (report) *report = rep;
        return {w, std::move(c), w == 0};
    }

    Recorder rec(g);
    DanglingContractionResult dang = contract_dangling_trees(g);
    rec.append(dang.seq.steps);
    std::map<Vertex, Vertex> spike_of = std::move(dang.spike_of);

    // the untouched core, minus the feedback edges, is a spanning tree of it
    std::set<Vertex> core;
    {
        std::set<Vertex> spikes;
        for (const auto& [host, s] : spike_of) spikes.insert(s);
        for (Vertex v : rec.current().vertices())
            if (!spikes.count(v)) core.insert(v);
    }
    std::set<std::pair<Vertex, Vertex>> fset(fes.begin(), fes.end());
    Trigraph tree;
    for (Vertex v : core) tree.add_vertex(v);
    for (const auto& [u, v, color] : rec.current().induced(core).edges())
        if (!fset.count({u, v})) tree.add_edge(u, v, EdgeColor::Black);

    // junctions: feedback endpoints and branch vertices of the tree
    std::set<Vertex> junctions;
    for (const auto& [a, b] : fes) {
        junctions.insert(a);
        junctions.insert(b);
    }
    for (Vertex v : core)
        if (tree.degree(v).total > 2) junctions.insert(v);

    std::set<Vertex> rest;
    for (Vertex v : core)
        if (!junctions.count(v)) rest.insert(v);
    std::vector<std::vector<Vertex>> paths;
    for (const auto& comp : connected_components(tree.induced(rest)))
        paths.push_back(path_order(tree, comp, {comp.begin(), comp.end()}));
    std::sort(paths.begin(), paths.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    for (auto& path : paths) {
        const int n = static_cast<int>(path.size());
        if (n > 2) {
            // interior spikes join their path vertex; endpoint spikes join the
            // second vertex so the junction-facing ends stay plain
            for (int i = 1; i + 1 < n; ++i) {
                const auto it = spike_of.find(path[i]);
                if (it == spike_of.end()) continue;
                path[i] = rec.contract_pair(path[i], it->second);
                spike_of.erase(it);
            }
            if (const auto it = spike_of.find(path[0]); it != spike_of.end()) {
                path[1] = rec.contract_pair(it->second, path[1]);
                spike_of.erase(it);
            }
            if (const auto it = spike_of.find(path[n - 1]); it != spike_of.end()) {
                path[n - 2] = rec.contract_pair(it->second, path[n - 2]);
                spike_of.erase(it);
            }
        }
        if (n > 3) {
            std::vector<Vertex> live = path;
            while (live.size() > 3) {
                const Vertex w = rec.contract_pair(live[1], live[2]);
                live.erase(live.begin() + 1);
                live[1] = w;
            }
        }
    }

    const Trigraph beta = rec.current();
    rep.partial_width = rec.rs.width();
    TWW_CHECK(rep.partial_width <= 2, "tree-and-path reduction exceeded width 2");
    rep.beta_edges = beta.edge_count();
    TWW_CHECK(rep.beta_edges <= 29 * rep.k, "reduced trigraph has more than 29k edges");

    const SolverConfig cfg = default_solver_config();
    const Trigraph gamma = beta.blackened();
    SolveResult fin;
    if (gamma.vertex_count() <= cfg.vertex_cap) {
        fin = optimal_sequence(gamma, {}, cfg);
    } else {
        fin = greedy_sequence(gamma);
    }
    rep.finish_width = fin.width;
    rep.finish_optimal = fin.optimal;
    rec.append(follow_on_trigraph(beta, fin.sequence).steps);

    rep.total_width = rec.rs.width();
    rep.ceiling_exceeded = rep.total_width > rep.soft_ceiling;
    if (report) *report = rep;
    ContractionSequence full = rec.sequence(g);
    TWW_CHECK(full.full(), "construction did not reach a single vertex");
    return {rep.total_width, std::move(full), false};
}

void validate_tidy(const TidyHPGraph& t) {
    TWW_CHECK(is_connected(t.g), "tidy graph must be connected");
    TWW_CHECK(!t.paths.empty(), "tidy graph needs at least one path");
    std::set<Vertex> path_verts;
    for (const auto& p : t.paths) {
        TWW_CHECK(!p.empty(), "tidy path must be nonempty");
        for (Vertex v : p) {
            TWW_CHECK(t.g.has_vertex(v), "tidy path vertex missing from the graph");
            TWW_CHECK(!t.h_vertices.count(v), "tidy path vertex also listed in H");
            TWW_CHECK(path_verts.insert(v).second, "tidy paths overlap");
        }
        for (size_t i = 0; i + 1 < p.size(); ++i)
            TWW_CHECK(t.g.edge(p[i], p[i + 1]) == EdgeColor::Red,
                      "tidy path edge must be red");
    }
    for (Vertex v : t.g.vertices())
        TWW_CHECK(t.h_vertices.count(v) || path_verts.count(v),
                  "vertex in neither H nor a path");
    for (Vertex v : t.h_vertices)
        TWW_CHECK(t.g.has_vertex(v), "H vertex missing from the graph");
    for (const auto& p : t.paths) {
        for (size_t i = 0; i < p.size(); ++i) {
            const auto& nb = t.g.neighbors(p[i]);
            TWW_CHECK(nb.size() <= 2, "path vertex with degree above 2");
            for (const auto& [u, color] : nb) {
                const bool along = (i > 0 && u == p[i - 1]) ||
                                   (i + 1 < p.size() && u == p[i + 1]);
                if (along) continue;
                TWW_CHECK(i == 0 || i + 1 == p.size(),
                          "interior path vertex with an outside neighbor");
                TWW_CHECK(t.h_vertices.count(u), "path end attached outside H");
                TWW_CHECK(color == EdgeColor::Red, "path attachment must be red");
            }
        }
    }
    for (Vertex v : t.h_vertices) {
        int touches = 0;
        for (const auto& [u, color] : t.g.neighbors(v))
            if (path_verts.count(u)) ++touches;
        if (touches == 0) continue;
        TWW_CHECK(touches == 1, "H vertex with two path neighbors");
        TWW_CHECK(t.g.degree(v).black == 0, "path-adjacent H vertex with a black edge");
    }
}

ContractionSequence TidyPreprocessResult::lift(const ContractionSequence& tail) const {
    return concatenate(prefix, tail);
}

TidyPreprocessResult tidy_preprocess(const Trigraph& g, int k) {
    if (!is_connected(g)) throw Error("tidy_preprocess needs a connected graph");
    if (g.red_edge_count() != 0) throw Error("tidy_preprocess expects an all-black graph");
    TidyPreprocessResult out;
    out.k = k;

    Recorder rec(g);
    DanglingContractionResult dang = contract_dangling_trees(g);
    rec.append(dang.seq.steps);

    if (rec.current().vertex_count() == 1) {
        out.outcome = TidyOutcome::Solved;
        out.prefix = rec.sequence(g);
        out.reduced = rec.current();
        const int w = rec.rs.width();
        out.solved = SolveResult{w, out.prefix, w == 0};
        return out;
    }
    const SolverConfig cfg = default_solver_config();
    if (rec.current().vertex_count() <= cfg.decide_vertex_cap) {
        out.ladder_ran = true;
        for (int c = 0; c <= 2; ++c) {
            auto d = decide_width_at_most(rec.current(), c, cfg);
            if (!d) continue;
            ContractionSequence full = concatenate(rec.sequence(g), *d);
            const int w = replay_width(full).width();
            TWW_CHECK(w <= 2, "width-2 branch produced a wider sequence");
            out.outcome = TidyOutcome::Solved;
            out.prefix = rec.sequence(g);
            out.reduced = rec.current();
            out.solved = SolveResult{w, std::move(full), w == 0};
            return out;
        }
    }

    // core = everything that is not a spike; long degree-2 chains of it turn
    // into dangling red paths
    std::map<Vertex, Vertex> spike_live = std::move(dang.spike_of);
    std::set<Vertex> core;
    {
        std::set<Vertex> spikes;
        for (const auto& [host, s] : spike_live) spikes.insert(s);
        for (Vertex v : rec.current().vertices())
            if (!spikes.count(v)) core.insert(v);
    }
    const Trigraph core_graph = rec.current().induced(core);
    std::set<Vertex> backbone;
    for (Vertex v : core)
        if (core_graph.degree(v).total != 2) backbone.insert(v);
    if (backbone.empty()) backbone.insert(*core.begin());  // the core is a bare cycle

    std::set<Vertex> chain_verts;
    for (Vertex v : core)
        if (!backbone.count(v)) chain_verts.insert(v);
    std::vector<std::vector<Vertex>> chains;
    for (const auto& comp : connected_components(core_graph.induced(chain_verts)))
        chains.push_back(path_order(core_graph, comp, {comp.begin(), comp.end()}));
    std::sort(chains.begin(), chains.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<std::vector<Vertex>> paths_out;
    for (auto& chain : chains) {
        const int len = static_cast<int>(chain.size());
        if (len < 8) continue;  // too short to shield both ends; stays in H
        // a spike on a chain interior must join its vertex first, otherwise
        // the pair products would carry three red edges
        for (int i = 1; i + 1 < len; ++i) {
            const auto it = spike_live.find(chain[i]);
            if (it == spike_live.end()) continue;
            chain[i] = rec.contract_pair(chain[i], it->second);
            spike_live.erase(it);
        }
        // single-vertex stubs at both ends keep the backbone black; the first
        // and last pair products shield the stubs from the red path
        const std::vector<Vertex> mid(chain.begin() + 1, chain.end() - 1);
        std::vector<Vertex> prods;
        size_t i = 0;
        for (; i + 1 < mid.size(); i += 2)
            prods.push_back(rec.contract_pair(mid[i], mid[i + 1]));
        if (i < mid.size()) prods.back() = rec.contract_pair(prods.back(), mid[i]);
        paths_out.emplace_back(prods.begin() + 1, prods.end() - 1);
    }

    out.prefix = rec.sequence(g);
    out.reduced = rec.current();
    if (paths_out.empty()) {
        out.outcome = TidyOutcome::Passthrough;
        return out;
    }
    std::set<Vertex> in_paths;
    for (const auto& p : paths_out)
        for (Vertex v : p) in_paths.insert(v);
    std::set<Vertex> h;
    for (Vertex v : out.reduced.vertices())
        if (!in_paths.count(v)) h.insert(v);

    TidyHPGraph tidy{out.reduced, std::move(h), std::move(paths_out)};
    validate_tidy(tidy);
    TWW_CHECK(rec.rs.width() <= 2, "tidy reduction exceeded width 2");
    out.outcome = TidyOutcome::Tidy;
    out.h_bound_ok = static_cast<int>(tidy.h_vertices.size()) <= 112 * k;
    out.p_bound_ok = static_cast<int>(tidy.paths.size()) <= 4 * k;
    out.tidy = std::move(tidy);
    return out;
}

void validate_gtidy(const GTidyState& s) {
    const Trigraph& cur = s.current;
    for (Vertex v : s.h_prime) TWW_CHECK(cur.has_vertex(v), "dead vertex recorded in H'");
    for (Vertex v : s.f_prime) {
        TWW_CHECK(cur.has_vertex(v), "dead vertex recorded in F'");
        TWW_CHECK(!s.h_prime.count(v), "H' and F' overlap");
    }
    TWW_CHECK(s.level.size() == s.f_prime.size(), "level map out of step with F'");
    TWW_CHECK(s.bags.size() == static_cast<size_t>(cur.vertex_count()),
              "bag map out of step with the trigraph");

    const std::map<Vertex, int> dist = distances_from(s.tidy_graph, s.h_in_tidy);
    for (const auto& [v, bag] : s.bags) {
        TWW_CHECK(cur.has_vertex(v), "bag recorded for a dead vertex");
        if (s.h_prime.count(v)) {
            for (Vertex b : bag) TWW_CHECK(s.h_in_tidy.count(b), "H' bag leaves H");
        } else if (s.f_prime.count(v)) {
            const auto lv = s.level.find(v);
            TWW_CHECK(lv != s.level.end() && lv->second >= 1, "F' vertex without a level");
            for (Vertex b : bag) {
                TWW_CHECK(s.f_in_tidy.count(b), "F' bag leaves the tree zone");
                TWW_CHECK(dist.count(b) && dist.at(b) == lv->second, "bag mixes levels");
            }
        } else {
            TWW_CHECK(bag.size() == 1, "merged vertex outside both H' and F'");
        }
    }
    for (Vertex v : s.h_prime) {
        int outside = 0;
        for (const auto& [u, color] : cur.neighbors(v))
            if (!s.h_prime.count(u)) ++outside;
        TWW_CHECK(outside <= 1, "H' vertex with two outside neighbors");
    }
    const Trigraph ff = cur.induced(s.f_prime);
    TWW_CHECK(is_forest(ff), "F' contains a cycle");
    for (Vertex v : s.f_prime)
        TWW_CHECK(cur.degree(v).total <= 3, "F' vertex with degree above 3");
    std::set<Vertex> roots_seen;
    for (const auto& comp : connected_components(ff)) {
        Vertex root = -1;
        for (Vertex v : comp) {
            if (s.level.at(v) != 1) continue;
            TWW_CHECK(root == -1, "tree with two level-1 vertices");
            root = v;
        }
        TWW_CHECK(root != -1, "tree without a level-1 root");
        roots_seen.insert(root);
        std::set<Vertex> deg3;
        for (Vertex v : comp)
            if (cur.degree(v).total == 3) deg3.insert(v);
        if (deg3.empty()) continue;
        TWW_CHECK(deg3.count(root), "degree-3 vertices detached from the root");
        std::set<Vertex> seen{root};
        std::deque<Vertex> q{root};
        while (!q.empty()) {
            const Vertex x = q.front();
            q.pop_front();
            for (const auto& [y, color] : ff.neighbors(x)) {
                if (!deg3.count(y) || seen.count(y)) continue;
                seen.insert(y);
                q.push_back(y);
            }
        }
        TWW_CHECK(seen == deg3, "degree-3 vertices do not form one subtree");
        const int cap = static_cast<int>(s.bags.at(root).size()) - 1;
        for (Vertex v : deg3)
            TWW_CHECK(s.level.at(v) <= cap, "degree-3 subtree too deep for the root bag");
    }
    TWW_CHECK(roots_seen == s.roots, "recorded roots out of step");
}

namespace {

// Shrinks the pendant tree rooted at `root` until no degree-3 vertex is
// reachable from the root through degree-3 vertices: the two children of the
// deepest such vertex (lowest id on ties) are contracted, which frees one
// red slot at their parent. Ends with the root at degree <= 2.
void trim_tree(Recorder& rec, GTidyState& st, Vertex root) {
    for (;;) {
        std::map<Vertex, std::vector<Vertex>> children;
        {
            std::map<Vertex, Vertex> parent;
            std::deque<Vertex> q{root};
            parent[root] = -1;
            while (!q.empty()) {
                const Vertex x = q.front();
                q.pop_front();
                for (const auto& [y, color] : rec.current().neighbors(x)) {
                    if (!st.f_prime.count(y) || parent.count(y)) continue;
                    parent[y] = x;
                    children[x].push_back(y);
                    q.push_back(y);
                }
            }
        }
        Vertex best = -1;
        std::deque<Vertex> walk;
        if (rec.current().degree(root).total == 3) walk.push_back(root);
        while (!walk.empty()) {
            const Vertex x = walk.front();
            walk.pop_front();
            if (best == -1 || st.level.at(x) > st.level.at(best) ||
                (st.level.at(x) == st.level.at(best) && x < best))
                best = x;
            for (Vertex y : children[x])
                if (rec.current().degree(y).total == 3) walk.push_back(y);
        }
        if (best == -1) return;
        const auto& kids = children[best];
        TWW_CHECK(kids.size() == 2, "merge point does not have two tree children");
        const int lvl = st.level.at(kids[0]);
        TWW_CHECK(st.level.at(kids[1]) == lvl, "merge children on different levels");
        const Vertex w = rec.contract_pair(kids[0], kids[1]);
        st.f_prime.erase(kids[0]);
        st.f_prime.erase(kids[1]);
        st.level.erase(kids[0]);
        st.level.erase(kids[1]);
        st.f_prime.insert(w);
        st.level[w] = lvl;
    }
}

}  // namespace

CHResult contract_given_CH(const TidyHPGraph& t, const ContractionSequence& c_h) {
    validate_tidy(t);
    const int m = static_cast<int>(t.paths.size());
    for (const auto& p : t.paths)
        if (static_cast<int>(p.size()) < 8 * m)
            throw Error("contract_given_CH: every path needs at least 8 * |paths| vertices");
    if (!(c_h.initial == t.g.induced(t.h_vertices)))
        throw Error("contract_given_CH: sequence does not start from H");
    if (!c_h.full()) throw Error("contract_given_CH: need a full sequence of H");
    const int budget = std::max(replay_width(c_h).width() + 1, 4);

    GTidyState st;
    st.tidy_graph = t.g;
    st.h_in_tidy = t.h_vertices;
    {
        const std::map<Vertex, int> dist = distances_from(t.g, t.h_vertices);
        for (const auto& [v, d] : dist) {
            if (d < 1 || d > 2 * m) continue;
            st.f_in_tidy.insert(v);
            st.level[v] = d;
            if (d == 1) st.roots.insert(v);
        }
    }
    st.f_prime = st.f_in_tidy;
    st.h_prime = t.h_vertices;

    Recorder rec(t.g);
    const auto snapshot = [&]() {
        st.current = rec.current();
        st.bags = rec.rs.bags();
        validate_gtidy(st);
    };
    snapshot();

    std::map<Vertex, Vertex> alias;
    for (Vertex v : t.h_vertices) alias[v] = v;
    for (const ContractionStep& hs : c_h.steps) {
        const Vertex u = alias.at(hs.u);
        const Vertex v = alias.at(hs.v);
        const auto outside = [&](Vertex x) {
            std::vector<Vertex> o;
            for (const auto& [y, color] : rec.current().neighbors(x))
                if (!st.h_prime.count(y)) o.push_back(y);
            return o;
        };
        const auto ou = outside(u);
        const auto ov = outside(v);
        if (!ou.empty() && !ov.empty()) {
            // both sides hang a tree; merge the trees first so the product
            // keeps a single outside neighbor
            TWW_CHECK(ou.size() == 1 && ov.size() == 1,
                      "H' vertex with two outside neighbors");
            std::vector<Vertex> roots{ou[0], ov[0]};
            std::sort(roots.begin(), roots.end());
            for (Vertex r : roots) trim_tree(rec, st, r);
            const Vertex merged = rec.contract_pair(roots[0], roots[1]);
            for (Vertex r : roots) {
                st.f_prime.erase(r);
                st.level.erase(r);
                st.roots.erase(r);
            }
            st.f_prime.insert(merged);
            st.level[merged] = 1;
            st.roots.insert(merged);
        }
        const Vertex w = rec.contract_pair(u, v);
        st.h_prime.erase(u);
        st.h_prime.erase(v);
        st.h_prime.insert(w);
        alias[hs.w] = w;
        snapshot();
    }
    TWW_CHECK(st.h_prime.size() == 1, "H did not contract to one vertex");
    TWW_CHECK(rec.rs.width() <= budget, "tree merging exceeded the width budget");
    return {rec.sequence(t.g), std::move(st)};
}

ContractionSequence contract_gtidy_tail(const GTidyState& s) {
    validate_gtidy(s);
    TWW_CHECK(s.h_prime.size() == 1, "tail needs H contracted to one vertex");
    ContractionSequence out{s.current, {}};
    if (s.current.vertex_count() == 1) return out;
    TWW_CHECK(s.current.black_edge_count() == 0, "tail expects an all-red trigraph");
    const Vertex u = *s.h_prime.begin();
    TWW_CHECK(s.current.degree(u).total == 1, "collapsed H vertex must have one neighbor");
    const Vertex r = s.current.neighbors(u).begin()->first;

    // branch vertices, taken before u joins the tree; the u-r product
    // inherits r's role
    std::set<Vertex> branch;
    for (Vertex v : s.f_prime)
        if (s.current.degree(v).total == 3) branch.insert(v);
    Recorder rec(s.current);
    const Vertex rp = rec.contract_pair(u, r);
    if (branch.erase(r)) branch.insert(rp);

    if (branch.empty()) {
        // a path or a cycle; eat it from an end (or anywhere, once)
        while (rec.current().vertex_count() > 1) {
            Vertex a = -1;
            for (Vertex v : rec.current().vertices()) {
                if (rec.current().degree(v).total <= 1) {
                    a = v;
                    break;
                }
            }
            if (a == -1) a = rec.current().vertices().front();
            rec.contract_pair(a, rec.current().neighbors(a).begin()->first);
        }
        TWW_CHECK(rec.rs.width() <= 4, "tail exceeded width 4");
        out.steps = rec.steps;
        TWW_CHECK(out.full(), "tail did not reach a single vertex");
        return out;
    }

    std::set<Vertex> rest;
    for (Vertex v : rec.current().vertices())
        if (!branch.count(v)) rest.insert(v);
    std::vector<std::vector<Vertex>> paths;
    for (const auto& comp : connected_components(rec.current().induced(rest)))
        paths.push_back(path_order(rec.current(), comp, {comp.begin(), comp.end()}));
    std::sort(paths.begin(), paths.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    for (const auto& p : paths) {
        // attachment points of the path ends inside the branch tree
        std::vector<Vertex> ends;
        for (const auto& [y, color] : rec.current().neighbors(p.front()))
            if (branch.count(y)) ends.push_back(y);
        if (p.size() > 1) {
            TWW_CHECK(ends.size() == 1, "path end without a unique tree attachment");
            int found = 0;
            for (const auto& [y, color] : rec.current().neighbors(p.back()))
                if (branch.count(y)) {
                    ends.push_back(y);
                    ++found;
                }
            TWW_CHECK(found == 1, "path end without a unique tree attachment");
        } else {
            TWW_CHECK(ends.size() == 2, "path end without a unique tree attachment");
        }
        const std::vector<Vertex> q = tree_path(rec.current(), branch, ends[0], ends[1]);
        TWW_CHECK(q.size() <= p.size(), "red path shorter than its tree path");
        std::vector<Vertex> live = p;
        while (live.size() > q.size()) {
            const Vertex w = rec.contract_pair(live[0], live[1]);
            live.erase(live.begin());
            live[0] = w;
        }
        // zip the path onto the tree path; each product stands in for its
        // tree vertex
        for (size_t i = 0; i < q.size(); ++i) {
            const Vertex w = rec.contract_pair(live[i], q[i]);
            branch.erase(q[i]);
            branch.insert(w);
        }
    }
    for (Vertex v : rec.current().vertices())
        TWW_CHECK(branch.count(v), "leftover vertex outside the branch tree");
    if (rec.current().vertex_count() > 1)
        rec.append(tree_sequence(rec.current(), rec.current().vertices().front()).steps);
    TWW_CHECK(rec.rs.width() <= 4, "tail exceeded width 4");
    out.steps = rec.steps;
    TWW_CHECK(out.full(), "tail did not reach a single vertex");
    return out;
}

ContractionSequence KernelResult::lift(const ContractionSequence& tail) const {
    return concatenate(shorten_steps, tail);
}

KernelResult shorten_paths_kernel(const TidyHPGraph& t, int k) {
    validate_tidy(t);
    const int target = 8 * static_cast<int>(t.paths.size());
    Recorder rec(t.g);
    std::set<Vertex> h = t.h_vertices;
    std::vector<std::vector<Vertex>> kept;
    for (const auto& p : t.paths) {
        if (static_cast<int>(p.size()) < target) {
            // short paths move into H whole; the remaining long ones still
            // clear the 8 * |paths| floor because it only shrinks
            h.insert(p.begin(), p.end());
            continue;
        }
        std::vector<Vertex> live = p;
        while (static_cast<int>(live.size()) > target) {
            const Vertex w = rec.contract_pair(live[0], live[1]);
            live.erase(live.begin());
            live[0] = w;
        }
        kept.push_back(std::move(live));
    }
    TWW_CHECK(rec.rs.width() <= std::max(2, t.g.max_red_degree()),
              "path shortening exceeded width 2");
    KernelResult out;
    out.k = k;
    out.kernel = rec.current();
    out.shorten_steps = rec.sequence(t.g);
    out.tidy_after = {out.kernel, std::move(h), std::move(kept)};
    if (!out.tidy_after.paths.empty()) validate_tidy(out.tidy_after);
    out.kernel_vertices = out.kernel.vertex_count();
    if (k >= 0) out.size_bound_ok = out.kernel_vertices <= 128 * k * k + 112 * k;
    return out;
}

SolveResult fen_approximate(const Trigraph& g, FenReport* report) {
    if (!is_connected(g)) throw Error("fen_approximate needs a connected graph");
    if (g.red_edge_count() != 0) throw Error("fen_approximate expects an all-black graph");
    FenReport rep;
    rep.k = static_cast<int>(feedback_edge_set(g).size());
    TidyPreprocessResult pre = tidy_preprocess(g, rep.k);
    rep.ladder_ran = pre.ladder_ran;
    rep.h_bound_ok = pre.h_bound_ok;
    rep.p_bound_ok = pre.p_bound_ok;

    if (pre.outcome == TidyOutcome::Solved) {
        rep.solved_early = true;
        SolveResult out = *pre.solved;
        TWW_CHECK(out.width <= 2, "early branch exceeded width 2");
        rep.total_width = out.width;
        if (report) *report = rep;
        return out;
    }

    const SolverConfig cfg = default_solver_config();
    SolveResult on_kernel;
    ContractionSequence full;
    if (pre.outcome == TidyOutcome::Passthrough) {
        rep.passthrough = true;
        rep.kernel_vertices = pre.reduced.vertex_count();
        if (rep.kernel_vertices > cfg.vertex_cap)
            throw CapExceededError("reduced graph larger than the exact-solver cap");
        on_kernel = optimal_sequence(pre.reduced, {}, cfg);
        full = pre.lift(on_kernel.sequence);
    } else {
        KernelResult kr = shorten_paths_kernel(*pre.tidy, rep.k);
        rep.kernel_vertices = kr.kernel_vertices;
        rep.size_bound_ok = kr.size_bound_ok;
        if (pre.h_bound_ok && pre.p_bound_ok)
            TWW_CHECK(kr.size_bound_ok, "kernel size exceeded 128k^2 + 112k");
        if (kr.kernel_vertices > cfg.vertex_cap)
            throw CapExceededError("kernel larger than the exact-solver cap");
        on_kernel = optimal_sequence(kr.kernel, {}, cfg);
        full = pre.lift(kr.lift(on_kernel.sequence));
    }
    rep.kernel_width = on_kernel.width;
    rep.kernel_optimal = on_kernel.optimal;
    const int w = replay_width(full).width();
    rep.total_width = w;
    // with the exact ladder on record the kernel optimum is a floor for the
    // whole instance, so the lift may cost at most one
    if (pre.ladder_ran)
        TWW_CHECK(w <= on_kernel.width + 1, "lifted width exceeded the kernel optimum + 1");
    if (report) *report = rep;
    return {w, std::move(full), false};
}

}  // namespace tww
