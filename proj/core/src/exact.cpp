#include "tww/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tww {

SolverConfig default_solver_config() {
    SolverConfig cfg;
    if (const char* env = std::getenv("TWW_SOLVER_CAP")) {
        int v = 0;
        std::size_t used = 0;
        try {
            v = std::stoi(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != std::string(env).size() || v < 1)
            throw Error(std::string("TWW_SOLVER_CAP must be a positive integer, got '") + env +
                        "'");
        cfg.vertex_cap = v;
        cfg.decide_vertex_cap = v;
    }
    return cfg;
}

namespace {

using u64 = std::uint64_t;

// Slot-indexed bit representation of a partially contracted trigraph.
// Merging keeps one slot and frees the other, so at most 64 original
// vertices fit regardless of sequence length.
struct BitState {
    std::vector<u64> black, red, bag;
    u64 alive = 0;
    int width = 0;  // max red degree seen on this branch, initial included
    std::vector<std::pair<int, int>> merges;  // (kept slot, absorbed slot)
};

int max_red_degree_bits(const BitState& st) {
    int best = 0;
    for (u64 m = st.alive; m; m &= m - 1)
        best = std::max(best, std::popcount(st.red[std::countr_zero(m)]));
    return best;
}

// Order-independent memo key: each original index maps to the smallest
// index sharing its bag.
std::string canonical_key(const BitState& st, int n) {
    std::string key(static_cast<std::size_t>(n), '\0');
    for (u64 m = st.alive; m; m &= m - 1) {
        int s = std::countr_zero(m);
        char low = static_cast<char>(std::countr_zero(st.bag[s]));
        for (u64 b = st.bag[s]; b; b &= b - 1) key[std::countr_zero(b)] = low;
    }
    return key;
}

void merge_slots(BitState& st, int i, int j) {
    u64 bi = u64{1} << i, bj = u64{1} << j;
    u64 ai = (st.black[i] | st.red[i]) & ~bj;
    u64 aj = (st.black[j] | st.red[j]) & ~bi;
    u64 black_new = st.black[i] & st.black[j];
    u64 red_new = (ai | aj) & ~black_new;
    st.black[i] = black_new;
    st.red[i] = red_new;
    st.bag[i] |= st.bag[j];
    st.black[j] = st.red[j] = 0;
    st.alive &= ~bj;
    for (u64 m = st.alive & ~bi; m; m &= m - 1) {
        int x = std::countr_zero(m);
        st.black[x] = (st.black[x] & ~(bi | bj)) | ((black_new >> x & 1) << i);
        st.red[x] = (st.red[x] & ~(bi | bj)) | ((red_new >> x & 1) << i);
    }
    st.width = std::max(st.width, max_red_degree_bits(st));
    st.merges.push_back({i, j});
}

struct Cand {
    int i, j;
    int score;  // red edges that would be newly created
    int a, b;   // pair anchors (smallest bag members), for deterministic ties
};

std::vector<Cand> candidates(const BitState& st) {
    std::vector<Cand> out;
    for (u64 mi = st.alive; mi; mi &= mi - 1) {
        int i = std::countr_zero(mi);
        u64 bi = u64{1} << i;
        for (u64 mj = mi & (mi - 1); mj; mj &= mj - 1) {
            int j = std::countr_zero(mj);
            u64 bj = u64{1} << j;
            u64 ai = (st.black[i] | st.red[i]) & ~bj;
            u64 aj = (st.black[j] | st.red[j]) & ~bi;
            u64 black_new = st.black[i] & st.black[j];
            u64 red_new = (ai | aj) & ~black_new;
            int score = std::popcount(red_new & ~(st.red[i] | st.red[j]));
            int a = std::countr_zero(st.bag[i]);
            int b = std::countr_zero(st.bag[j]);
            if (a > b) std::swap(a, b);
            out.push_back({i, j, score, a, b});
        }
    }
    std::sort(out.begin(), out.end(), [](const Cand& x, const Cand& y) {
        return std::tie(x.score, x.a, x.b) < std::tie(y.score, y.a, y.b);
    });
    return out;
}

BitState make_root(const Trigraph& comp, std::vector<Vertex>& ids) {
    ids = comp.vertices();
    int n = static_cast<int>(ids.size());
    std::unordered_map<Vertex, int> slot;
    for (int s = 0; s < n; ++s) slot[ids[s]] = s;
    BitState st;
    st.black.assign(n, 0);
    st.red.assign(n, 0);
    st.bag.assign(n, 0);
    st.alive = n == 64 ? ~u64{0} : (u64{1} << n) - 1;
    for (int s = 0; s < n; ++s) st.bag[s] = u64{1} << s;
    for (const auto& [u, v, color] : comp.edges()) {
        int su = slot[u], sv = slot[v];
        auto& side = color == EdgeColor::Black ? st.black : st.red;
        side[su] |= u64{1} << sv;
        side[sv] |= u64{1} << su;
    }
    st.width = max_red_degree_bits(st);
    return st;
}

// Cheap incumbent: always contract the pair whose resulting state stays
// narrowest.
BitState greedy_bits(BitState st) {
    while (std::popcount(st.alive) > 1) {
        bool have = false;
        std::tuple<int, int, int, int> best_key;
        BitState best_child;
        for (const Cand& c : candidates(st)) {
            BitState child = st;
            merge_slots(child, c.i, c.j);
            std::tuple<int, int, int, int> key{child.width, c.score, c.a, c.b};
            if (!have || key < best_key) {
                have = true;
                best_key = key;
                best_child = std::move(child);
            }
        }
        st = std::move(best_child);
    }
    return st;
}

struct OptShared {
    int n = 0;
    std::atomic<int> best{INT_MAX};
    std::mutex mu;
    std::vector<std::pair<int, int>> best_merges;
    int hint_bound = INT_MAX;
};

void dfs_optimal(OptShared& sh, std::unordered_map<std::string, int>& memo, const BitState& st) {
    if (st.width >= sh.best.load(std::memory_order_relaxed)) return;
    if (std::popcount(st.alive) == 1) {
        std::lock_guard<std::mutex> lk(sh.mu);
        if (st.width < sh.best.load(std::memory_order_relaxed)) {
            sh.best.store(st.width, std::memory_order_relaxed);
            sh.best_merges = st.merges;
        }
        return;
    }
    std::string key = canonical_key(st, sh.n);
    auto it = memo.find(key);
    if (it != memo.end() && it->second <= st.width) return;
    memo[key] = st.width;
    for (const Cand& c : candidates(st)) {
        BitState child = st;
        merge_slots(child, c.i, c.j);
        if (child.width > sh.hint_bound) continue;
        dfs_optimal(sh, memo, child);
    }
}

struct CompSolve {
    int width = 0;
    std::vector<Vertex> ids;
    std::vector<std::pair<int, int>> merges;
};

CompSolve solve_component_optimal(const Trigraph& comp, std::optional<int> hint,
                                  const SolverConfig& cfg) {
    CompSolve out;
    BitState root = make_root(comp, out.ids);
    int n = static_cast<int>(out.ids.size());
    if (n <= 1) return out;

    BitState seed = greedy_bits(root);
    int gw = seed.width;

    auto run = [&](int hint_bound) {
        OptShared sh;
        sh.n = n;
        sh.best.store(gw, std::memory_order_relaxed);
        sh.best_merges = seed.merges;
        sh.hint_bound = hint_bound;
        std::vector<Cand> roots = candidates(root);
        if (cfg.jobs <= 1) {
            std::unordered_map<std::string, int> memo;
            for (const Cand& c : roots) {
                BitState child = root;
                merge_slots(child, c.i, c.j);
                if (child.width > sh.hint_bound) continue;
                dfs_optimal(sh, memo, child);
            }
        } else {
            std::atomic<std::size_t> next{0};
            int workers = std::min<int>(cfg.jobs, static_cast<int>(roots.size()));
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t) {
                pool.emplace_back([&] {
                    std::unordered_map<std::string, int> memo;
                    while (true) {
                        std::size_t k = next.fetch_add(1);
                        if (k >= roots.size()) break;
                        BitState child = root;
                        merge_slots(child, roots[k].i, roots[k].j);
                        if (child.width > sh.hint_bound) continue;
                        dfs_optimal(sh, memo, child);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }
        out.width = sh.best.load(std::memory_order_relaxed);
        out.merges = sh.best_merges;
    };

    run(hint ? *hint : INT_MAX);
    // A hint below the true width can mask the optimum; redo unrestricted.
    if (hint && out.width > *hint + 1) run(INT_MAX);
    return out;
}

bool dfs_decide(int n, int c, std::unordered_set<std::string>& failed, const BitState& st,
                std::vector<std::pair<int, int>>& found) {
    if (std::popcount(st.alive) == 1) {
        found = st.merges;
        return true;
    }
    std::string key = canonical_key(st, n);
    if (failed.count(key)) return false;
    for (const Cand& cand : candidates(st)) {
        BitState child = st;
        merge_slots(child, cand.i, cand.j);
        if (child.width > c) continue;
        if (dfs_decide(n, c, failed, child, found)) return true;
    }
    failed.insert(std::move(key));
    return false;
}

std::optional<CompSolve> solve_component_decide(const Trigraph& comp, int c) {
    CompSolve out;
    BitState root = make_root(comp, out.ids);
    if (root.width > c) return std::nullopt;
    if (out.ids.size() <= 1) return out;
    std::unordered_set<std::string> failed;
    if (!dfs_decide(static_cast<int>(out.ids.size()), c, failed, root, out.merges))
        return std::nullopt;
    out.width = c;  // only the sequence matters here
    return out;
}

// Splices a solved component into the assembled sequence; records the live
// id its final product ends up with.
void append_component(ContractionSequence& seq, Vertex& fresh, std::vector<Vertex>& finals,
                      const CompSolve& cs) {
    std::vector<Vertex> live = cs.ids;
    for (auto [i, j] : cs.merges) {
        seq.steps.push_back({live[i], live[j], fresh});
        live[i] = fresh++;
    }
    finals.push_back(cs.merges.empty() ? cs.ids.at(0) : live[cs.merges.back().first]);
}

// Contract the leftover single-vertex products pairwise; they are isolated,
// so this adds no red edges.
void merge_finals(ContractionSequence& seq, Vertex& fresh, std::vector<Vertex>& finals) {
    std::sort(finals.begin(), finals.end());
    for (std::size_t k = 1; k < finals.size(); ++k) {
        seq.steps.push_back({finals[0], finals[k], fresh});
        finals[0] = fresh++;
    }
}

}  // namespace

SolveResult optimal_sequence(const Trigraph& g, std::optional<int> upper_hint,
                             const SolverConfig& cfg) {
    int cap = std::min(cfg.vertex_cap, 64);
    if (g.vertex_count() > cap)
        throw CapExceededError("optimal_sequence: " + std::to_string(g.vertex_count()) +
                               " vertices exceed the cap of " + std::to_string(cap));
    SolveResult res;
    res.sequence.initial = g;
    res.optimal = true;
    if (g.vertex_count() == 0) return res;

    Vertex fresh = res.sequence.fresh_base();
    std::vector<Vertex> finals;
    for (const auto& compvec : connected_components(g)) {
        Trigraph comp = g.induced({compvec.begin(), compvec.end()});
        CompSolve cs = solve_component_optimal(comp, upper_hint, cfg);
        res.width = std::max(res.width, cs.width);
        append_component(res.sequence, fresh, finals, cs);
    }
    merge_finals(res.sequence, fresh, finals);
    return res;
}

std::optional<ContractionSequence> decide_width_at_most(const Trigraph& g, int c,
                                                        const SolverConfig& cfg) {
    int cap = std::min(cfg.decide_vertex_cap, 64);
    if (g.vertex_count() > cap)
        throw CapExceededError("decide_width_at_most: " + std::to_string(g.vertex_count()) +
                               " vertices exceed the cap of " + std::to_string(cap));
    if (c < 0) return std::nullopt;
    ContractionSequence seq{g, {}};
    if (g.vertex_count() == 0) return seq;

    Vertex fresh = seq.fresh_base();
    std::vector<Vertex> finals;
    for (const auto& compvec : connected_components(g)) {
        Trigraph comp = g.induced({compvec.begin(), compvec.end()});
        std::optional<CompSolve> cs = solve_component_decide(comp, c);
        if (!cs) return std::nullopt;
        append_component(seq, fresh, finals, *cs);
    }
    merge_finals(seq, fresh, finals);
    return seq;
}

ContractionSequence tree_sequence(const Trigraph& t, Vertex root) {
    if (!t.has_vertex(root)) throw Error("tree_sequence: root is not a vertex of the tree");
    if (!is_connected(t) || !is_forest(t)) throw Error("tree_sequence: input is not a tree");
    ContractionSequence c{t, {}};
    if (t.vertex_count() <= 1) return c;

    std::map<Vertex, std::vector<Vertex>> children;
    std::map<Vertex, int> height;
    std::vector<Vertex> order{root};
    std::set<Vertex> seen{root};
    for (std::size_t k = 0; k < order.size(); ++k) {
        Vertex v = order[k];
        for (const auto& [w, _] : t.neighbors(v)) {
            if (seen.insert(w).second) {
                children[v].push_back(w);
                order.push_back(w);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int h = 0;
        for (Vertex ch : children[*it]) h = std::max(h, height.at(ch) + 1);
        height[*it] = h;
    }
    for (auto& [v, ch] : children) {
        std::sort(ch.begin(), ch.end(), [&](Vertex x, Vertex y) {
            return std::tie(height.at(y), x) < std::tie(height.at(x), y);
        });
    }

    std::map<Vertex, Vertex> live;
    for (Vertex v : order) live[v] = v;
    Vertex fresh = c.fresh_base();
    // Collapse the whole subtree under v into v. Collapsed children arrive
    // one at a time and merge pairwise right away, so v never sees more than
    // a pending product plus the child being collapsed: red degree <= 2.
    std::function<void(Vertex)> collapse = [&](Vertex v) {
        Vertex pending = -1;
        for (Vertex ch : children[v]) {
            collapse(ch);
            Vertex lc = live.at(ch);
            if (pending == -1) {
                pending = lc;
            } else {
                c.steps.push_back({pending, lc, fresh});
                pending = fresh++;
            }
        }
        if (pending != -1) {
            c.steps.push_back({pending, live.at(v), fresh});
            live[v] = fresh++;
        }
    };
    collapse(root);
    return c;
}

SolveResult greedy_sequence(const Trigraph& g) {
    SolveResult res;
    res.sequence.initial = g;
    ReplayState st(g);
    while (st.current().vertex_count() > 1) {
        const Trigraph& cur = st.current();
        std::map<Vertex, int> rd;
        for (const auto& [v, nbrs] : cur.adjacency()) {
            int r = 0;
            for (const auto& [_, color] : nbrs)
                if (color == EdgeColor::Red) ++r;
            rd[v] = r;
        }
        std::set<std::pair<Vertex, Vertex>> cands;
        {
            auto vs = cur.vertices();
            cands.insert({vs[0], vs[1]});  // progress even with no edges at all
        }
        for (const auto& [u, nbrs] : cur.adjacency()) {
            for (const auto& [v, _] : nbrs)
                if (v > u) cands.insert({u, v});
            for (auto it1 = nbrs.begin(); it1 != nbrs.end(); ++it1)
                for (auto it2 = std::next(it1); it2 != nbrs.end(); ++it2)
                    cands.insert({it1->first, it2->first});
        }

        bool have = false;
        std::tuple<int, int, Vertex, Vertex> best_key;
        std::pair<Vertex, Vertex> best_pair;
        for (auto [u, v] : cands) {
            const auto& nu = cur.neighbors(u);
            const auto& nv = cur.neighbors(v);
            int prod_red = 0, created = 0, local_max = 0;
            auto consider = [&](Vertex x) {
                auto iu = nu.find(x);
                auto iv = nv.find(x);
                bool black_both = iu != nu.end() && iv != nv.end() &&
                                  iu->second == EdgeColor::Black && iv->second == EdgeColor::Black;
                bool was_red = (iu != nu.end() && iu->second == EdgeColor::Red) ||
                               (iv != nv.end() && iv->second == EdgeColor::Red);
                int x_new = rd.at(x) - (iu != nu.end() && iu->second == EdgeColor::Red ? 1 : 0) -
                            (iv != nv.end() && iv->second == EdgeColor::Red ? 1 : 0);
                if (!black_both) {
                    ++prod_red;
                    ++x_new;
                    if (!was_red) ++created;
                }
                local_max = std::max(local_max, x_new);
            };
            for (const auto& [x, _] : nu)
                if (x != v) consider(x);
            for (const auto& [x, _] : nv)
                if (x != u && !nu.count(x)) consider(x);
            local_max = std::max(local_max, prod_red);
            std::tuple<int, int, Vertex, Vertex> key{local_max, created, u, v};
            if (!have || key < best_key) {
                have = true;
                best_key = key;
                best_pair = {u, v};
            }
        }
        ContractionStep step{best_pair.first, best_pair.second, st.next_fresh()};
        st.apply(step);
        res.sequence.steps.push_back(step);
    }
    res.width = st.width();
    res.optimal = res.width == 0;
    return res;
}

}  // namespace tww
