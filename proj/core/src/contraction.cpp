#include "tww/contraction.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>

namespace tww {

int WidthProfile::width() const {
    int best = 0;
    for (int v : per_trigraph) best = std::max(best, v);
    return best;
}

namespace {

void contract_in_place(Trigraph& g, Vertex u, Vertex v, Vertex w) {
    if (u == v) throw Error("contract: endpoints coincide");
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw Error("contract: unknown or dead vertex " + std::to_string(!g.has_vertex(u) ? u : v));
    if (g.has_vertex(w)) throw Error("contract: product id " + std::to_string(w) + " already in use");
    // x -> edge colors toward u and v, gathered before the removals
    std::map<Vertex, std::array<std::optional<EdgeColor>, 2>> around;
    for (const auto& [x, c] : g.neighbors(u))
        if (x != v) around[x][0] = c;
    for (const auto& [x, c] : g.neighbors(v))
        if (x != u) around[x][1] = c;
    g.remove_vertex(u);
    g.remove_vertex(v);
    g.add_vertex(w);
    for (const auto& [x, cc] : around) {
        bool both_black = cc[0] && cc[1] &&
                          *cc[0] == EdgeColor::Black && *cc[1] == EdgeColor::Black;
        g.add_edge(w, x, both_black ? EdgeColor::Black : EdgeColor::Red);
    }
}

}  // namespace

Trigraph contract(const Trigraph& g, Vertex u, Vertex v, Vertex w) {
    Trigraph out = g;
    contract_in_place(out, u, v, w);
    return out;
}

ReplayState::ReplayState(Trigraph initial) : g_(std::move(initial)) {
    next_fresh_ = g_.max_vertex_id() + 1;
    for (const auto& [v, _] : g_.adjacency()) {
        bags_[v] = {v};
        origin_live_[v] = v;
    }
    profile_.per_trigraph.push_back(g_.max_red_degree());
}

void ReplayState::apply(const ContractionStep& s) {
    TWW_CHECK(s.w == next_fresh_,
              "step " + std::to_string(steps_applied_) + " product id " + std::to_string(s.w) +
                  " breaks the fresh-id numbering (expected " + std::to_string(next_fresh_) + ")");
    contract_in_place(g_, s.u, s.v, s.w);
    std::set<Vertex> merged = std::move(bags_.at(s.u));
    const std::set<Vertex>& bv = bags_.at(s.v);
    merged.insert(bv.begin(), bv.end());
    bags_.erase(s.u);
    bags_.erase(s.v);
    for (Vertex o : merged) origin_live_[o] = s.w;
    bags_.emplace(s.w, std::move(merged));
    ++next_fresh_;
    ++steps_applied_;
    profile_.per_trigraph.push_back(g_.max_red_degree());
}

Vertex ReplayState::live_of(Vertex original) const {
    auto it = origin_live_.find(original);
    if (it == origin_live_.end())
        throw Error("live_of: vertex " + std::to_string(original) + " is not an original vertex");
    return it->second;
}

ReplayResult replay(const ContractionSequence& c) {
    ReplayState st(c.initial);
    ReplayResult out;
    out.trigraphs.push_back(st.current());
    out.bag_history.push_back(st.bags());
    for (const auto& s : c.steps) {
        st.apply(s);
        out.trigraphs.push_back(st.current());
        out.bag_history.push_back(st.bags());
    }
    out.profile = st.profile();
    return out;
}

WidthProfile replay_width(const ContractionSequence& c) {
    ReplayState st(c.initial);
    for (const auto& s : c.steps) st.apply(s);
    return st.profile();
}

Trigraph trigraph_from_bags(const Trigraph& initial, const BagMap& bags) {
    std::set<Vertex> covered;
    for (const auto& [live, bag] : bags) {
        if (bag.empty()) throw Error("trigraph_from_bags: empty bag at " + std::to_string(live));
        for (Vertex o : bag) {
            if (!initial.has_vertex(o))
                throw Error("trigraph_from_bags: bag member " + std::to_string(o) + " not in initial");
            if (!covered.insert(o).second)
                throw Error("trigraph_from_bags: vertex " + std::to_string(o) + " in two bags");
        }
    }
    if (static_cast<int>(covered.size()) != initial.vertex_count())
        throw Error("trigraph_from_bags: bags do not cover the initial vertex set");

    Trigraph out;
    for (const auto& [live, _] : bags) out.add_vertex(live);
    for (auto ip = bags.begin(); ip != bags.end(); ++ip) {
        for (auto iq = std::next(ip); iq != bags.end(); ++iq) {
            int pairs = static_cast<int>(ip->second.size() * iq->second.size());
            int black = 0;
            bool red = false;
            for (Vertex a : ip->second) {
                for (Vertex b : iq->second) {
                    auto e = initial.edge(a, b);
                    if (!e) continue;
                    if (*e == EdgeColor::Black) ++black; else red = true;
                }
            }
            if (red || (black > 0 && black < pairs))
                out.add_edge(ip->first, iq->first, EdgeColor::Red);
            else if (black == pairs)
                out.add_edge(ip->first, iq->first, EdgeColor::Black);
        }
    }
    return out;
}

ContractionSequence restriction(const ContractionSequence& c, const Trigraph& h) {
    if (!is_induced_subtrigraph(h, c.initial))
        throw Error("restriction: subgraph is not induced in the sequence's initial trigraph");
    ContractionSequence out{h, {}};
    Vertex fresh = out.fresh_base();
    // c-live vertex -> h-live vertex, kept only while the bag meets V(h)
    std::map<Vertex, Vertex> part;
    for (const auto& [v, _] : h.adjacency()) part.emplace(v, v);
    for (const auto& s : c.steps) {
        auto iu = part.find(s.u);
        auto iv = part.find(s.v);
        if (iu != part.end() && iv != part.end()) {
            out.steps.push_back({iu->second, iv->second, fresh});
            part.erase(iu);
            part.erase(s.v);
            part.emplace(s.w, fresh);
            ++fresh;
        } else if (iu != part.end()) {
            Vertex t = iu->second;
            part.erase(iu);
            part.emplace(s.w, t);
        } else if (iv != part.end()) {
            Vertex t = iv->second;
            part.erase(iv);
            part.emplace(s.w, t);
        }
    }
    return out;
}

ContractionSequence extension(const ContractionSequence& c0, const Trigraph& g) {
    if (!is_induced_subtrigraph(c0.initial, g))
        throw Error("extension: sequence's initial trigraph is not induced in the host");
    ContractionSequence out{g, {}};
    Vertex fresh = out.fresh_base();
    std::map<Vertex, Vertex> live;  // c0-live -> host-live
    for (const auto& [v, _] : c0.initial.adjacency()) live.emplace(v, v);
    for (const auto& s : c0.steps) {
        out.steps.push_back({live.at(s.u), live.at(s.v), fresh});
        live.erase(s.u);
        live.erase(s.v);
        live.emplace(s.w, fresh);
        ++fresh;
    }
    return out;
}

bool progressive_width_check(const ContractionSequence& c, const ProgressiveWidth& pw) {
    WidthProfile p = replay_width(c);
    int len = static_cast<int>(p.per_trigraph.size());
    if (pw.i < 1 || pw.i > len)
        throw Error("progressive width: split index " + std::to_string(pw.i) + " out of range");
    for (int j = 0; j < len; ++j) {
        int bound = (j + 1 < pw.i) ? pw.a : pw.b;
        if (p.per_trigraph[j] > bound) return false;
    }
    return true;
}

ContractionSequence concatenate(const ContractionSequence& c1,
                                const ContractionSequence& c2,
                                const std::map<Vertex, Vertex>& map_c2) {
    ReplayState st(c1.initial);
    for (const auto& s : c1.steps) st.apply(s);
    const Trigraph& fin = st.current();

    if (fin.vertex_count() != c2.initial.vertex_count() ||
        static_cast<int>(map_c2.size()) != c2.initial.vertex_count())
        throw Error("concatenate: vertex counts do not line up");
    std::set<Vertex> image;
    for (const auto& [a, b] : map_c2) {
        if (!c2.initial.has_vertex(a) || !fin.has_vertex(b))
            throw Error("concatenate: map leaves the graphs");
        image.insert(b);
    }
    if (image.size() != map_c2.size()) throw Error("concatenate: map is not injective");
    if (fin.edge_count() != c2.initial.edge_count())
        throw Error("concatenate: trigraphs differ in edge count");
    for (const auto& [a, b, color] : c2.initial.edges()) {
        auto e = fin.edge(map_c2.at(a), map_c2.at(b));
        if (!e || *e != color)
            throw Error("concatenate: map does not preserve the trigraph");
    }

    ContractionSequence out = c1;
    Vertex fresh = st.next_fresh();
    std::map<Vertex, Vertex> live = map_c2;
    for (const auto& s : c2.steps) {
        out.steps.push_back({live.at(s.u), live.at(s.v), fresh});
        live.erase(s.u);
        live.erase(s.v);
        live.emplace(s.w, fresh);
        ++fresh;
    }
    return out;
}

ContractionSequence concatenate(const ContractionSequence& c1, const ContractionSequence& c2) {
    std::map<Vertex, Vertex> ident;
    for (const auto& [v, _] : c2.initial.adjacency()) ident.emplace(v, v);
    return concatenate(c1, c2, ident);
}

}  // namespace tww
