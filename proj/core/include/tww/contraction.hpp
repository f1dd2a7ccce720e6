#pragma once

#include <map>
#include <set>
#include <vector>

#include "tww/graph.hpp"

namespace tww {

// One contraction: u and v disappear, the product w takes their place.
struct ContractionStep {
    Vertex u = -1;
    Vertex v = -1;
    Vertex w = -1;
    bool operator==(const ContractionStep&) const = default;
};

// Live vertex -> set of original vertices it stands for. Bags of live
// vertices partition V(initial) at every step.
using BagMap = std::map<Vertex, std::set<Vertex>>;

// Entry 0 is the max red degree of the initial trigraph; entry i the max red
// degree after step i. Including the initial trigraph matters when sequences
// start from trigraphs that already carry red edges.
struct WidthProfile {
    std::vector<int> per_trigraph;
    int width() const;
};

// Bound pair (a ->_i b): trigraphs strictly before index i (1-based) stay
// within a, trigraphs from i on stay within b.
struct ProgressiveWidth {
    int a = 0;
    int i = 1;
    int b = 0;
};

struct ContractionSequence {
    Trigraph initial;
    std::vector<ContractionStep> steps;

    // Product ids count up from here; equals |V(initial)| when ids are dense.
    Vertex fresh_base() const { return initial.max_vertex_id() + 1; }
    bool full() const {
        return static_cast<int>(steps.size()) == initial.vertex_count() - 1;
    }
};

// Single contraction on a value; the rest of g is untouched. w must be a
// fresh id. Product edges: black only where both u and v had black edges,
// nothing where neither had an edge, red everywhere else (including every
// previously red attachment).
Trigraph contract(const Trigraph& g, Vertex u, Vertex v, Vertex w);

// In-place replay. Tracks the current trigraph, the bag partition, the width
// profile, and where each original vertex currently lives. Enforces the
// fresh-id convention (products are numbered fresh_base, fresh_base+1, ...).
class ReplayState {
public:
    explicit ReplayState(Trigraph initial);

    void apply(const ContractionStep& s);

    const Trigraph& current() const { return g_; }
    const BagMap& bags() const { return bags_; }
    const WidthProfile& profile() const { return profile_; }
    int width() const { return profile_.width(); }
    int steps_applied() const { return steps_applied_; }
    Vertex next_fresh() const { return next_fresh_; }

    // Live vertex whose bag contains the original vertex.
    Vertex live_of(Vertex original) const;

private:
    Trigraph g_;
    BagMap bags_;
    WidthProfile profile_;
    std::map<Vertex, Vertex> origin_live_;
    Vertex next_fresh_ = 0;
    int steps_applied_ = 0;
};

struct ReplayResult {
    std::vector<Trigraph> trigraphs;   // trigraphs[0] = initial
    std::vector<BagMap> bag_history;   // parallel to trigraphs
    WidthProfile profile;
};

ReplayResult replay(const ContractionSequence& c);

// Same validation as replay without retaining intermediate trigraphs.
WidthProfile replay_width(const ContractionSequence& c);

// Trigraph the bag partition induces on initial: black edge between two
// parts iff every cross pair is black in initial, no edge iff no cross pair
// is an edge, red otherwise. With singleton bags this returns initial.
// Serves as the ground-truth oracle for incremental contraction.
Trigraph trigraph_from_bags(const Trigraph& initial, const BagMap& bags);

// Steps of c that merge two distinct nonempty parts of V(h), replayed as a
// sequence on h. Steps touching at most one h-part contribute nothing.
ContractionSequence restriction(const ContractionSequence& c, const Trigraph& h);

// Replays c0's steps inside the host graph g (h = c0.initial must be induced
// in g). Restriction of the result back to c0.initial reproduces c0's merges.
ContractionSequence extension(const ContractionSequence& c0, const Trigraph& g);

bool progressive_width_check(const ContractionSequence& c, const ProgressiveWidth& pw);

// Appends c2 after c1. map_c2 sends V(c2.initial) onto the live vertices of
// c1's final trigraph; it must be a color-preserving bijection (verified).
ContractionSequence concatenate(const ContractionSequence& c1,
                                const ContractionSequence& c2,
                                const std::map<Vertex, Vertex>& map_c2);

// Convenience for the common case where c2.initial literally is c1's final
// trigraph (identity map).
ContractionSequence concatenate(const ContractionSequence& c1,
                                const ContractionSequence& c2);

}  // namespace tww
