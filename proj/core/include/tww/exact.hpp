#pragma once

#include <optional>

#include "tww/contraction.hpp"
#include "tww/graph.hpp"

namespace tww {

struct SolverConfig {
    int vertex_cap = 16;         // optimal_sequence refuses larger inputs
    int decide_vertex_cap = 24;  // decide_width_at_most prunes harder, so more room
    int jobs = 1;                // worker threads for the optimal search
};

// Defaults, with TWW_SOLVER_CAP (when set) replacing both caps.
SolverConfig default_solver_config();

struct SolveResult {
    int width = 0;
    ContractionSequence sequence;
    bool optimal = false;
};

// Exact twin-width by branch and bound over contraction pairs, memoized on
// the canonical bag partition. Accepts trigraph inputs; the width then counts
// the initial red degrees. upper_hint prunes against a claimed upper bound;
// a wrong hint costs a second search but never a wrong answer. Disconnected
// inputs are solved per component (the width is the max, the final products
// are merged red-free at the end). Throws CapExceededError above the cap.
// With jobs = 1 the returned sequence is deterministic; with more workers
// only the width is.
SolveResult optimal_sequence(const Trigraph& g, std::optional<int> upper_hint = {},
                             const SolverConfig& cfg = default_solver_config());

// Width-capped search: a sequence of width <= c, or nothing when tww(g) > c.
std::optional<ContractionSequence> decide_width_at_most(
    const Trigraph& g, int c, const SolverConfig& cfg = default_solver_config());

// Full sequence on a tree in which the root takes part only in the last step.
// Children collapse tallest-subtree first; sibling products merge pairwise as
// they appear, so no vertex ever carries more than two red edges. On an
// all-black tree the width is at most 2 (red inputs are allowed and replayed
// by the same order; bounds are then the caller's business).
ContractionSequence tree_sequence(const Trigraph& t, Vertex root);

// Deterministic greedy: among pairs at distance <= 2 (plus a fallback pair so
// progress is always possible) contract the one whose local red degrees stay
// lowest. No quality guarantee; serves as incumbent seed and as the finisher
// for graphs beyond the exact caps.
SolveResult greedy_sequence(const Trigraph& g);

}  // namespace tww
