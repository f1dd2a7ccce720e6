#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tww/contraction.hpp"
#include "tww/exact.hpp"
#include "tww/graph.hpp"

namespace tww {

// Result of collapsing dangling trees. Each maximal dangling tree of a cyclic
// component ends up as a single pendant vertex (a spike) on its attachment
// vertex; two spikes on the same host are merged as soon as they both exist,
// so no host ever sees more than two of them. Components that are entirely
// trees collapse to isolated vertices (not spikes: there is nothing to hang
// from). On an all-black input the partial sequence has width <= 2; red
// inputs are processed the same way but the bound is the caller's business.
struct DanglingContractionResult {
    ContractionSequence seq;  // partial, starts at the input
    Trigraph result;
    std::map<Vertex, Vertex> spike_of;  // host -> its single live spike

    std::set<Vertex> spikes() const;
};

DanglingContractionResult contract_dangling_trees(const Trigraph& g);

struct SqrtBoundReport {
    int k = 0;            // feedback edge number
    int beta_edges = 0;   // edges left after tree collapse + path shortening
    int partial_width = 0;
    int finish_width = 0;  // width of the sequence found for the blackened rest
    int total_width = 0;
    bool finish_optimal = false;
    int soft_ceiling = 0;  // ceil(sqrt(87k)) + 10; advisory only
    bool ceiling_exceeded = false;
};

// Constructive upper-bound sequence for a connected graph with feedback edge
// number k: collapse dangling trees to spikes, absorb spikes sitting on the
// interior of degree-2 paths, shorten those paths to three vertices, then
// finish the remaining small trigraph (at most 29k edges, checked) through
// its all-black version and follow_on_trigraph. Forests skip all of that and
// go through tree_sequence. The prefix up to the shrunken trigraph has width
// <= 2 (checked). The finisher is exact within the solver cap and greedy
// beyond it, so large k still yields a verified sequence.
SolveResult sqrt_bound_sequence(const Trigraph& g, SqrtBoundReport* report = nullptr);

// Replays a sequence computed for blackened(g_red) on g_red itself. Requires
// max red degree <= 2 and that every red edge has an endpoint of total degree
// <= 2 (validated); under those conditions the width grows by at most 4 over
// the all-black width (checked).
ContractionSequence follow_on_trigraph(const Trigraph& g_red,
                                       const ContractionSequence& c_black);

// Connected trigraph split into a part H and a set of dangling red paths.
// Path vertices have total degree <= 2 with red path edges; an H-vertex that
// touches a path has black degree 0 and exactly one path neighbor. Twin-width
// >= 2 is assumed by the caller, not checked here.
struct TidyHPGraph {
    Trigraph g;
    std::set<Vertex> h_vertices;
    std::vector<std::vector<Vertex>> paths;  // in path order
};

// Throws CheckError naming the violated condition.
void validate_tidy(const TidyHPGraph& t);

enum class TidyOutcome {
    Solved,       // width <= 2 sequence found outright
    Tidy,         // proper (H, paths) split produced
    Passthrough,  // no convertible degree-2 chains; reduced graph returned as is
};

struct TidyPreprocessResult {
    TidyOutcome outcome = TidyOutcome::Solved;
    std::optional<SolveResult> solved;  // Solved only
    std::optional<TidyHPGraph> tidy;    // Tidy only
    ContractionSequence prefix;         // input -> reduced, width <= 2
    Trigraph reduced;  // final trigraph of prefix (== tidy->g when Tidy)
    int k = 0;
    bool ladder_ran = false;  // the width-<=2 check was affordable
    bool h_bound_ok = true;   // |H| <= 112k
    bool p_bound_ok = true;   // |paths| <= 4k

    // Extends a sequence on `reduced` to one on the original input.
    ContractionSequence lift(const ContractionSequence& tail) const;
};

// Reduction of a connected graph toward a tidy (H, paths) trigraph: collapse
// dangling trees, then turn each long degree-2 chain of the remaining core
// into a dangling red path by pairwise contraction, keeping a one-vertex stub
// and a first/last product inside H at both chain ends so that core vertices
// never touch a red path directly. Chains shorter than 8 vertices move into H
// whole. Before any of that, if the reduced graph is small enough, a direct
// width-0/1/2 search settles the instance exactly (Solved). The 112k / 4k
// size targets are monitored, not enforced.
TidyPreprocessResult tidy_preprocess(const Trigraph& g, int k);

// Snapshot of a partially contracted tidy graph. h_prime / f_prime hold the
// live vertices whose bags sit entirely inside H respectively inside the
// first 2m levels of the paths (m = number of paths); level is the common
// distance-from-H of a bag, measured in tidy_graph.
struct GTidyState {
    Trigraph current;
    Trigraph tidy_graph;          // the graph the state descends from
    std::set<Vertex> h_in_tidy;   // H inside tidy_graph
    std::set<Vertex> f_in_tidy;   // path vertices within distance 2m of H
    std::set<Vertex> h_prime;
    std::set<Vertex> f_prime;
    std::map<Vertex, int> level;  // on f_prime
    std::set<Vertex> roots;       // level-1 vertices, one per f_prime tree
    BagMap bags;                  // live vertex -> originals of tidy_graph
};

// All structural conditions at once: membership (bag inside H, bag inside F,
// or singleton), at most one outside neighbor per h_prime vertex, level
// purity of bags, f_prime a forest of total degree <= 3, exactly one level-1
// root per tree, the degree-3 vertices of each tree forming a subtree that
// contains the root, and that subtree reaching at most level |bag(root)| - 1.
// Throws CheckError naming the first violated condition.
void validate_gtidy(const GTidyState& s);

struct CHResult {
    ContractionSequence seq;  // from the tidy graph to state.current
    GTidyState state;         // h_prime is a single vertex
};

// Plays a full contraction sequence of H inside the whole tidy graph. When
// both endpoints of an H-step still have a path attachment, their two pendant
// trees are merged first: repeatedly contract the two children of the deepest
// degree-3 vertex whose ancestors all have degree 3, then contract the two
// roots, then the H-pair itself. Requires every path to have at least
// 8 * |paths| vertices (the tree depths stay ahead of the merges only then).
// The state is validated after every H-step and the width never exceeds
// max(width(c_h) + 1, 4) (checked).
CHResult contract_given_CH(const TidyHPGraph& t, const ContractionSequence& c_h);

// Finishes a state whose h_prime is one vertex: contract it with the root of
// the one remaining tree, then zip each leftover red path onto the tree path
// connecting its two attachment points (shortening it first), and collapse
// what remains with tree_sequence. Width stays <= 4 (checked).
ContractionSequence contract_gtidy_tail(const GTidyState& s);

struct KernelResult {
    Trigraph kernel;
    ContractionSequence shorten_steps;  // tidy graph -> kernel, width <= 2
    TidyHPGraph tidy_after;  // kernel with its H / paths split (paths may be
                             // empty when everything was short)
    int kernel_vertices = 0;
    int k = -1;                 // as passed in; -1 when unknown
    bool size_bound_ok = true;  // |V| <= 128k^2 + 112k, when k known

    // Extends a sequence on `kernel` to one on the tidy graph.
    ContractionSequence lift(const ContractionSequence& tail) const;
};

// Moves paths shorter than 8m into H untouched (m = |paths|) and contracts
// every longer path down to exactly 8m vertices. The contractions form the
// returned partial sequence, so any sequence on the kernel extends to the
// tidy graph through lift().
KernelResult shorten_paths_kernel(const TidyHPGraph& t, int k = -1);

struct FenReport {
    int k = 0;
    bool ladder_ran = false;
    bool solved_early = false;
    bool passthrough = false;
    int kernel_vertices = 0;
    int kernel_width = 0;
    bool kernel_optimal = false;
    int total_width = 0;
    bool size_bound_ok = true;
    bool h_bound_ok = true;
    bool p_bound_ok = true;
};

// End-to-end approximation for a connected graph, parameterized by the
// feedback edge number k: either the direct width-<=2 branch settles the
// instance, or the tidy reduction plus path shortening produces a kernel of
// at most 128k^2 + 112k vertices which is solved exactly and lifted back.
// When the direct branch was affordable, the final width is within 1 of the
// kernel's optimum (checked); the returned sequence is always re-verified by
// replay. Throws CapExceededError when the kernel is larger than the exact
// solver cap.
SolveResult fen_approximate(const Trigraph& g, FenReport* report = nullptr);

}  // namespace tww
