#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tww/contraction.hpp"
#include "tww/exact.hpp"
#include "tww/graph.hpp"

namespace tww {

using BigInt = boost::multiprecision::cpp_int;

// Separator s plus the components of g - s. Every component together with s
// fits inside p vertices, and p is the least value for which any separator
// works.
struct ViDecomposition {
    int p = 0;
    std::set<Vertex> separator;
    // Sorted internally, ordered by smallest member; disjoint from separator.
    std::vector<std::vector<Vertex>> components;
};

// Least p up to cap, by branching on connected candidate sets inside an
// oversized component. Edge colors are ignored. Throws CapExceededError when
// every p <= cap fails.
ViDecomposition vertex_integrity(const Trigraph& g, int cap = 12);

// Components that look alike from the separator: an isomorphism onto the
// representative that preserves internal edges and separator attachment.
struct TwinBlockClass {
    int representative = 0;      // component index, also members.front()
    std::vector<int> members;    // ascending component indices
    // member component -> (representative vertex -> member vertex); the
    // representative maps to itself.
    std::map<int, std::map<Vertex, Vertex>> isomorphisms;
};

// Greedy grouping in component order; the stored isomorphism is the
// lexicographically first one, so the partition is deterministic.
std::vector<TwinBlockClass> twin_block_partition(const Trigraph& g,
                                                 const ViDecomposition& d);

// Keep-count per class that makes dropping the rest recoverable: 2^(7 p^3).
BigInt keep_threshold(int p);
// p + p^2 * keep_threshold(p) * 2^(2 p^2), the most vertices a reduced graph
// built with the default threshold can have.
BigInt reduced_size_bound(int p);
// keep_threshold clamped into uint64 range.
std::uint64_t saturated_keep_threshold(int p);

struct ReducedGraph {
    Trigraph g_prime;
    std::vector<int> kept;                     // component indices, ascending
    std::vector<std::pair<int, int>> removed;  // (component, class) indices
    std::uint64_t threshold = 0;
    bool threshold_is_default = false;  // threshold equals keep_threshold(p)
};

// Keeps the first `threshold` members of every class and drops the rest.
// A threshold below 2 disables removal entirely: a dropped component needs
// at least two kept siblings for the lift to have a merge witness. With the
// default threshold the size bound above is asserted.
ReducedGraph reduced_graph(const Trigraph& g, const ViDecomposition& d,
                           const std::vector<TwinBlockClass>& classes,
                           std::optional<std::uint64_t> threshold_override = {});

// Separator vertices with identical neighborhoods inside one component.
struct HEquivalenceClasses {
    std::set<Vertex> s_h;                   // separator vertices with a neighbor in h
    std::vector<std::set<Vertex>> classes;  // partition of s, by smallest member
};
HEquivalenceClasses h_equivalence(const Trigraph& g, const std::set<Vertex>& s,
                                  const std::vector<Vertex>& h);

// First 1-based trigraph index at which replaying c_prime's extension on
// g[V(c_prime.initial) + h] puts a red edge on a vertex of h; nullopt when
// that never happens. Before that index every live bag meeting s_h must stay
// inside s and inside one h_equivalence class (checked).
std::optional<int> critical_index(const Trigraph& g, const std::set<Vertex>& s,
                                  const ContractionSequence& c_prime,
                                  const std::vector<Vertex>& h);

// Last trigraph of the reduced sequence that is still red-free at the
// dropped component, plus two kept class members whose copies have landed in
// the same bags by then.
struct SafePoint {
    int delta = 1;              // 1-based trigraph index into the reduced sequence
    bool critical_end = false;  // no trigraph ever turns red at the component
    int first = -1;             // witness pair, component indices
    int second = -1;
    std::map<Vertex, Vertex> iota;       // dropped vertex -> `first` vertex
    std::map<Vertex, Vertex> merge_map;  // `first` vertex -> `second` vertex
};

// delta = critical_index - 1 (last index when critical never happens); the
// witness pair is the first merged one in member order. No merged pair means
// the keep threshold was too small for this instance: Error.
SafePoint find_safe_point(const Trigraph& g, const ViDecomposition& d,
                          const ReducedGraph& r,
                          const std::vector<TwinBlockClass>& classes,
                          const ContractionSequence& c_prime, int h_index);

// Grows c_prime into a sequence on g[V(c_prime.initial) + component h]:
// replay up to the safe point ignoring h, mirror the witness member's inner
// contractions on h, zip h's parts onto the bags holding the witness copy,
// then run the remaining steps. Needs progressive width (t ->_{delta+1} 2t)
// on c_prime and returns a sequence with the same guarantee (checked, as is
// the intermediate state right after the zip).
ContractionSequence one_new_H(const Trigraph& g, const ViDecomposition& d,
                              const ContractionSequence& c_prime, int h_index,
                              const SafePoint& safe, int t);

// Folds one_new_H over all removed components, most conservative safe point
// first, and returns a full sequence on all of g with replayed width at most
// twice c_prime's (checked).
ContractionSequence lift_sequence(const Trigraph& g, const ViDecomposition& d,
                                  const ReducedGraph& r,
                                  const std::vector<TwinBlockClass>& classes,
                                  const ContractionSequence& c_prime);

struct ViReport {
    int p = 0;
    int class_count = 0;
    int kept_components = 0;
    int removed_components = 0;
    int width_reduced = 0;  // exact width of the reduced graph
    int width_final = 0;
    std::uint64_t threshold = 0;
    bool threshold_is_default = false;
    bool two_approx = false;      // threshold large enough for the 2x guarantee
    bool solved_exactly = false;  // nothing removed and the solver proved optimality
};

// Decompose, group, reduce, solve the reduced graph exactly (hinted by
// 2^(p+1), a bound the reduced width never exceeds), then lift. Expects a
// connected all-black graph. Throws CapExceededError when the decomposition
// exceeds p_cap or the reduced graph exceeds the solver cap.
SolveResult vi_approximate(const Trigraph& g,
                           std::optional<std::uint64_t> threshold_override = {},
                           int p_cap = 12, ViReport* report = nullptr,
                           const SolverConfig& cfg = default_solver_config());

}  // namespace tww
