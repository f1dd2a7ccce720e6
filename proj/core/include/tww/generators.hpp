#pragma once

#include "tww/graph.hpp"

namespace tww {

// The 6-vertex demo graph used across docs and tests; twin-width 2.
Trigraph figure1();

// Paley graph on GF(q), q = p^e a prime power with q ≡ 1 (mod 4), e ≤ 3.
// Vertices are field elements, edges join pairs whose difference is a
// nonzero square. (q-1)/2-regular; twin-width (q-1)/2.
Trigraph paley(int q);

Trigraph cycle_graph(int n);

// Uniform attachment tree: vertex i picks a parent among 0..i-1.
Trigraph random_tree(int n, unsigned seed);

// random_tree plus k extra edges; the result has feedback edge number k.
Trigraph tree_plus_k(int n, int k, unsigned seed);

// Clique core plus `copies` identical path components, every copy attached
// to the core by the same seeded pattern (at least one attachment edge).
// All copies are exchangeable, which makes the instances highly reducible.
struct ReplicatedSpec {
    int core_n = 1;
    int comp_n = 1;
    int copies = 1;
    unsigned seed = 0;
};
Trigraph replicated_components(const ReplicatedSpec& spec);

}  // namespace tww
