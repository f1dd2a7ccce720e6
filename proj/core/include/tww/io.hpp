#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "tww/contraction.hpp"
#include "tww/graph.hpp"

namespace tww {

// Graph text format.  Header `n m_black m_red` (or `n m`, all black), then
// one `u v` line per black edge followed by one per red edge. Ids are
// 0-based and must be < n. `#` starts a comment, anywhere on a line.
Trigraph read_graph(std::istream& in);
Trigraph read_graph_file(const std::string& path);

// Writers require dense ids 0..n-1; compact sparse graphs first.
void write_graph(std::ostream& out, const Trigraph& g);
void write_graph_file(const std::string& path, const Trigraph& g);

// Copy of g with vertices renumbered to 0..n-1 in increasing id order.
// old_to_new, when non-null, receives the renumbering.
Trigraph compacted(const Trigraph& g, std::map<Vertex, Vertex>* old_to_new = nullptr);

// Sequence text format.  Header `n`, then one `u v -> w` line per step.
// n must equal |V(initial)|; each w must follow the fresh-id numbering.
ContractionSequence read_sequence(std::istream& in, const Trigraph& initial);
ContractionSequence read_sequence_file(const std::string& path, const Trigraph& initial);

void write_sequence(std::ostream& out, const ContractionSequence& c);
void write_sequence_file(const std::string& path, const ContractionSequence& c);

}  // namespace tww
