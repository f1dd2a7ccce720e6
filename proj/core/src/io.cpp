#include "tww/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace tww {

namespace {

// Comment-stripped whitespace tokens, with 1-based source lines for messages.
struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.push_back({tok, lineno});
    }
    return out;
}

class TokenCursor {
public:
    explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    bool done() const { return pos_ == toks_.size(); }

    const Token& next(const char* what) {
        if (done()) throw ParseError(std::string("unexpected end of input, expected ") + what);
        return toks_[pos_++];
    }

    int next_int(const char* what) {
        const Token& t = next(what);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(t.text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.text.size() || v < 0 || v > std::numeric_limits<int>::max())
            throw ParseError("line " + std::to_string(t.line) + ": expected " + what +
                             ", got '" + t.text + "'");
        return static_cast<int>(v);
    }

    void expect_done() {
        if (!done())
            throw ParseError("line " + std::to_string(toks_[pos_].line) +
                             ": trailing content '" + toks_[pos_].text + "'");
    }

    int line() const {
        return pos_ < toks_.size() ? toks_[pos_].line : (toks_.empty() ? 0 : toks_.back().line);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Trigraph read_graph(std::istream& in) {
    TokenCursor cur(tokenize(in));
    int n = cur.next_int("vertex count");
    int header_line = cur.line();
    int m_black = cur.next_int("edge count");
    // Three-field header when a red count follows on the same header line.
    int m_red = 0;
    if (!cur.done() && cur.line() == header_line) m_red = cur.next_int("red edge count");

    Trigraph g = Trigraph::with_vertices(n);
    auto read_edges = [&](int count, EdgeColor color, const char* what) {
        for (int i = 0; i < count; ++i) {
            int u = cur.next_int(what);
            int v = cur.next_int(what);
            if (u >= n || v >= n)
                throw ParseError("edge " + std::to_string(u) + " " + std::to_string(v) +
                                 " out of range for n=" + std::to_string(n));
            if (u == v) throw ParseError("self loop at vertex " + std::to_string(u));
            if (g.edge(u, v)) throw ParseError("duplicate edge " + std::to_string(u) + " " +
                                               std::to_string(v));
            g.add_edge(u, v, color);
        }
    };
    read_edges(m_black, EdgeColor::Black, "black edge endpoint");
    read_edges(m_red, EdgeColor::Red, "red edge endpoint");
    cur.expect_done();
    return g;
}

Trigraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Trigraph& g) {
    int n = g.vertex_count();
    TWW_CHECK(g.max_vertex_id() + 1 == n, "graph writer needs dense vertex ids");
    out << n << ' ' << g.black_edge_count() << ' ' << g.red_edge_count() << '\n';
    for (EdgeColor want : {EdgeColor::Black, EdgeColor::Red})
        for (const auto& [u, v, color] : g.edges())
            if (color == want) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const Trigraph& g) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_graph(out, g);
    if (!out) throw Error("failed writing: " + path);
}

Trigraph compacted(const Trigraph& g, std::map<Vertex, Vertex>* old_to_new) {
    std::map<Vertex, Vertex> ren;
    Vertex next = 0;
    for (const auto& [v, _] : g.adjacency()) ren.emplace(v, next++);
    Trigraph out = Trigraph::with_vertices(g.vertex_count());
    for (const auto& [u, v, color] : g.edges()) out.add_edge(ren.at(u), ren.at(v), color);
    if (old_to_new) *old_to_new = std::move(ren);
    return out;
}

ContractionSequence read_sequence(std::istream& in, const Trigraph& initial) {
    TokenCursor cur(tokenize(in));
    int n = cur.next_int("vertex count");
    if (n != initial.vertex_count())
        throw ParseError("sequence header n=" + std::to_string(n) + " does not match the graph (" +
                         std::to_string(initial.vertex_count()) + " vertices)");
    ContractionSequence c{initial, {}};
    Vertex fresh = c.fresh_base();
    while (!cur.done()) {
        int u = cur.next_int("step endpoint");
        int v = cur.next_int("step endpoint");
        const Token& arrow = cur.next("'->'");
        if (arrow.text != "->")
            throw ParseError("line " + std::to_string(arrow.line) + ": expected '->', got '" +
                             arrow.text + "'");
        int w = cur.next_int("product id");
        if (w != fresh)
            throw ParseError("step " + std::to_string(c.steps.size()) + ": product id " +
                             std::to_string(w) + " breaks the fresh-id numbering (expected " +
                             std::to_string(fresh) + ")");
        c.steps.push_back({u, v, w});
        ++fresh;
    }
    return c;
}

ContractionSequence read_sequence_file(const std::string& path, const Trigraph& initial) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open sequence file: " + path);
    return read_sequence(in, initial);
}

void write_sequence(std::ostream& out, const ContractionSequence& c) {
    TWW_CHECK(c.initial.max_vertex_id() + 1 == c.initial.vertex_count(),
              "sequence writer needs dense vertex ids");
    out << c.initial.vertex_count() << '\n';
    for (const auto& s : c.steps) out << s.u << ' ' << s.v << " -> " << s.w << '\n';
}

void write_sequence_file(const std::string& path, const ContractionSequence& c) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_sequence(out, c);
    if (!out) throw Error("failed writing: " + path);
}

}  // namespace tww
