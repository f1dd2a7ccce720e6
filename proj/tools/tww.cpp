#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tww/contraction.hpp"
#include "tww/errors.hpp"
#include "tww/exact.hpp"
#include "tww/fen.hpp"
#include "tww/generators.hpp"
#include "tww/graph.hpp"
#include "tww/io.hpp"
#include "tww/vi.hpp"

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

tww::Trigraph load_graph(const std::string& path) {
    if (path == "-") return tww::read_graph(std::cin);
    return tww::read_graph_file(path);
}

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

Json instance_stats(const tww::Trigraph& g) {
    return Json{{"n", g.vertex_count()},
                {"m_black", g.black_edge_count()},
                {"m_red", g.red_edge_count()}};
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    for (const auto& [k, v] : j.items()) {
        if (v.is_object())
            flatten(v, prefix + k + ".", out);
        else if (v.is_string())
            out.emplace_back(prefix + k, v.get<std::string>());
        else
            out.emplace_back(prefix + k, v.dump());
    }
}

void emit_report(const Json& j, bool as_csv) {
    if (!as_csv) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(j, "", cells);
    for (std::size_t i = 0; i < cells.size(); ++i)
        std::cout << cells[i].first << (i + 1 < cells.size() ? ',' : '\n');
    for (std::size_t i = 0; i < cells.size(); ++i)
        std::cout << cells[i].second << (i + 1 < cells.size() ? ',' : '\n');
}

struct VerifySummary {
    int width = 0;
    int steps = 0;
    bool complete = false;
    bool oracle_each_step = false;
};

// Replays from scratch; the reported width never comes from solver output.
// On small graphs every intermediate trigraph is cross-checked against the
// partition oracle, on large ones only the final state.
VerifySummary verified_replay(const tww::ContractionSequence& c) {
    VerifySummary out;
    out.steps = static_cast<int>(c.steps.size());
    out.complete = c.full();
    out.oracle_each_step = c.initial.vertex_count() <= 64;
    tww::ReplayState st(c.initial);
    for (const auto& s : c.steps) {
        st.apply(s);
        if (out.oracle_each_step)
            TWW_CHECK(tww::trigraph_from_bags(c.initial, st.bags()) == st.current(),
                      "replay deviates from its bag structure");
    }
    if (!out.oracle_each_step)
        TWW_CHECK(tww::trigraph_from_bags(c.initial, st.bags()) == st.current(),
                  "replay deviates from its bag structure");
    out.width = st.width();
    return out;
}

// Shared tail of the solver commands: independent verification, optional
// sequence file (written, read back, compared), then the report.
void finish_run(const std::string& command, const tww::Trigraph& g,
                const tww::SolveResult& r, const Json& extra,
                const std::string& emit_path, bool as_csv, Clock::time_point t0) {
    VerifySummary v = verified_replay(r.sequence);
    TWW_CHECK(v.width == r.width, "replayed width disagrees with the solver");
    TWW_CHECK(v.complete, "solver returned a partial sequence");
    if (!emit_path.empty()) {
        tww::write_sequence_file(emit_path, r.sequence);
        tww::ContractionSequence back = tww::read_sequence_file(emit_path, r.sequence.initial);
        TWW_CHECK(back.steps == r.sequence.steps, "emitted sequence does not round-trip");
    }
    Json j{{"schema", 1}, {"command", command}};
    j.update(instance_stats(g));
    j["width"] = v.width;
    j["optimal"] = r.optimal;
    j["steps"] = v.steps;
    j["verified"] = true;
    j.update(extra);
    if (!emit_path.empty()) j["sequence_file"] = emit_path;
    j["wall_ms"] = ms_since(t0);
    emit_report(j, as_csv);
}

struct Options {
    std::string graph;
    std::string sequence;
    std::string emit_sequence;
    std::string emit_kernel;
    std::string out_file;
    bool csv = false;
    int jobs = 1;
    int p_cap = 12;
    std::int64_t threshold = -1;  // < 0: default keep threshold
    int k = -1;                   // < 0: derive from the graph
    // generator parameters
    std::string family;
    int n = 10;
    int q = 5;
    int gen_k = 1;
    int core_n = 2;
    int comp_n = 1;
    int copies = 3;
    unsigned seed = 1;
};

void cmd_exact(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    tww::SolverConfig cfg = tww::default_solver_config();
    cfg.jobs = o.jobs;
    tww::SolveResult r = tww::optimal_sequence(g, {}, cfg);
    finish_run("exact", g, r, Json::object(), o.emit_sequence, o.csv, t0);
}

void cmd_fen(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    tww::FenReport rep;
    tww::SolveResult r = tww::fen_approximate(g, &rep);
    Json extra{{"k", rep.k},
               {"ladder_ran", rep.ladder_ran},
               {"solved_early", rep.solved_early},
               {"passthrough", rep.passthrough},
               {"kernel_vertices", rep.kernel_vertices},
               {"kernel_width", rep.kernel_width},
               {"kernel_optimal", rep.kernel_optimal},
               {"size_bound_ok", rep.size_bound_ok}};
    finish_run("fen", g, r, extra, o.emit_sequence, o.csv, t0);
}

void cmd_vi(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    tww::SolverConfig cfg = tww::default_solver_config();
    cfg.jobs = o.jobs;
    std::optional<std::uint64_t> threshold;
    if (o.threshold >= 0) threshold = static_cast<std::uint64_t>(o.threshold);
    tww::ViReport rep;
    tww::SolveResult r = tww::vi_approximate(g, threshold, o.p_cap, &rep, cfg);
    Json extra{{"p", rep.p},
               {"classes", rep.class_count},
               {"removed", rep.removed_components},
               {"threshold", rep.threshold},
               {"width_gprime", rep.width_reduced},
               {"width_final", rep.width_final},
               {"guarantee", rep.two_approx ? "2-approx" : "best-effort"}};
    finish_run("vi", g, r, extra, o.emit_sequence, o.csv, t0);
}

void cmd_sqrt(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    tww::SqrtBoundReport rep;
    tww::SolveResult r = tww::sqrt_bound_sequence(g, &rep);
    if (rep.ceiling_exceeded)
        std::cerr << "warning: width " << rep.total_width
                  << " exceeds the advisory ceiling " << rep.soft_ceiling << '\n';
    Json extra{{"k", rep.k},
               {"beta_edges", rep.beta_edges},
               {"partial_width", rep.partial_width},
               {"finish_width", rep.finish_width},
               {"finish_optimal", rep.finish_optimal},
               {"soft_ceiling", rep.soft_ceiling},
               {"ceiling_exceeded", rep.ceiling_exceeded}};
    finish_run("sqrt", g, r, extra, o.emit_sequence, o.csv, t0);
}

void cmd_kernelize(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    int k = o.k >= 0 ? o.k : static_cast<int>(tww::feedback_edge_set(g).size());
    tww::TidyPreprocessResult pre = tww::tidy_preprocess(g, k);

    Json j{{"schema", 1}, {"command", "kernelize"}};
    j.update(instance_stats(g));
    j["k"] = k;
    j["ladder_ran"] = pre.ladder_ran;

    tww::Trigraph kernel;
    switch (pre.outcome) {
        case tww::TidyOutcome::Solved: {
            VerifySummary v = verified_replay(pre.solved->sequence);
            TWW_CHECK(v.complete && v.width <= 2, "early solve did not verify");
            j["outcome"] = "solved";
            j["width"] = v.width;
            j["kernel_vertices"] = 0;
            j["size_bound_ok"] = true;
            break;
        }
        case tww::TidyOutcome::Passthrough: {
            VerifySummary v = verified_replay(pre.prefix);
            TWW_CHECK(v.width <= 2, "preprocessing exceeded width 2");
            kernel = pre.reduced;
            j["outcome"] = "passthrough";
            j["prefix_width"] = v.width;
            j["kernel_vertices"] = kernel.vertex_count();
            j["size_bound_ok"] = true;
            break;
        }
        case tww::TidyOutcome::Tidy: {
            tww::KernelResult kr = tww::shorten_paths_kernel(*pre.tidy, k);
            VerifySummary vp = verified_replay(pre.prefix);
            VerifySummary vs = verified_replay(kr.shorten_steps);
            TWW_CHECK(vp.width <= 2 && vs.width <= 2, "preprocessing exceeded width 2");
            kernel = kr.kernel;
            j["outcome"] = "tidy";
            j["prefix_width"] = std::max(vp.width, vs.width);
            j["kernel_vertices"] = kr.kernel_vertices;
            j["size_bound_ok"] = kr.size_bound_ok && pre.h_bound_ok && pre.p_bound_ok;
            break;
        }
    }
    if (!o.emit_kernel.empty() && pre.outcome != tww::TidyOutcome::Solved) {
        tww::write_graph_file(o.emit_kernel, tww::compacted(kernel));
        j["kernel_file"] = o.emit_kernel;
    }
    j["wall_ms"] = ms_since(t0);
    emit_report(j, o.csv);
}

int cmd_verify(const Options& o) {
    Clock::time_point t0 = Clock::now();
    tww::Trigraph g = load_graph(o.graph);
    tww::ContractionSequence c = tww::read_sequence_file(o.sequence, g);

    Json j{{"schema", 1}, {"command", "verify"}};
    j.update(instance_stats(g));
    bool per_step = g.vertex_count() <= 64;
    tww::ReplayState st(g);
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        try {
            st.apply(c.steps[i]);
            if (per_step)
                TWW_CHECK(tww::trigraph_from_bags(g, st.bags()) == st.current(),
                          "replay deviates from its bag structure");
        } catch (const tww::Error& e) {
            j["valid"] = false;
            j["failed_step"] = i;
            j["line"] = i + 2;  // header line, then one line per step
            j["error"] = e.what();
            j["wall_ms"] = ms_since(t0);
            emit_report(j, o.csv);
            return 2;
        }
    }
    j["valid"] = true;
    j["width"] = st.width();
    j["steps"] = static_cast<int>(c.steps.size());
    j["complete"] = c.full();
    j["bag_oracle_each_step"] = per_step;
    j["wall_ms"] = ms_since(t0);
    emit_report(j, o.csv);
    return 0;
}

void cmd_generate(const Options& o) {
    tww::Trigraph g;
    if (o.family == "figure1")
        g = tww::figure1();
    else if (o.family == "paley")
        g = tww::paley(o.q);
    else if (o.family == "cycle")
        g = tww::cycle_graph(o.n);
    else if (o.family == "tree")
        g = tww::random_tree(o.n, o.seed);
    else if (o.family == "tree_plus_k")
        g = tww::tree_plus_k(o.n, o.gen_k, o.seed);
    else if (o.family == "replicated_components")
        g = tww::replicated_components({o.core_n, o.comp_n, o.copies, o.seed});
    else
        throw tww::ParseError("unknown family: " + o.family);
    if (o.out_file.empty())
        tww::write_graph(std::cout, g);
    else
        tww::write_graph_file(o.out_file, g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twin-width sequences: exact search, reductions, verification"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool with_emit) {
        sub->add_option("graph", o.graph, "graph file, or - for stdin")->required();
        sub->add_flag("--csv", o.csv, "report as CSV instead of JSON");
        if (with_emit)
            sub->add_option("--emit-sequence", o.emit_sequence,
                            "write the verified sequence to this file");
    };

    CLI::App* exact = app.add_subcommand("exact", "optimal sequence by branch and bound");
    add_common(exact, true);
    exact->add_option("--jobs", o.jobs, "solver worker threads")->check(CLI::PositiveNumber);

    CLI::App* fen = app.add_subcommand(
        "fen", "near-optimal sequence via feedback-edge kernelization");
    add_common(fen, true);

    CLI::App* vi = app.add_subcommand(
        "vi", "sequence via vertex-integrity reduction, width at most doubled");
    add_common(vi, true);
    vi->add_option("--threshold", o.threshold, "copies kept per twin-block class")
        ->check(CLI::NonNegativeNumber);
    vi->add_option("--p-cap", o.p_cap, "give up above this vertex integrity")
        ->check(CLI::PositiveNumber);
    vi->add_option("--jobs", o.jobs, "solver worker threads")->check(CLI::PositiveNumber);

    CLI::App* sqrt_cmd = app.add_subcommand(
        "sqrt", "constructive bound driven by the feedback edge number");
    add_common(sqrt_cmd, true);

    CLI::App* kern = app.add_subcommand("kernelize",
                                        "reduce to a small equivalent trigraph");
    add_common(kern, false);
    kern->add_option("-k,--k", o.k, "feedback edge number, derived when omitted");
    kern->add_option("--emit-kernel", o.emit_kernel, "write the kernel graph here");

    CLI::App* verify = app.add_subcommand("verify", "replay a sequence file");
    add_common(verify, false);
    verify->add_option("sequence", o.sequence, "sequence file")->required();

    CLI::App* gen = app.add_subcommand("generate", "write an instance graph");
    gen->add_option("family", o.family, "instance family")
        ->required()
        ->check(CLI::IsMember({"figure1", "paley", "cycle", "tree", "tree_plus_k",
                               "replicated_components"}));
    gen->add_option("--n", o.n, "vertex count");
    gen->add_option("--q", o.q, "field size for paley");
    gen->add_option("--k", o.gen_k, "extra edges for tree_plus_k");
    gen->add_option("--core", o.core_n, "core size for replicated_components");
    gen->add_option("--comp", o.comp_n, "copy size for replicated_components");
    gen->add_option("--copies", o.copies, "copy count for replicated_components");
    gen->add_option("--seed", o.seed, "generator seed");
    gen->add_option("-o,--output", o.out_file, "output file, stdout when omitted");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed()) cmd_exact(o);
        if (fen->parsed()) cmd_fen(o);
        if (vi->parsed()) cmd_vi(o);
        if (sqrt_cmd->parsed()) cmd_sqrt(o);
        if (kern->parsed()) cmd_kernelize(o);
        if (verify->parsed()) return cmd_verify(o);
        if (gen->parsed()) cmd_generate(o);
        return 0;
    } catch (const tww::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const tww::CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const tww::CheckError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tww::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
