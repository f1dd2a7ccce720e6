#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <random>

#include "helpers.hpp"
#include "tww/exact.hpp"
#include "tww/generators.hpp"

using namespace tww;
using test::complete_n;
using test::cycle_n;
using test::example6;
using test::oracle_tww;
using test::path_n;
using test::random_graph;
using test::random_trigraph;
using test::star_n;

namespace {

void check_full_and_width(const SolveResult& res) {
    CHECK(res.sequence.full());
    CHECK(replay_width(res.sequence).width() == res.width);
}

}  // namespace

TEST_CASE("optimal width on pinned instances") {
    SolveResult six = optimal_sequence(example6());
    CHECK(six.width == 2);
    CHECK(six.optimal);
    check_full_and_width(six);
    CHECK(figure1() == example6());

    for (int n = 2; n <= 8; ++n) {
        SolveResult kn = optimal_sequence(complete_n(n));
        CHECK(kn.width == 0);
        check_full_and_width(kn);
    }

    CHECK(optimal_sequence(paley(5)).width == 2);
    CHECK(optimal_sequence(paley(9)).width == 4);
    CHECK(optimal_sequence(path_n(4)).width == 1);
    CHECK(optimal_sequence(cycle_n(5)).width == 2);

    SolveResult one = optimal_sequence(complete_n(1));
    CHECK(one.width == 0);
    CHECK(one.sequence.steps.empty());
    CHECK(one.optimal);
    CHECK(optimal_sequence(Trigraph{}).width == 0);
}

TEST_CASE("paley graphs are strongly regular") {
    for (int q : {5, 9, 13, 25}) {
        Trigraph g = paley(q);
        int degree = (q - 1) / 2;
        for (Vertex v : g.vertices()) CHECK(g.degree(v).total == degree);
        // common-neighbor counts pin the field arithmetic
        int lambda = (q - 5) / 4, mu = (q - 1) / 4;
        for (int u = 0; u < q; ++u) {
            for (int v = u + 1; v < q; ++v) {
                int common = 0;
                for (const auto& [x, _] : g.neighbors(u))
                    if (g.edge(v, x) && x != v) ++common;
                CHECK(common == (g.edge(u, v) ? lambda : mu));
            }
        }
    }
    CHECK_THROWS_AS(paley(6), Error);    // not a prime power
    CHECK_THROWS_AS(paley(7), Error);    // 3 mod 4
    CHECK_THROWS_AS(paley(8), Error);    // 0 mod 4
    CHECK_THROWS_AS(paley(2401), Error); // 7^4: exponent too large
}

TEST_CASE("optimal agrees with the reference solver") {
    std::mt19937 rng(3377);
    for (int iter = 0; iter < 36; ++iter) {
        int n = 4 + static_cast<int>(rng() % 5);
        double p = 0.25 + 0.25 * static_cast<double>(iter % 3);
        Trigraph g = iter % 6 == 5 ? random_trigraph(rng, n, p, 0.3) : random_graph(rng, n, p);
        SolveResult res = optimal_sequence(g);
        CHECK(res.width == oracle_tww(g));
        check_full_and_width(res);
    }
    // trigraph inputs count their initial red degrees
    Trigraph redp3 = Trigraph::with_vertices(3);
    redp3.add_edge(0, 1, EdgeColor::Red);
    redp3.add_edge(1, 2, EdgeColor::Red);
    CHECK(optimal_sequence(redp3).width == 2);
    CHECK(oracle_tww(redp3) == 2);
    Trigraph redk2 = Trigraph::with_vertices(2);
    redk2.add_edge(0, 1, EdgeColor::Red);
    CHECK(optimal_sequence(redk2).width == 1);
}

TEST_CASE("optimal handles disconnected graphs") {
    // C5 + K3 + isolated vertex: width is the max over components
    Trigraph g = Trigraph::with_vertices(9);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5, EdgeColor::Black);
    g.add_edge(5, 6, EdgeColor::Black);
    g.add_edge(6, 7, EdgeColor::Black);
    g.add_edge(5, 7, EdgeColor::Black);
    SolveResult res = optimal_sequence(g);
    CHECK(res.width == 2);
    check_full_and_width(res);
    CHECK(res.width == oracle_tww(g));
}

TEST_CASE("decide finds capped sequences or proves there are none") {
    CHECK(decide_width_at_most(random_tree(20, 5), 2).has_value());
    CHECK(!decide_width_at_most(cycle_n(5), 1).has_value());
    CHECK(decide_width_at_most(complete_n(4), 0).has_value());
    CHECK(!decide_width_at_most(example6(), 1).has_value());

    auto seq = decide_width_at_most(example6(), 2);
    REQUIRE(seq.has_value());
    CHECK(seq->full());
    CHECK(replay_width(*seq).width() <= 2);

    // red degrees of the input trigraph already count
    Trigraph redp3 = Trigraph::with_vertices(3);
    redp3.add_edge(0, 1, EdgeColor::Red);
    redp3.add_edge(1, 2, EdgeColor::Red);
    CHECK(!decide_width_at_most(redp3, 1).has_value());
    CHECK(decide_width_at_most(redp3, 2).has_value());

    std::mt19937 rng(2024);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 4 + static_cast<int>(rng() % 7);
        Trigraph g = random_graph(rng, n, 0.4);
        int w = optimal_sequence(g).width;
        auto yes = decide_width_at_most(g, w);
        REQUIRE(yes.has_value());
        CHECK(yes->full());
        CHECK(replay_width(*yes).width() <= w);
        if (w > 0) CHECK(!decide_width_at_most(g, w - 1).has_value());
    }
}

TEST_CASE("twin-width is monotone under induced subgraphs") {
    std::mt19937 rng(606);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 5 + static_cast<int>(rng() % 5);
        Trigraph g = random_graph(rng, n, 0.5);
        std::set<Vertex> sub;
        for (Vertex v : g.vertices())
            if (rng() % 2) sub.insert(v);
        if (sub.empty()) continue;
        CHECK(optimal_sequence(g.induced(sub)).width <= optimal_sequence(g).width);
    }
}

TEST_CASE("tree_sequence collapses trees at width at most 2") {
    Trigraph single = Trigraph::with_vertices(1);
    CHECK(tree_sequence(single, 0).steps.empty());

    auto root_only_in_last = [](const ContractionSequence& c, Vertex root) {
        for (std::size_t i = 0; i + 1 < c.steps.size(); ++i) {
            CHECK(c.steps[i].u != root);
            CHECK(c.steps[i].v != root);
        }
        if (!c.steps.empty()) {
            const auto& last = c.steps.back();
            CHECK((last.u == root || last.v == root));
        }
    };

    ContractionSequence star = tree_sequence(star_n(5), 0);
    CHECK(star.full());
    CHECK(replay_width(star).width() <= 2);
    root_only_in_last(star, 0);

    for (unsigned seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
        int n = 2 + static_cast<int>(seed * 19 % 199);
        Trigraph t = random_tree(n, seed);
        Vertex root = static_cast<Vertex>(seed % static_cast<unsigned>(n));
        ContractionSequence c = tree_sequence(t, root);
        CHECK(c.full());
        CHECK(replay_width(c).width() <= 2);
        root_only_in_last(c, root);
        // deterministic
        CHECK(tree_sequence(t, root).steps == c.steps);
    }

    // paths contract inward from the far end
    ContractionSequence p5 = tree_sequence(path_n(5), 0);
    CHECK(replay_width(p5).width() <= 1);

    // red trees are accepted; the caller owns any width bound
    Trigraph redpath = Trigraph::with_vertices(3);
    redpath.add_edge(0, 1, EdgeColor::Red);
    redpath.add_edge(1, 2, EdgeColor::Black);
    CHECK(tree_sequence(redpath, 0).full());

    CHECK_THROWS_AS(tree_sequence(cycle_n(4), 0), Error);
    CHECK_THROWS_AS(tree_sequence(path_n(3), 7), Error);
    Trigraph forest = Trigraph::with_vertices(4);
    forest.add_edge(0, 1, EdgeColor::Black);
    CHECK_THROWS_AS(tree_sequence(forest, 0), Error);  // disconnected
}

TEST_CASE("vertex caps and the environment override") {
    CHECK_THROWS_AS(optimal_sequence(random_tree(17, 1)), CapExceededError);
    CHECK_THROWS_AS(decide_width_at_most(random_tree(25, 1), 2), CapExceededError);
    // a generous hand-passed cap is honored
    SolverConfig wide;
    wide.decide_vertex_cap = 30;
    CHECK(decide_width_at_most(random_tree(25, 1), 2, wide).has_value());

    ::setenv("TWW_SOLVER_CAP", "10", 1);
    CHECK(default_solver_config().vertex_cap == 10);
    CHECK(default_solver_config().decide_vertex_cap == 10);
    CHECK_THROWS_AS(optimal_sequence(random_tree(11, 2)), CapExceededError);
    CHECK_THROWS_AS(decide_width_at_most(random_tree(11, 2), 2), CapExceededError);
    ::setenv("TWW_SOLVER_CAP", "nope", 1);
    CHECK_THROWS_AS(default_solver_config(), Error);
    ::unsetenv("TWW_SOLVER_CAP");
    CHECK(default_solver_config().vertex_cap == 16);
}

TEST_CASE("upper hints never change the answer") {
    CHECK(optimal_sequence(cycle_n(5), 2).width == 2);
    CHECK(optimal_sequence(cycle_n(5), 0).width == 2);  // wrong hint, rerun kicks in
    CHECK(optimal_sequence(cycle_n(5), 4).width == 2);
    CHECK(optimal_sequence(example6(), 1).width == 2);
    std::mt19937 rng(8088);
    for (int iter = 0; iter < 15; ++iter) {
        Trigraph g = random_graph(rng, 7 + static_cast<int>(rng() % 3), 0.45);
        int w = optimal_sequence(g).width;
        for (int hint : {0, 1, w, w + 3}) CHECK(optimal_sequence(g, hint).width == w);
    }
}

TEST_CASE("parallel search reports the same widths") {
    SolverConfig par;
    par.jobs = 4;
    CHECK(optimal_sequence(example6(), {}, par).width == 2);
    CHECK(optimal_sequence(paley(9), {}, par).width == 4);
    std::mt19937 rng(7117);
    for (int iter = 0; iter < 10; ++iter) {
        Trigraph g = random_graph(rng, 10, 0.5);
        SolveResult seq1 = optimal_sequence(g);
        SolveResult seq4 = optimal_sequence(g, {}, par);
        CHECK(seq1.width == seq4.width);
        check_full_and_width(seq4);
    }
}

TEST_CASE("greedy produces valid sequences quickly") {
    SolveResult k8 = greedy_sequence(complete_n(8));
    CHECK(k8.width == 0);
    CHECK(k8.optimal);
    check_full_and_width(k8);

    SolveResult empty = greedy_sequence(Trigraph::with_vertices(6));
    CHECK(empty.width == 0);
    check_full_and_width(empty);

    std::mt19937 rng(515151);
    for (int iter = 0; iter < 12; ++iter) {
        Trigraph g = random_graph(rng, 9, 0.4);
        SolveResult greedy = greedy_sequence(g);
        check_full_and_width(greedy);
        CHECK(greedy.width >= optimal_sequence(g).width);
        CHECK(greedy_sequence(g).sequence.steps == greedy.sequence.steps);
    }

    // big input: just verify it runs and verifies
    SolveResult big = greedy_sequence(tree_plus_k(300, 5, 99));
    check_full_and_width(big);
}
