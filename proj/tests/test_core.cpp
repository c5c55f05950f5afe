#include <doctest.h>

#include "oracles.hpp"
#include "random_systems.hpp"

#include <rainbow/constructions.hpp>
#include <rainbow/core.hpp>
#include <rainbow/io.hpp>
#include <rainbow/solver.hpp>

using namespace rainbow;

TEST_CASE("validate_instance on a generator output")
{
    auto rep = validate_instance(constructions::standard(3));
    CHECK(rep.valid());
    CHECK(rep.is_matching == std::vector<bool>{true, true, true});
}

TEST_CASE("validate_instance flags coordinates out of range and wrong arity")
{
    FamilySystem sys{{{2, 2}}, {{{0, 2}}}};
    auto rep = validate_instance(sys);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].kind == Violation::Kind::out_of_range);
    CHECK(rep.violations[0].family == 0);
    CHECK(rep.violations[0].edge_index == 0);

    FamilySystem bad_arity{{{2, 2}}, {{{0, 1, 1}}}};
    auto rep2 = validate_instance(bad_arity);
    REQUIRE(rep2.violations.size() == 1);
    CHECK(rep2.violations[0].kind == Violation::Kind::wrong_arity);
    CHECK_THROWS_AS(require_valid(bad_arity), std::invalid_argument);
}

TEST_CASE("validate_instance flags a non-matching family")
{
    FamilySystem sys{{{2, 2}}, {{{0, 0}, {0, 1}}}};
    auto rep = validate_instance(sys);
    CHECK(rep.valid());
    CHECK(rep.is_matching == std::vector<bool>{false});
}

TEST_CASE("edges_disjoint")
{
    CHECK(edges_disjoint({0, 0}, {1, 1}));
    CHECK_FALSE(edges_disjoint({0, 0}, {0, 1}));
    CHECK_FALSE(edges_disjoint({3, 1, 4}, {3, 1, 4}));
    CHECK_THROWS_AS((void)edges_disjoint({0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("edges_disjoint is symmetric and irreflexive")
{
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 2000; ++trial) {
        Edge e{static_cast<int>(gen() % 3), static_cast<int>(gen() % 3), static_cast<int>(gen() % 3)};
        Edge f{static_cast<int>(gen() % 3), static_cast<int>(gen() % 3), static_cast<int>(gen() % 3)};
        CHECK(edges_disjoint(e, f) == edges_disjoint(f, e));
        CHECK(edges_disjoint(e, f) == ! oracle::meets(e, f));
        CHECK_FALSE(edges_disjoint(e, e));
    }
}

TEST_CASE("validate_selection")
{
    auto s3 = constructions::standard(3);
    CHECK(validate_selection(s3, {}));
    // F1 takes (a1,b1); F3 takes (a2,b3), its second edge
    CHECK(validate_selection(s3, {{{0, 0}, {2, 1}}}));
    CHECK(oracle::meets(s3.families[0][0], s3.families[2][1]) == false);
    CHECK_FALSE(validate_selection(s3, {{{0, 0}, {0, 1}}}));
    CHECK_FALSE(validate_selection(s3, {{{0, 0}, {1, 0}}}));
    CHECK_FALSE(validate_selection(s3, {{{0, 7}}}));
    CHECK_FALSE(validate_selection(s3, {{{5, 0}}}));
}

TEST_CASE("relabel with identity permutations is structurally equal")
{
    auto sys = constructions::standard(4);
    std::vector<std::vector<int>> id_sides{{0, 1, 2, 3}, {0, 1, 2, 3}};
    CHECK(relabel(sys, id_sides, {0, 1, 2, 3}) == sys);
    CHECK_THROWS_AS((void)relabel(sys, {{0, 1, 2, 3}}, {0, 1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)relabel(sys, id_sides, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)relabel(sys, id_sides, {0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("swapping both side labelings of standard(2) keeps the optimum")
{
    auto sys = constructions::standard(2);
    auto swapped = relabel(sys, {{1, 0}, {1, 0}}, {0, 1});
    CHECK(validate_instance(swapped).valid());
    CHECK(max_rainbow(swapped).optimal_size == 1);
    CHECK(max_rainbow(sys).optimal_size == 1);
}

TEST_CASE("relabel invariance of the optimum")
{
    std::mt19937_64 gen(2024);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const int r = 2 + static_cast<int>(seed % 2);
        auto sys = testing_support::random_system(seed, r, 1 + static_cast<int>(seed % 5), 4, 4);
        std::vector<std::vector<int>> sides;
        for (int j = 0; j < r; ++j)
            sides.push_back(testing_support::random_permutation(gen, 4));
        auto fam = testing_support::random_permutation(gen, sys.m());
        auto moved = relabel(sys, sides, fam);
        CHECK(validate_instance(moved).valid());
        CHECK(moved.total_edges() == sys.total_edges());
        CHECK(max_rainbow(moved).optimal_size == max_rainbow(sys).optimal_size);
        for (int i = 0; i < sys.m(); ++i)
            CHECK(moved.families[fam[i]].size() == sys.families[i].size());
    }
}

TEST_CASE("pad_families")
{
    auto s2 = constructions::standard(2);
    CHECK(pad_families(s2, 0) == s2);
    auto padded = pad_families(s2, 1);
    CHECK(validate_instance(padded).valid());
    CHECK(padded.universe.side_sizes == std::vector<int>{3, 3});
    for (const auto & f : padded.families)
        CHECK(f.size() == 3);
    auto res = max_rainbow(padded);
    CHECK(res.optimal_size == 2);
    CHECK(res.full);
    CHECK_THROWS_AS((void)pad_families(s2, -1), std::invalid_argument);
}

TEST_CASE("pad monotonicity: opt(pad(sys,p)) lies in [opt, opt + p]")
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto sys = testing_support::random_system(seed + 500, 2 + static_cast<int>(seed % 2), 4, 3, 3);
        const int base = oracle::rainbow_number(sys);
        for (int p : {1, 2}) {
            const int padded = max_rainbow(pad_families(sys, p)).optimal_size;
            CHECK(padded >= base);
            CHECK(padded <= base + p);
        }
    }
}

TEST_CASE("to_line_graph examples")
{
    FamilySystem one{{{2, 2}}, {{{0, 0}, {1, 1}}}};
    auto g1 = to_line_graph(one);
    CHECK(g1.vertex_count == 2);
    CHECK(g1.classes.size() == 1);
    CHECK(g1.adjacency[0].empty());
    CHECK(g1.adjacency[1].empty());

    auto g2 = to_line_graph(constructions::standard(2));
    CHECK(g2.vertex_count == 4);
    REQUIRE(g2.classes.size() == 2);
    CHECK(g2.classes[0].size() == 2);
    CHECK(g2.classes[1].size() == 2);
    CHECK(oracle::independent_transversal(g2) == 1);

    FamilySystem repeated{{{2, 2}}, {{{0, 1}, {0, 1}}}};
    auto g3 = to_line_graph(repeated);
    CHECK(g3.vertex_count == 2);
    CHECK(g3.adjacency[0] == std::vector<int>{1});
    CHECK(g3.adjacency[1] == std::vector<int>{0});
}

TEST_CASE("to_line_graph round trip on small instances")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto sys = testing_support::random_system(seed + 9000, 2 + static_cast<int>(seed % 2), 1 + static_cast<int>(seed % 4), 3, 3);
        if (sys.total_edges() > 12)
            continue;
        auto g = to_line_graph(sys);
        CHECK(g.vertex_count == static_cast<int>(sys.total_edges()));
        CHECK(static_cast<int>(g.classes.size()) == sys.m());
        for (int v = 0; v < g.vertex_count; ++v) {
            const auto & o = g.origin[v];
            for (int u : g.adjacency[v]) {
                const auto & q = g.origin[u];
                CHECK(oracle::meets(sys.families[o.family][o.edge_index], sys.families[q.family][q.edge_index]));
            }
        }
        CHECK(oracle::independent_transversal(g) == oracle::rainbow_number(sys));
    }
}

TEST_CASE("degrees, simplicity and union")
{
    auto fano = constructions::fano_multi(4);
    CHECK(max_degree(fano) == 4);
    for (const auto & side : vertex_degrees(fano))
        for (int d : side)
            CHECK(d == 4);
    CHECK_FALSE(is_simple(fano));
    CHECK(is_simple(constructions::fano_multi(2)));
    CHECK(union_edges(constructions::standard(3)).size() == 9);
    CHECK(to_string(Edge{1, 2, 3}) == "(1,2,3)");
}

TEST_CASE("instance JSON round trip")
{
    for (auto sys : {constructions::standard(3), constructions::absz(2, 3), constructions::fano_multi(2)}) {
        auto text = serialize_instance(sys);
        CHECK(parse_instance(text) == sys);
    }
    auto empty_family = FamilySystem{{{2, 2}}, {{}, {{1, 1}}}};
    CHECK(parse_instance(serialize_instance(empty_family)) == empty_family);
}

TEST_CASE("instance parsing is strict")
{
    CHECK_THROWS_AS((void)parse_instance("{bad"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/2","r":2,"side_sizes":[1,1],"families":[]})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[1,1],"families":[],"extra":1})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[1,1]})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":3,"side_sizes":[1,1],"families":[]})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[1,1],"families":[[[0,1]]]})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[2,2],"families":[[[0]]]})"), ParseError);
    CHECK_THROWS_AS((void)parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[2,2],"families":[[["0",1]]]})"), ParseError);
    auto ok = parse_instance(R"({"format":"rainbow-instance/1","r":2,"side_sizes":[2,2],"families":[[[0,1],[1,0]]]})");
    CHECK(ok.m() == 1);
    CHECK(ok.families[0][1] == Edge{1, 0});
}
