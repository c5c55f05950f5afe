#include <doctest.h>

#include "oracles.hpp"

#include <rainbow/constructions.hpp>
#include <rainbow/solver.hpp>

using namespace rainbow;
namespace cn = rainbow::constructions;

namespace {

auto all_matchings(const FamilySystem & sys) -> bool
{
    auto rep = validate_instance(sys);
    return rep.valid() && std::all_of(rep.is_matching.begin(), rep.is_matching.end(), [](bool b) { return b; });
}

auto sizes(const FamilySystem & sys) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (const auto & f : sys.families)
        out.push_back(f.size());
    return out;
}

} // namespace

TEST_CASE("standard(k)")
{
    for (int k = 2; k <= 7; ++k) {
        auto sys = cn::standard(k);
        CHECK(all_matchings(sys));
        CHECK(sys.m() == k);
        CHECK(sizes(sys) == std::vector<std::size_t>(k, k));
        CHECK(max_rainbow(sys).optimal_size == k - 1);
        if (k <= 5)
            CHECK(oracle::rainbow_number(sys) == k - 1);
    }
    CHECK_THROWS_AS((void)cn::standard(1), std::invalid_argument);
}

TEST_CASE("standard(k) plus one shared fresh edge has a full rainbow matching")
{
    for (int k = 2; k <= 5; ++k)
        CHECK(has_full_rainbow(pad_families(cn::standard(k), 1)));
}

TEST_CASE("wanless(m)")
{
    auto w2 = cn::wanless(2);
    CHECK(all_matchings(w2));
    CHECK(w2.universe.side_sizes == std::vector<int>{5, 5});
    CHECK(sizes(w2) == std::vector<std::size_t>{4, 4, 4, 5});
    CHECK(oracle::rainbow_number(w2) == 3);
    CHECK_FALSE(has_full_rainbow(w2));

    auto w3 = cn::wanless(3);
    CHECK(all_matchings(w3));
    CHECK(sizes(w3) == std::vector<std::size_t>{6, 6, 6, 6, 6, 7});
    CHECK(oracle_max_rainbow(w3).optimal_size == 5);
    CHECK_THROWS_AS((void)cn::wanless(1), std::invalid_argument);
}

TEST_CASE("boolean_cube(r)")
{
    for (int r = 2; r <= 4; ++r) {
        auto sys = cn::boolean_cube(r);
        CHECK(all_matchings(sys));
        CHECK(sys.r() == r);
        CHECK(sys.m() == (1 << (r - 1)));
        CHECK(sizes(sys) == std::vector<std::size_t>(sys.m(), 2));
        CHECK(max_rainbow(sys).optimal_size == 1);
        CHECK(oracle::rainbow_number(sys) == 1);
        // edges of distinct families always share a coordinate
        for (int a = 0; a < sys.m(); ++a)
            for (int b = a + 1; b < sys.m(); ++b)
                for (const auto & e : sys.families[a])
                    for (const auto & f : sys.families[b])
                        CHECK(oracle::meets(e, f));
    }
}

TEST_CASE("g_upper(r)")
{
    auto g3 = cn::g_upper(3);
    CHECK(all_matchings(g3));
    CHECK(g3.m() == 4);
    CHECK(sizes(g3) == std::vector<std::size_t>(4, 4));
    CHECK(oracle_max_rainbow(g3).optimal_size == 2);
    CHECK(max_rainbow(g3).optimal_size == 2);

    auto g4 = cn::g_upper(4);
    CHECK(all_matchings(g4));
    CHECK(g4.m() == 8);
    CHECK(sizes(g4) == std::vector<std::size_t>(8, 8));
    CHECK(max_rainbow(g4).optimal_size == 4);
    CHECK_THROWS_AS((void)cn::g_upper(2), std::invalid_argument);
}

TEST_CASE("absz(k, q)")
{
    auto a22 = cn::absz(2, 2);
    CHECK(validate_instance(a22).valid());
    CHECK(a22.m() == 3);
    CHECK(sizes(a22) == std::vector<std::size_t>(3, 4));
    CHECK(oracle::rainbow_number(a22) == 2);
    CHECK(oracle_max_rainbow(a22).optimal_size == 2);

    for (auto [k, q] : {std::pair{3, 2}, std::pair{2, 3}}) {
        auto sys = cn::absz(k, q);
        CHECK(sys.r() == q);
        CHECK(sys.m() == k + 1);
        CHECK(sizes(sys) == std::vector<std::size_t>(k + 1, k * q));
        CHECK(max_rainbow(sys).optimal_size == k);
        // the last family is a matching and each of its edges meets every row edge of its copy
        CHECK(is_matching(sys.families.back()));
        for (const auto & diag : sys.families.back())
            for (int i = 0; i < k; ++i) {
                int met = 0;
                for (const auto & row : sys.families[i])
                    met += oracle::meets(diag, row);
                // rows of another copy are disjoint; rows of its own copy are each met, k times repeated
                CHECK((met == 0 || met == k * q));
            }
    }
    // measured degree: every vertex has multiset degree k + 1
    CHECK(max_degree(cn::absz(2, 3)) == 3);
    CHECK_THROWS_AS((void)cn::absz(0, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)cn::absz(2, 1), std::invalid_argument);
}

TEST_CASE("drisko_sharp(k)")
{
    for (int k = 2; k <= 5; ++k) {
        auto sys = cn::drisko_sharp(k);
        CHECK(all_matchings(sys));
        CHECK(sys.m() == 2 * k - 2);
        CHECK(sizes(sys) == std::vector<std::size_t>(2 * k - 2, k));
        CHECK(max_rainbow(sys).optimal_size == k - 1);
        if (k <= 3)
            CHECK(oracle::rainbow_number(sys) == k - 1);
    }
}

TEST_CASE("fano_multi(d)")
{
    auto f2 = cn::fano_multi(2);
    CHECK(f2.r() == 3);
    CHECK(f2.universe.side_sizes == std::vector<int>{2, 2, 2});
    CHECK(f2.total_edges() == 4);
    CHECK(is_simple(f2));
    CHECK(max_matching(f2).size == 1);
    CHECK(oracle::matching_number(union_edges(f2)) == 1);

    for (int d : {2, 4, 6}) {
        auto sys = cn::fano_multi(d);
        CHECK(sys.m() == 1);
        CHECK(sys.total_edges() == static_cast<std::size_t>(2 * d));
        for (const auto & side : vertex_degrees(sys))
            for (int deg : side)
                CHECK(deg == d);
        CHECK(max_matching(sys).size == 1);
    }
    // d = 4: nu = 1 < ceil(3 * 2 / 4) = 2
    CHECK(max_matching(cn::fano_multi(4)).size < (3 * 2 + 3) / 4);
    CHECK_THROWS_AS((void)cn::fano_multi(3), std::invalid_argument);
    CHECK_THROWS_AS((void)cn::fano_multi(0), std::invalid_argument);
}
