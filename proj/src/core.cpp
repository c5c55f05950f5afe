#include <rainbow/core.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rainbow {

auto Universe::total_vertices() const -> int
{
    return std::accumulate(side_sizes.begin(), side_sizes.end(), 0);
}

auto FamilySystem::total_edges() const -> std::size_t
{
    std::size_t total = 0;
    for (const auto & f : families)
        total += f.size();
    return total;
}

auto to_string(const Edge & e) -> std::string
{
    std::ostringstream out;
    out << '(';
    for (std::size_t j = 0; j < e.coords.size(); ++j)
        out << (j ? "," : "") << e.coords[j];
    out << ')';
    return out.str();
}

auto edges_disjoint(const Edge & e, const Edge & f) -> bool
{
    if (e.arity() != f.arity())
        throw std::invalid_argument("edges_disjoint: arity mismatch " + to_string(e) + " vs " + to_string(f));
    for (std::size_t j = 0; j < e.coords.size(); ++j)
        if (e.coords[j] == f.coords[j])
            return false;
    return true;
}

auto is_matching(const Family & family) -> bool
{
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b)
            if (family[a].arity() != family[b].arity() || ! edges_disjoint(family[a], family[b]))
                return false;
    return true;
}

auto validate_instance(const FamilySystem & sys) -> ValidationReport
{
    ValidationReport report;
    const int r = sys.r();
    if (r < 2)
        report.violations.push_back({Violation::Kind::bad_universe, -1, -1, "r must be at least 2, got " + std::to_string(r)});
    for (int j = 0; j < r; ++j)
        if (sys.universe.side_sizes[j] < 1)
            report.violations.push_back({Violation::Kind::bad_universe, -1, -1,
                "side " + std::to_string(j) + " has size " + std::to_string(sys.universe.side_sizes[j])});

    for (int i = 0; i < sys.m(); ++i) {
        const auto & family = sys.families[i];
        bool well_formed = true;
        for (int x = 0; x < static_cast<int>(family.size()); ++x) {
            const auto & e = family[x];
            if (e.arity() != r) {
                well_formed = false;
                report.violations.push_back({Violation::Kind::wrong_arity, i, x,
                    "edge " + to_string(e) + " has arity " + std::to_string(e.arity()) + ", expected " + std::to_string(r)});
                continue;
            }
            for (int j = 0; j < r; ++j)
                if (e.coords[j] < 0 || e.coords[j] >= sys.universe.side_sizes[j])
                    report.violations.push_back({Violation::Kind::out_of_range, i, x,
                        "edge " + to_string(e) + " coordinate " + std::to_string(j) + " outside [0, "
                            + std::to_string(sys.universe.side_sizes[j]) + ")"});
        }
        report.is_matching.push_back(well_formed && is_matching(family));
    }
    return report;
}

void require_valid(const FamilySystem & sys)
{
    auto report = validate_instance(sys);
    if (! report.valid())
        throw std::invalid_argument("invalid instance: " + report.violations.front().message);
}

auto validate_selection(const FamilySystem & sys, const RainbowSelection & sel) -> bool
{
    std::set<int> seen;
    for (const auto & p : sel.picks) {
        if (p.family < 0 || p.family >= sys.m())
            return false;
        if (p.edge_index < 0 || p.edge_index >= static_cast<int>(sys.families[p.family].size()))
            return false;
        if (! seen.insert(p.family).second)
            return false;
    }
    auto edges = selected_edges(sys, sel);
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a + 1; b < edges.size(); ++b)
            if (edges[a].arity() != edges[b].arity() || ! edges_disjoint(edges[a], edges[b]))
                return false;
    return true;
}

auto selected_edges(const FamilySystem & sys, const RainbowSelection & sel) -> std::vector<Edge>
{
    std::vector<Edge> result;
    result.reserve(sel.picks.size());
    for (const auto & p : sel.picks)
        result.push_back(sys.families.at(p.family).at(p.edge_index));
    return result;
}

namespace {

auto is_permutation_of_size(const std::vector<int> & perm, int n) -> bool
{
    if (static_cast<int>(perm.size()) != n)
        return false;
    std::vector<bool> hit(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

} // namespace

auto relabel(const FamilySystem & sys, const std::vector<std::vector<int>> & side_perms,
    const std::vector<int> & family_perm) -> FamilySystem
{
    if (static_cast<int>(side_perms.size()) != sys.r())
        throw std::invalid_argument("relabel: expected " + std::to_string(sys.r()) + " side permutations");
    for (int j = 0; j < sys.r(); ++j)
        if (! is_permutation_of_size(side_perms[j], sys.universe.side_sizes[j]))
            throw std::invalid_argument("relabel: side " + std::to_string(j) + " permutation has wrong size or is not a permutation");
    if (! is_permutation_of_size(family_perm, sys.m()))
        throw std::invalid_argument("relabel: family permutation has wrong size or is not a permutation");

    FamilySystem out;
    out.universe = sys.universe;
    out.families.resize(sys.families.size());
    for (int i = 0; i < sys.m(); ++i) {
        auto & target = out.families[family_perm[i]];
        target.reserve(sys.families[i].size());
        for (const auto & e : sys.families[i]) {
            Edge moved = e;
            for (int j = 0; j < sys.r(); ++j)
                moved.coords[j] = side_perms[j][e.coords[j]];
            target.push_back(std::move(moved));
        }
    }
    return out;
}

auto pad_families(const FamilySystem & sys, int p) -> FamilySystem
{
    if (p < 0)
        throw std::invalid_argument("pad_families: p must be non-negative");
    FamilySystem out = sys;
    if (p == 0)
        return out;
    Family padding;
    for (int q = 0; q < p; ++q) {
        Edge e;
        for (int j = 0; j < sys.r(); ++j)
            e.coords.push_back(sys.universe.side_sizes[j] + q);
        padding.push_back(std::move(e));
    }
    for (auto & s : out.universe.side_sizes)
        s += p;
    for (auto & f : out.families)
        f.insert(f.end(), padding.begin(), padding.end());
    return out;
}

auto to_line_graph(const FamilySystem & sys) -> IsrInstance
{
    IsrInstance isr;
    for (int i = 0; i < sys.m(); ++i) {
        isr.classes.emplace_back();
        for (int x = 0; x < static_cast<int>(sys.families[i].size()); ++x) {
            isr.classes.back().push_back(isr.vertex_count++);
            isr.origin.push_back({i, x});
        }
    }
    isr.adjacency.assign(isr.vertex_count, {});
    for (int u = 0; u < isr.vertex_count; ++u)
        for (int v = u + 1; v < isr.vertex_count; ++v) {
            const auto & eu = sys.families[isr.origin[u].family][isr.origin[u].edge_index];
            const auto & ev = sys.families[isr.origin[v].family][isr.origin[v].edge_index];
            if (! edges_disjoint(eu, ev)) {
                isr.adjacency[u].push_back(v);
                isr.adjacency[v].push_back(u);
            }
        }
    return isr;
}

auto vertex_degrees(const FamilySystem & sys) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> degrees;
    for (int s : sys.universe.side_sizes)
        degrees.emplace_back(s, 0);
    for (const auto & f : sys.families)
        for (const auto & e : f)
            for (int j = 0; j < sys.r(); ++j)
                ++degrees[j][e.coords[j]];
    return degrees;
}

auto max_degree(const FamilySystem & sys) -> int
{
    int best = 0;
    for (const auto & side : vertex_degrees(sys))
        for (int d : side)
            best = std::max(best, d);
    return best;
}

auto union_edges(const FamilySystem & sys) -> std::vector<Edge>
{
    std::vector<Edge> all;
    all.reserve(sys.total_edges());
    for (const auto & f : sys.families)
        all.insert(all.end(), f.begin(), f.end());
    return all;
}

auto is_simple(const FamilySystem & sys) -> bool
{
    auto all = union_edges(sys);
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

} // namespace rainbow
