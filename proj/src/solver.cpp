#include <rainbow/solver.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace rainbow {

auto to_string(SolveStatus s) -> std::string
{
    return s == SolveStatus::optimal ? "optimal" : "timeout";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Edges rewritten as flat vertex ids (side offset + coordinate), so that
/// disjointness against the current picks is r lookups into one array.
struct FlatSystem {
    int r = 0;
    int vertex_count = 0;
    std::vector<int> offset;
    std::vector<std::vector<std::vector<int>>> families;

    explicit FlatSystem(const FamilySystem & sys) : r(sys.r()), offset(sys.r(), 0)
    {
        for (int j = 1; j < r; ++j)
            offset[j] = offset[j - 1] + sys.universe.side_sizes[j - 1];
        vertex_count = sys.universe.total_vertices();
        for (const auto & fam : sys.families) {
            families.emplace_back();
            for (const auto & e : fam) {
                std::vector<int> flat(r);
                for (int j = 0; j < r; ++j)
                    flat[j] = offset[j] + e.coords[j];
                families.back().push_back(std::move(flat));
            }
        }
    }
};

class Deadline {
public:
    explicit Deadline(const SolveOptions & options) : start_(Clock::now())
    {
        if (options.time_limit)
            end_ = start_ + *options.time_limit;
    }

    auto expired(std::uint64_t nodes) -> bool
    {
        if (! end_ || (nodes & 0xff) != 0)
            return expired_;
        if (Clock::now() >= *end_)
            expired_ = true;
        return expired_;
    }

    [[nodiscard]] auto elapsed() const -> std::chrono::milliseconds
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
    }

private:
    Clock::time_point start_;
    std::optional<Clock::time_point> end_;
    bool expired_ = false;
};

class RainbowSearch {
public:
    RainbowSearch(const FamilySystem & sys, const SolveOptions & options, int floor) :
        flat_(sys), m_(sys.m()), floor_(floor), deadline_(options), used_(flat_.vertex_count, 0),
        state_(m_, open), free_(sys.universe.side_sizes), previous_twin_(m_, -1), pick_index_(m_, -1)
    {
        for (int i = 0; i < m_; ++i)
            for (int p = i - 1; p >= 0; --p)
                if (sys.families[p] == sys.families[i]) {
                    previous_twin_[i] = p;
                    break;
                }
    }

    auto run() -> SolveResult
    {
        search();
        SolveResult result;
        result.optimal_size = best_size_;
        result.selection.picks = best_;
        std::sort(result.selection.picks.begin(), result.selection.picks.end());
        result.full = best_size_ == m_;
        result.status = timed_out_ ? SolveStatus::timeout : SolveStatus::optimal;
        result.nodes_explored = nodes_;
        result.elapsed = deadline_.elapsed();
        return result;
    }

private:
    static constexpr char open = 0, picked = 1, skipped = 2;

    auto fits(const std::vector<int> & edge) const -> bool
    {
        for (int v : edge)
            if (used_[v])
                return false;
        return true;
    }

    void mark(const std::vector<int> & edge, char value)
    {
        for (int j = 0; j < flat_.r; ++j) {
            used_[edge[j]] = value;
            free_[j] += value ? -1 : 1;
        }
    }

    void search()
    {
        ++nodes_;
        if (deadline_.expired(nodes_)) {
            timed_out_ = true;
            return;
        }
        const int size = static_cast<int>(current_.size());
        if (size > best_size_) {
            best_size_ = size;
            best_ = current_;
            if (best_size_ == m_) {
                done_ = true;
                return;
            }
        }

        int alive = 0, branch = -1, branch_count = 0;
        for (int i = 0; i < m_; ++i) {
            if (state_[i] != open)
                continue;
            int count = 0;
            for (const auto & e : flat_.families[i])
                if (fits(e))
                    ++count;
            if (count == 0)
                continue;
            ++alive;
            if (branch == -1 || count < branch_count) {
                branch = i;
                branch_count = count;
            }
        }
        // Every further pick also consumes one free vertex per side.
        const int room = std::min(alive, *std::min_element(free_.begin(), free_.end()));
        if (size + room <= std::max(best_size_, floor_) || branch == -1)
            return;

        // Identical families are interchangeable: represented twins come
        // first and take increasing edge indices. Twins share candidate
        // counts, so the tie-break already visits them in index order.
        const int twin = previous_twin_[branch];
        const bool forced_skip = twin >= 0 && state_[twin] == skipped;
        const int first = twin >= 0 && state_[twin] == picked ? pick_index_[twin] + 1 : 0;

        state_[branch] = picked;
        const auto & fam = flat_.families[branch];
        for (int x = first; ! forced_skip && x < static_cast<int>(fam.size()); ++x) {
            if (! fits(fam[x]))
                continue;
            mark(fam[x], 1);
            current_.push_back({branch, x});
            pick_index_[branch] = x;
            search();
            current_.pop_back();
            mark(fam[x], 0);
            if (done_ || timed_out_) {
                state_[branch] = open;
                return;
            }
        }
        state_[branch] = skipped;
        search();
        state_[branch] = open;
    }

    FlatSystem flat_;
    int m_;
    int floor_;
    Deadline deadline_;
    std::vector<char> used_;
    std::vector<char> state_;
    std::vector<int> free_;
    std::vector<int> previous_twin_, pick_index_;
    std::vector<Pick> current_, best_;
    int best_size_ = 0;
    std::uint64_t nodes_ = 0;
    bool done_ = false, timed_out_ = false;
};

} // namespace

auto max_rainbow(const FamilySystem & sys, const SolveOptions & options) -> SolveResult
{
    require_valid(sys);
    return RainbowSearch(sys, options, 0).run();
}

auto find_full_rainbow(const FamilySystem & sys, const SolveOptions & options) -> SolveResult
{
    require_valid(sys);
    // Anything short of m is pruned, so the first leaf reaching m ends the search.
    auto result = RainbowSearch(sys, options, std::max(0, sys.m() - 1)).run();
    result.full = result.optimal_size == sys.m();
    return result;
}

auto has_full_rainbow(const FamilySystem & sys) -> bool
{
    return find_full_rainbow(sys).full;
}

auto oracle_feasible(const FamilySystem & sys) -> bool
{
    std::uint64_t space = 1;
    for (const auto & fam : sys.families) {
        space *= fam.size() + 1;
        if (space > oracle_limit)
            return false;
    }
    return true;
}

auto oracle_max_rainbow(const FamilySystem & sys) -> SolveResult
{
    require_valid(sys);
    const auto start = Clock::now();
    if (! oracle_feasible(sys))
        throw SizeGuardError("oracle: selection space exceeds " + std::to_string(oracle_limit));
    std::uint64_t space = 1;
    for (const auto & fam : sys.families)
        space *= fam.size() + 1;

    const int m = sys.m();
    // choice[i] == -1 leaves family i unrepresented.
    std::vector<int> choice(m, -1);
    SolveResult result;
    std::vector<const Edge *> chosen;
    for (std::uint64_t n = 0; n < space; ++n) {
        ++result.nodes_explored;
        chosen.clear();
        for (int i = 0; i < m; ++i)
            if (choice[i] >= 0)
                chosen.push_back(&sys.families[i][choice[i]]);
        bool ok = true;
        for (std::size_t a = 0; ok && a < chosen.size(); ++a)
            for (std::size_t b = a + 1; ok && b < chosen.size(); ++b)
                ok = edges_disjoint(*chosen[a], *chosen[b]);
        if (ok && static_cast<int>(chosen.size()) > result.optimal_size) {
            result.optimal_size = static_cast<int>(chosen.size());
            result.selection.picks.clear();
            for (int i = 0; i < m; ++i)
                if (choice[i] >= 0)
                    result.selection.picks.push_back({i, choice[i]});
        }
        for (int i = 0; i < m; ++i) {
            if (++choice[i] < static_cast<int>(sys.families[i].size()))
                break;
            choice[i] = -1;
        }
    }
    result.full = result.optimal_size == m;
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return result;
}

auto greedy_rainbow(const FamilySystem & sys) -> RainbowSelection
{
    require_valid(sys);
    RainbowSelection sel;
    std::vector<const Edge *> taken;
    for (int i = 0; i < sys.m(); ++i) {
        const auto & fam = sys.families[i];
        for (int x = 0; x < static_cast<int>(fam.size()); ++x) {
            bool ok = std::all_of(taken.begin(), taken.end(), [&](const Edge * t) { return edges_disjoint(*t, fam[x]); });
            if (ok) {
                sel.picks.push_back({i, x});
                taken.push_back(&fam[x]);
                break;
            }
        }
    }
    return sel;
}

namespace {

class ChainAugmenter {
public:
    ChainAugmenter(const FamilySystem & sys, const RainbowSelection & sel, int max_depth) :
        flat_(sys), max_depth_(max_depth), owner_(flat_.vertex_count, -1), pick_of_(sys.m(), -1)
    {
        for (const auto & p : sel.picks)
            place(p.family, p.edge_index);
    }

    auto run() -> RainbowSelection
    {
        while (extend_once()) {
        }
        RainbowSelection out;
        for (int i = 0; i < static_cast<int>(pick_of_.size()); ++i)
            if (pick_of_[i] >= 0)
                out.picks.push_back({i, pick_of_[i]});
        return out;
    }

private:
    void place(int family, int x)
    {
        pick_of_[family] = x;
        for (int v : flat_.families[family][x])
            owner_[v] = family;
    }

    void remove(int family)
    {
        for (int v : flat_.families[family][pick_of_[family]])
            owner_[v] = -1;
        pick_of_[family] = -1;
    }

    /// Families owning a vertex of the edge, without repeats.
    auto blockers(const std::vector<int> & edge) const -> std::vector<int>
    {
        std::vector<int> out;
        for (int v : edge)
            if (owner_[v] >= 0 && std::find(out.begin(), out.end(), owner_[v]) == out.end())
                out.push_back(owner_[v]);
        return out;
    }

    auto extend_once() -> bool
    {
        const int m = static_cast<int>(pick_of_.size());
        for (int j = 0; j < m; ++j) {
            if (pick_of_[j] >= 0)
                continue;
            const auto & fam = flat_.families[j];
            for (int x = 0; x < static_cast<int>(fam.size()); ++x)
                if (blockers(fam[x]).empty()) {
                    place(j, x);
                    return true;
                }
        }
        for (int j = 0; j < m; ++j) {
            if (pick_of_[j] >= 0)
                continue;
            locked_.assign(m, false);
            if (serve(j, 0))
                return true;
        }
        return false;
    }

    /// Gives the unrepresented family a pick, displacing at most one
    /// unlocked pick per step.
    auto serve(int family, int depth) -> bool
    {
        const auto & fam = flat_.families[family];
        for (int x = 0; x < static_cast<int>(fam.size()); ++x)
            if (blockers(fam[x]).empty()) {
                place(family, x);
                return true;
            }
        if (depth >= max_depth_)
            return false;
        for (int x = 0; x < static_cast<int>(fam.size()); ++x) {
            auto hit = blockers(fam[x]);
            if (hit.size() != 1 || locked_[hit.front()])
                continue;
            const int displaced = hit.front();
            const int old_edge = pick_of_[displaced];
            remove(displaced);
            place(family, x);
            locked_[family] = true;
            if (serve(displaced, depth + 1))
                return true;
            locked_[family] = false;
            remove(family);
            place(displaced, old_edge);
        }
        return false;
    }

    FlatSystem flat_;
    int max_depth_;
    std::vector<int> owner_;
    std::vector<int> pick_of_;
    std::vector<bool> locked_;
};

} // namespace

auto augment_local(const FamilySystem & sys, const RainbowSelection & sel, int max_depth) -> RainbowSelection
{
    require_valid(sys);
    if (! validate_selection(sys, sel))
        throw std::invalid_argument("augment_local: selection is not a valid rainbow selection");
    if (max_depth < 0)
        throw std::invalid_argument("augment_local: depth must be non-negative");
    return ChainAugmenter(sys, sel, max_depth).run();
}

namespace {

class PackingSearch {
public:
    PackingSearch(const FamilySystem & sys, const SolveOptions & options) : deadline_(options)
    {
        FlatSystem flat(sys);
        r_ = flat.r;
        std::vector<int> offset(r_, 0);
        for (int j = 1; j < r_; ++j)
            offset[j] = offset[j - 1] + sys.universe.side_sizes[j - 1];
        side_of_.resize(flat.vertex_count);
        for (int j = 0; j < r_; ++j)
            for (int v = 0; v < sys.universe.side_sizes[j]; ++v)
                side_of_[offset[j] + v] = j;

        // Repeated edges never coexist in a matching; keep the first occurrence.
        std::set<std::vector<int>> seen;
        for (int i = 0; i < sys.m(); ++i)
            for (int x = 0; x < static_cast<int>(flat.families[i].size()); ++x)
                if (seen.insert(flat.families[i][x]).second) {
                    edges_.push_back(flat.families[i][x]);
                    origin_.push_back({i, x});
                }
        incident_.assign(flat.vertex_count, {});
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
            for (int v : edges_[e])
                incident_[v].push_back(e);
        blocked_.assign(flat.vertex_count, 0);
    }

    auto run() -> MatchingResult
    {
        search();
        MatchingResult result;
        result.size = best_size_;
        for (int e : best_)
            result.witness.push_back(origin_[e]);
        std::sort(result.witness.begin(), result.witness.end());
        result.status = timed_out_ ? SolveStatus::timeout : SolveStatus::optimal;
        result.nodes_explored = nodes_;
        return result;
    }

private:
    auto available(int e) const -> bool
    {
        for (int v : edges_[e])
            if (blocked_[v])
                return false;
        return true;
    }

    void set_edge(int e, char value)
    {
        for (int v : edges_[e])
            blocked_[v] = value;
    }

    void search()
    {
        ++nodes_;
        if (deadline_.expired(nodes_)) {
            timed_out_ = true;
            return;
        }
        const int size = static_cast<int>(current_.size());
        if (size > best_size_) {
            best_size_ = size;
            best_ = current_;
        }

        // Free vertices that still lie on an available edge, per side; the
        // emptiest side bounds how many more edges fit.
        std::vector<int> coverable(r_, 0);
        int pivot = -1, pivot_count = 0;
        for (int v = 0; v < static_cast<int>(incident_.size()); ++v) {
            if (blocked_[v])
                continue;
            int count = 0;
            for (int e : incident_[v])
                if (available(e))
                    ++count;
            if (count == 0)
                continue;
            ++coverable[side_of_[v]];
            if (pivot == -1 || count < pivot_count) {
                pivot = v;
                pivot_count = count;
            }
        }
        if (pivot == -1)
            return;
        if (size + *std::min_element(coverable.begin(), coverable.end()) <= best_size_)
            return;

        for (int e : incident_[pivot]) {
            if (! available(e))
                continue;
            set_edge(e, 1);
            current_.push_back(e);
            search();
            current_.pop_back();
            set_edge(e, 0);
            if (timed_out_)
                return;
        }
        blocked_[pivot] = 1;
        search();
        blocked_[pivot] = 0;
    }

    Deadline deadline_;
    int r_ = 0;
    std::vector<int> side_of_;
    std::vector<std::vector<int>> edges_;
    std::vector<Pick> origin_;
    std::vector<std::vector<int>> incident_;
    std::vector<char> blocked_;
    std::vector<int> current_, best_;
    int best_size_ = 0;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

} // namespace

auto max_matching(const FamilySystem & sys, const SolveOptions & options) -> MatchingResult
{
    require_valid(sys);
    return PackingSearch(sys, options).run();
}

auto good_edges(const FamilySystem & sys, const RainbowSelection & sel) -> GoodEdgeReport
{
    if (sys.r() != 3)
        throw std::invalid_argument("good_edges: system must be 3-partite");
    require_valid(sys);
    if (! validate_selection(sys, sel))
        throw std::invalid_argument("good_edges: selection is not a valid rainbow selection");

    // Vertex (side, v) -> index of the pick covering it.
    std::map<std::pair<int, int>, int> cover;
    const auto picked = selected_edges(sys, sel);
    for (int p = 0; p < static_cast<int>(picked.size()); ++p)
        for (int j = 0; j < 3; ++j)
            cover[{j, picked[p].coords[j]}] = p;

    GoodEdgeReport report;
    std::vector<bool> represented(sys.m(), false);
    for (const auto & p : sel.picks)
        represented[p.family] = true;
    for (int i = 0; i < sys.m(); ++i)
        if (represented[i])
            report.represented.push_back(i);

    for (int j = 0; j < sys.m(); ++j) {
        if (represented[j])
            continue;
        // Per pick, the edges of F_j meeting the selection's vertex set only
        // in one vertex of that pick.
        std::vector<std::vector<const Edge *>> touching(picked.size());
        for (const auto & e : sys.families[j]) {
            int hits = 0, owner = -1;
            for (int c = 0; c < 3; ++c)
                if (auto it = cover.find({c, e.coords[c]}); it != cover.end()) {
                    ++hits;
                    owner = it->second;
                }
            if (hits == 1)
                touching[owner].push_back(&e);
        }
        FamilyGoodEdges entry;
        entry.family = j;
        for (int p = 0; p < static_cast<int>(picked.size()); ++p) {
            if (touching[p].size() >= 2)
                entry.good.push_back(sel.picks[p]);
            std::set<Edge> values;
            for (const auto * e : touching[p])
                values.insert(*e);
            if (values.size() >= 2)
                entry.good_distinct_values.push_back(sel.picks[p]);
        }
        report.unrepresented.push_back(std::move(entry));
    }
    return report;
}

auto result_to_json(const SolveResult & result, bool include_timing) -> nlohmann::ordered_json
{
    nlohmann::ordered_json doc;
    doc["format"] = result_format;
    doc["optimal_size"] = result.optimal_size;
    doc["full"] = result.full;
    auto picks = nlohmann::ordered_json::array();
    for (const auto & p : result.selection.picks)
        picks.push_back({{"family", p.family}, {"edge_index", p.edge_index}});
    doc["selection"] = std::move(picks);
    doc["status"] = to_string(result.status);
    doc["nodes_explored"] = result.nodes_explored;
    doc["elapsed_ms"] = include_timing ? result.elapsed.count() : 0;
    return doc;
}

} // namespace rainbow
