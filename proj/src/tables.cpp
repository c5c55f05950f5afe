#include <rainbow/harness.hpp>
#include <rainbow/solver.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace rainbow::harness {

auto to_string(ProofMode mode) -> std::string
{
    return mode == ProofMode::exhaustive ? "exhaustive" : "bounded";
}

namespace {

/// Every matching of size t that uses already-touched vertices or fresh
/// ones, up to relabeling the fresh vertices: fresh vertices are handed
/// out in increasing order, so each choice of used-vertex pattern is
/// produced once.
class MatchingExtender {
public:
    MatchingExtender(const FamilySystem & base, int t) : base_(base), t_(t)
    {
        auto degrees = vertex_degrees(base);
        for (int j = 0; j < 2; ++j) {
            for (int v = 0; v < base.universe.side_sizes[j]; ++v)
                if (degrees[j][v] > 0)
                    used_[j].push_back(v);
            fresh_start_[j] = used_[j].empty() ? 0 : used_[j].back() + 1;
        }
    }

    void each(const std::function<void(Family &&)> & emit)
    {
        emit_ = &emit;
        b_taken_.assign(used_[1].size(), false);
        place_a(0);
    }

private:
    /// Decides the partner of used side-0 vertex number `index`.
    void place_a(std::size_t index)
    {
        if (static_cast<int>(current_.size()) > t_)
            return;
        if (index == used_[0].size()) {
            pair_free_b(0, 0);
            return;
        }
        const int a = used_[0][index];
        place_a(index + 1);
        // fresh b partners; placeholder -1 is resolved when emitting
        current_.push_back({a, -1});
        place_a(index + 1);
        current_.pop_back();
        for (std::size_t y = 0; y < used_[1].size(); ++y) {
            if (b_taken_[y])
                continue;
            b_taken_[y] = true;
            current_.push_back({a, used_[1][y]});
            place_a(index + 1);
            current_.pop_back();
            b_taken_[y] = false;
        }
    }

    /// Chooses which still-free used side-1 vertices pair with fresh side-0 vertices.
    void pair_free_b(std::size_t y, int chosen)
    {
        const int size_now = static_cast<int>(current_.size()) + chosen;
        if (size_now > t_)
            return;
        if (y == used_[1].size()) {
            finish(chosen);
            return;
        }
        pair_free_b(y + 1, chosen);
        if (! b_taken_[y]) {
            fresh_b_partners_.push_back(used_[1][y]);
            pair_free_b(y + 1, chosen + 1);
            fresh_b_partners_.pop_back();
        }
    }

    void finish(int chosen)
    {
        const int fresh_pairs = t_ - static_cast<int>(current_.size()) - chosen;
        if (fresh_pairs < 0)
            return;
        int next_a = fresh_start_[0], next_b = fresh_start_[1];
        Family m;
        for (const auto & e : current_)
            m.push_back({e[0], e[1] < 0 ? next_b++ : e[1]});
        for (int b : fresh_b_partners_)
            m.push_back({next_a++, b});
        for (int x = 0; x < fresh_pairs; ++x)
            m.push_back({next_a++, next_b++});
        if (next_a > base_.universe.side_sizes[0] || next_b > base_.universe.side_sizes[1])
            return;
        std::sort(m.begin(), m.end());
        (*emit_)(std::move(m));
    }

    const FamilySystem & base_;
    int t_;
    std::vector<int> used_[2];
    int fresh_start_[2] = {0, 0};
    std::vector<bool> b_taken_;
    std::vector<Edge> current_;
    std::vector<int> fresh_b_partners_;
    const std::function<void(Family &&)> * emit_ = nullptr;
};

void check_exhaustive_guard(int r, int families, int t)
{
    if (r != 2 || families < 1 || families > exhaustive_max_families || t < 1 || t > exhaustive_max_size)
        throw SizeGuardError("exhaustive enumeration is limited to r = 2, at most " + std::to_string(exhaustive_max_families)
            + " families and matchings of size at most " + std::to_string(exhaustive_max_size));
}

} // namespace

auto for_each_matching_system(int families, int t, const std::function<bool(const FamilySystem &)> & visit)
    -> EnumerationStats
{
    check_exhaustive_guard(2, families, t);
    const int side = families * t;
    FamilySystem first{{{side, side}}, {}};
    Family identity;
    for (int i = 0; i < t; ++i)
        identity.push_back({i, i});
    first.families.push_back(identity);

    // Isomorphism classes by canonical form; std::map keeps iteration order
    // independent of insertion order.
    std::map<std::string, FamilySystem> level{{canonical_form(first), first}};
    EnumerationStats stats;
    stats.candidates = 1;
    for (int count = 2; count <= families; ++count) {
        std::map<std::string, FamilySystem> next;
        for (const auto & [_, base] : level)
            MatchingExtender(base, t).each([&](Family && m) {
                ++stats.candidates;
                FamilySystem grown = base;
                grown.families.push_back(std::move(m));
                auto key = canonical_form(grown);
                next.try_emplace(std::move(key), std::move(grown));
            });
        level = std::move(next);
    }
    stats.classes = level.size();
    for (const auto & [_, sys] : level)
        if (! visit(sys))
            break;
    return stats;
}

auto table_f(int r, int k) -> TableEntry
{
    check_exhaustive_guard(r, k, 1);
    TableEntry entry{'f', r, k, 0, ProofMode::bounded, 0, 0, 0};
    for (int t = 1; t <= exhaustive_max_size; ++t) {
        bool all_full = true;
        auto stats = for_each_matching_system(k, t, [&](const FamilySystem & sys) {
            all_full = has_full_rainbow(sys);
            return all_full;
        });
        entry.max_size_checked = t;
        entry.side_size_limit = k * t;
        entry.classes = stats.classes;
        if (all_full) {
            entry.value = t;
            entry.proof_mode = ProofMode::exhaustive;
            return entry;
        }
    }
    // Every size up to the guard has a rainbow-free system.
    entry.value = exhaustive_max_size + 1;
    return entry;
}

auto table_g(int r, int k) -> TableEntry
{
    check_exhaustive_guard(r, k, k);
    TableEntry entry{'g', r, k, k, ProofMode::exhaustive, k * k, k, 0};
    auto stats = for_each_matching_system(k, k, [&](const FamilySystem & sys) {
        entry.value = std::min(entry.value, max_rainbow(sys).optimal_size);
        return true;
    });
    entry.classes = stats.classes;
    return entry;
}

auto format_entry(const TableEntry & entry) -> std::string
{
    std::ostringstream out;
    out << entry.function << '(' << entry.r << ',' << entry.k << ") ";
    if (entry.proof_mode == ProofMode::exhaustive)
        out << "= " << entry.value << " (exhaustive)";
    else
        out << ">= " << entry.value << " (bounded)";
    return out.str();
}

auto format_entry_details(const TableEntry & entry) -> std::string
{
    std::ostringstream out;
    out << "matchings up to size " << entry.max_size_checked << ", sides of size " << entry.side_size_limit << ", "
        << entry.classes << " isomorphism classes at the last size";
    return out.str();
}

} // namespace rainbow::harness
