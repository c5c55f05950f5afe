#include <rainbow/harness.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace rainbow::harness {

namespace {

/// Individualization-refinement over the incidence structure whose points
/// are the non-isolated vertices of every side plus the non-empty
/// families, and whose blocks are the edge occurrences. Each leaf of the
/// search is a labeling fixed by the colouring alone, so the least leaf
/// serialization is an isomorphism invariant.
class Canonicalizer {
public:
    explicit Canonicalizer(const FamilySystem & sys) : sys_(sys), r_(sys.r())
    {
        // Point ids: per side the non-isolated vertices, then families.
        point_of_.assign(r_ + 1, {});
        for (int j = 0; j < r_; ++j)
            point_of_[j].assign(sys.universe.side_sizes[j], -1);
        point_of_[r_].assign(sys.m(), -1);

        auto degrees = vertex_degrees(sys);
        for (int j = 0; j < r_; ++j)
            for (int v = 0; v < sys.universe.side_sizes[j]; ++v)
                if (degrees[j][v] > 0)
                    add_point(j, v, degrees[j][v]);
        for (int i = 0; i < sys.m(); ++i)
            if (! sys.families[i].empty())
                add_point(r_, i, static_cast<int>(sys.families[i].size()));

        for (int i = 0; i < sys.m(); ++i)
            for (const auto & e : sys.families[i]) {
                std::vector<int> block{point_of_[r_][i]};
                for (int j = 0; j < r_; ++j)
                    block.push_back(point_of_[j][e.coords[j]]);
                blocks_.push_back(block);
            }
        incident_.assign(points_.size(), {});
        for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
            for (int p : blocks_[b])
                incident_[p].push_back(b);
    }

    auto run() -> std::string
    {
        std::vector<long long> colours(points_.size());
        for (std::size_t p = 0; p < points_.size(); ++p)
            colours[p] = static_cast<long long>(points_[p].kind) * 1'000'000 + points_[p].degree;
        refine(colours);
        std::vector<int> path;
        search(colours, path);

        std::ostringstream out;
        for (std::size_t x = 0; x < best_.size(); ++x)
            out << (x ? "," : "") << best_[x];
        return out.str();
    }

private:
    struct Point {
        int kind;
        int label;
        int degree;
    };

    void add_point(int kind, int label, int degree)
    {
        point_of_[kind][label] = static_cast<int>(points_.size());
        points_.push_back({kind, label, degree});
    }

    /// Replaces colours by ranks of (colour, sorted neighbourhood colour
    /// tuples) until the number of classes stops growing.
    void refine(std::vector<long long> & colours) const
    {
        std::size_t classes = 0;
        while (true) {
            std::vector<std::pair<std::vector<long long>, int>> signatures;
            signatures.reserve(points_.size());
            for (int p = 0; p < static_cast<int>(points_.size()); ++p) {
                std::vector<std::vector<long long>> around;
                for (int b : incident_[p]) {
                    std::vector<long long> tuple;
                    for (int q : blocks_[b])
                        tuple.push_back(colours[q]);
                    around.push_back(std::move(tuple));
                }
                std::sort(around.begin(), around.end());
                std::vector<long long> sig{colours[p]};
                for (const auto & tuple : around) {
                    sig.push_back(-1);
                    sig.insert(sig.end(), tuple.begin(), tuple.end());
                }
                signatures.emplace_back(std::move(sig), p);
            }
            std::sort(signatures.begin(), signatures.end());
            long long rank = -1;
            for (std::size_t x = 0; x < signatures.size(); ++x) {
                if (x == 0 || signatures[x].first != signatures[x - 1].first)
                    ++rank;
                colours[signatures[x].second] = rank;
            }
            const auto now = static_cast<std::size_t>(rank + 1);
            if (now == classes)
                return;
            classes = now;
        }
    }

    void search(const std::vector<long long> & colours, std::vector<int> & path)
    {
        // Smallest colour shared by two or more points.
        std::map<long long, std::vector<int>> cells;
        for (int p = 0; p < static_cast<int>(points_.size()); ++p)
            cells[colours[p]].push_back(p);
        const std::vector<int> * target = nullptr;
        for (const auto & [colour, members] : cells)
            if (members.size() > 1) {
                target = &members;
                break;
            }
        if (! target) {
            consider_leaf(colours);
            return;
        }
        std::vector<int> explored;
        for (int p : *target) {
            if (in_explored_orbit(p, explored, path))
                continue;
            explored.push_back(p);
            auto next = colours;
            for (auto & c : next)
                c = 2 * c + 1;
            next[p] = 2 * colours[p];
            refine(next);
            path.push_back(p);
            search(next, path);
            path.pop_back();
        }
    }

    /// True if some known automorphism fixing the path maps an explored
    /// sibling onto p; that subtree is an image of one already searched.
    auto in_explored_orbit(int p, const std::vector<int> & explored, const std::vector<int> & path) const -> bool
    {
        if (explored.empty() || automorphisms_.empty())
            return false;
        std::vector<int> parent(points_.size());
        for (std::size_t x = 0; x < parent.size(); ++x)
            parent[x] = static_cast<int>(x);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto & gamma : automorphisms_) {
            if (! std::all_of(path.begin(), path.end(), [&](int v) { return gamma[v] == v; }))
                continue;
            for (std::size_t x = 0; x < gamma.size(); ++x)
                parent[find(static_cast<int>(x))] = find(gamma[x]);
        }
        const int root = find(p);
        return std::any_of(explored.begin(), explored.end(), [&](int q) { return find(q) == root; });
    }

    void consider_leaf(const std::vector<long long> & colours)
    {
        // Labels by colour order inside each kind; isolated vertices and
        // empty families take the labels after them.
        std::vector<std::vector<std::pair<long long, int>>> by_kind(r_ + 1);
        for (int p = 0; p < static_cast<int>(points_.size()); ++p)
            by_kind[points_[p].kind].emplace_back(colours[p], p);
        std::vector<int> label(points_.size());
        for (auto & group : by_kind) {
            std::sort(group.begin(), group.end());
            for (int x = 0; x < static_cast<int>(group.size()); ++x)
                label[group[x].second] = x;
        }

        std::vector<std::vector<int>> rows;
        rows.reserve(blocks_.size());
        for (const auto & block : blocks_) {
            std::vector<int> row;
            for (int p : block)
                row.push_back(label[p]);
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());

        std::vector<int> serial{r_};
        serial.insert(serial.end(), sys_.universe.side_sizes.begin(), sys_.universe.side_sizes.end());
        serial.push_back(sys_.m());
        for (const auto & row : rows)
            serial.insert(serial.end(), row.begin(), row.end());

        if (first_.empty()) {
            first_ = serial;
            first_labels_ = label;
        }
        else if (serial == first_)
            record_automorphism(first_labels_, label);
        if (best_.empty() || serial < best_) {
            best_ = std::move(serial);
            best_labels_ = std::move(label);
        }
        else if (serial == best_)
            record_automorphism(best_labels_, label);
    }

    /// Two leaves with equal serializations differ by an automorphism:
    /// the point labelled x in one leaf maps to the point labelled x in the other.
    void record_automorphism(const std::vector<int> & reference, const std::vector<int> & label)
    {
        if (automorphisms_.size() >= max_automorphisms)
            return;
        std::map<std::pair<int, int>, int> point_with;
        for (int p = 0; p < static_cast<int>(points_.size()); ++p)
            point_with[{points_[p].kind, reference[p]}] = p;
        std::vector<int> gamma(points_.size());
        bool identity = true;
        for (int p = 0; p < static_cast<int>(points_.size()); ++p) {
            gamma[p] = point_with.at({points_[p].kind, label[p]});
            identity = identity && gamma[p] == p;
        }
        if (! identity)
            automorphisms_.push_back(std::move(gamma));
    }

    static constexpr std::size_t max_automorphisms = 256;

    const FamilySystem & sys_;
    int r_;
    std::vector<std::vector<int>> point_of_;
    std::vector<Point> points_;
    std::vector<std::vector<int>> blocks_;
    std::vector<std::vector<int>> incident_;
    std::vector<int> first_, first_labels_;
    std::vector<int> best_, best_labels_;
    std::vector<std::vector<int>> automorphisms_;
};

} // namespace

auto canonical_form(const FamilySystem & sys) -> std::string
{
    require_valid(sys);
    if (sys.total_edges() > canonical_edge_limit)
        throw SizeGuardError("canonical_form: more than " + std::to_string(canonical_edge_limit) + " edge occurrences");
    return Canonicalizer(sys).run();
}

} // namespace rainbow::harness
