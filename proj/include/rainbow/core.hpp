#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

/// Input could not be read or does not follow a file format.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A generator's output failed its own postcondition.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An instance exceeds a hard size guard (oracle, enumeration, canonical form).
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vertex universe of an r-partite hypergraph: r sides, side j holding
/// vertices 0 .. side_sizes[j]-1. Edges live in FamilySystem.
struct Universe {
    std::vector<int> side_sizes;

    [[nodiscard]] auto r() const -> int { return static_cast<int>(side_sizes.size()); }
    [[nodiscard]] auto total_vertices() const -> int;

    auto operator==(const Universe &) const -> bool = default;
};

/// One vertex per side; coordinate j is the vertex taken from side j.
struct Edge {
    std::vector<int> coords;

    Edge() = default;
    Edge(std::initializer_list<int> c) : coords(c) {}
    explicit Edge(std::vector<int> c) : coords(std::move(c)) {}

    [[nodiscard]] auto arity() const -> int { return static_cast<int>(coords.size()); }
    auto operator[](std::size_t j) const -> int { return coords[j]; }

    auto operator<=>(const Edge &) const = default;
    auto operator==(const Edge &) const -> bool = default;
};

using Family = std::vector<Edge>;

/// Ordered list of edge multisets F_1..F_m over a shared universe.
struct FamilySystem {
    Universe universe;
    std::vector<Family> families;

    [[nodiscard]] auto r() const -> int { return universe.r(); }
    [[nodiscard]] auto m() const -> int { return static_cast<int>(families.size()); }
    [[nodiscard]] auto total_edges() const -> std::size_t;

    auto operator==(const FamilySystem &) const -> bool = default;
};

struct Pick {
    int family = 0;
    int edge_index = 0;

    auto operator<=>(const Pick &) const = default;
};

/// Partial injective map family -> edge with pairwise disjoint edges.
struct RainbowSelection {
    std::vector<Pick> picks;

    [[nodiscard]] auto size() const -> int { return static_cast<int>(picks.size()); }
    auto operator==(const RainbowSelection &) const -> bool = default;
};

/// Conflict graph with vertex classes; independent partial transversals
/// correspond to rainbow selections.
struct IsrInstance {
    int vertex_count = 0;
    std::vector<std::vector<int>> adjacency;
    std::vector<std::vector<int>> classes;
    /// (family, edge_index) that produced each conflict vertex.
    std::vector<Pick> origin;
};

struct Violation {
    enum class Kind { wrong_arity, out_of_range, bad_universe };
    Kind kind;
    int family = -1;
    int edge_index = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<bool> is_matching;

    [[nodiscard]] auto valid() const -> bool { return violations.empty(); }
};

[[nodiscard]] auto validate_instance(const FamilySystem & sys) -> ValidationReport;

/// Throws std::invalid_argument listing the first violation.
void require_valid(const FamilySystem & sys);

/// Partite edges meet only through equal coordinates on the same side.
[[nodiscard]] auto edges_disjoint(const Edge & e, const Edge & f) -> bool;

[[nodiscard]] auto is_matching(const Family & family) -> bool;

[[nodiscard]] auto validate_selection(const FamilySystem & sys, const RainbowSelection & sel) -> bool;

[[nodiscard]] auto selected_edges(const FamilySystem & sys, const RainbowSelection & sel) -> std::vector<Edge>;

/// side_perms[j][v] is the new label of vertex v on side j; family_perm[i]
/// is the new position of family i.
[[nodiscard]] auto relabel(const FamilySystem & sys, const std::vector<std::vector<int>> & side_perms,
    const std::vector<int> & family_perm) -> FamilySystem;

/// Grows every side by p fresh vertices and appends the same p fresh
/// pairwise disjoint edges to every family.
[[nodiscard]] auto pad_families(const FamilySystem & sys, int p) -> FamilySystem;

[[nodiscard]] auto to_line_graph(const FamilySystem & sys) -> IsrInstance;

/// Multiset degree of every vertex, indexed [side][vertex], over the union of all families.
[[nodiscard]] auto vertex_degrees(const FamilySystem & sys) -> std::vector<std::vector<int>>;

[[nodiscard]] auto max_degree(const FamilySystem & sys) -> int;

/// True if no edge value occurs twice in the multiset union of all families.
[[nodiscard]] auto is_simple(const FamilySystem & sys) -> bool;

/// All edge occurrences of all families, in family order.
[[nodiscard]] auto union_edges(const FamilySystem & sys) -> std::vector<Edge>;

[[nodiscard]] auto to_string(const Edge & e) -> std::string;

} // namespace rainbow
