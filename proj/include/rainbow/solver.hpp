#pragma once

#include <rainbow/core.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rainbow {

enum class SolveStatus { optimal, timeout };

[[nodiscard]] auto to_string(SolveStatus s) -> std::string;

struct SolveOptions {
    std::optional<std::chrono::milliseconds> time_limit;
};

/// Outcome of an exact search. With status == timeout, optimal_size is
/// only a lower bound witnessed by selection.
struct SolveResult {
    int optimal_size = 0;
    RainbowSelection selection;
    bool full = false;
    SolveStatus status = SolveStatus::optimal;
    std::uint64_t nodes_explored = 0;
    std::chrono::milliseconds elapsed{0};
};

/// Exact maximum partial rainbow matching by branch and bound.
///
/// Branches on the open family with the fewest edges still disjoint from
/// the current picks (ties to the lowest index), trying its edges in
/// stored order and then the branch that leaves it unrepresented. A node
/// is pruned when its size plus the number of open families that still
/// have a disjoint candidate cannot beat the incumbent. Node counts are
/// reproducible for a given instance.
[[nodiscard]] auto max_rainbow(const FamilySystem & sys, const SolveOptions & options = {}) -> SolveResult;

/// Exhaustive enumeration of every partial selection; independent of
/// max_rainbow. Throws SizeGuardError when prod(|F_i| + 1) > oracle_limit.
inline constexpr std::uint64_t oracle_limit = 10'000'000;
[[nodiscard]] auto oracle_max_rainbow(const FamilySystem & sys) -> SolveResult;
[[nodiscard]] auto oracle_feasible(const FamilySystem & sys) -> bool;

/// Stops at the first full rainbow matching. On timeout the status says
/// so and full is false.
[[nodiscard]] auto find_full_rainbow(const FamilySystem & sys, const SolveOptions & options = {}) -> SolveResult;
[[nodiscard]] auto has_full_rainbow(const FamilySystem & sys) -> bool;

/// Families in index order, each taking its first stored edge disjoint
/// from the picks so far.
[[nodiscard]] auto greedy_rainbow(const FamilySystem & sys) -> RainbowSelection;

inline constexpr int default_chain_depth = 3;

/// Improves sel by direct extensions and alternating replacement chains:
/// an edge of an unrepresented family that meets exactly one pick replaces
/// it, and the family losing its pick is re-served the same way, up to
/// max_depth replacements. Never returns a smaller selection.
[[nodiscard]] auto augment_local(const FamilySystem & sys, const RainbowSelection & sel, int max_depth = default_chain_depth)
    -> RainbowSelection;

struct MatchingResult {
    int size = 0;
    /// (family, edge_index) occurrences of a maximum matching.
    std::vector<Pick> witness;
    SolveStatus status = SolveStatus::optimal;
    std::uint64_t nodes_explored = 0;
};

/// Matching number of the multiset union of all families.
[[nodiscard]] auto max_matching(const FamilySystem & sys, const SolveOptions & options = {}) -> MatchingResult;

struct FamilyGoodEdges {
    int family = 0;
    /// Picks good for this family, counting repeated edges as distinct occurrences.
    std::vector<Pick> good;
    /// Same test, but requiring two distinct edge values.
    std::vector<Pick> good_distinct_values;
};

struct GoodEdgeReport {
    std::vector<int> represented;
    std::vector<FamilyGoodEdges> unrepresented;
};

/// For each family j not represented in sel, the picks f for which two
/// distinct edges of F_j meet f and meet the vertex set of sel in exactly
/// one vertex. Requires a 3-partite system.
[[nodiscard]] auto good_edges(const FamilySystem & sys, const RainbowSelection & sel) -> GoodEdgeReport;

inline constexpr std::string_view result_format = "rainbow-result/1";

/// rainbow-result/1 document. elapsed_ms is written as 0 unless
/// include_timing is set, which keeps repeated runs byte-identical.
[[nodiscard]] auto result_to_json(const SolveResult & result, bool include_timing = false) -> nlohmann::ordered_json;

} // namespace rainbow
