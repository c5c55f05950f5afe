#pragma once

#include <rainbow/core.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rainbow::harness {

/// k families, each a uniform random partial matching of size t: per
/// family and side, the first t entries of a seeded shuffle of the side.
[[nodiscard]] auto sample_family_system(int r, int k, int t, int side_size, std::uint64_t seed) -> FamilySystem;

inline constexpr std::size_t canonical_edge_limit = 24;

/// Lexicographically least serialization over relabelings of every side
/// and every family order. Equal strings exactly for isomorphic systems.
/// Throws SizeGuardError past canonical_edge_limit edge occurrences.
[[nodiscard]] auto canonical_form(const FamilySystem & sys) -> std::string;

/// Bounds of the exhaustive enumeration of matching systems.
inline constexpr int exhaustive_max_families = 3;
inline constexpr int exhaustive_max_size = 4;

struct EnumerationStats {
    std::uint64_t classes = 0;
    std::uint64_t candidates = 0;
};

/// Visits one representative per isomorphism class of 2-partite systems of
/// `families` matchings of size t on sides of size families * t. The
/// visitor returns false to stop early.
auto for_each_matching_system(int families, int t, const std::function<bool(const FamilySystem &)> & visit)
    -> EnumerationStats;

enum class ProofMode { exhaustive, bounded };

[[nodiscard]] auto to_string(ProofMode mode) -> std::string;

struct TableEntry {
    char function = 'f';
    int r = 2;
    int k = 0;
    /// Exact under exhaustive mode; under bounded mode a lower bound.
    int value = 0;
    ProofMode proof_mode = ProofMode::exhaustive;
    int side_size_limit = 0;
    /// Largest matching size enumerated and the isomorphism classes seen there.
    int max_size_checked = 0;
    std::uint64_t classes = 0;
};

/// Least t <= exhaustive_max_size with every system of k matchings of size t
/// having a full rainbow matching.
[[nodiscard]] auto table_f(int r, int k) -> TableEntry;

/// Minimum over systems of k matchings of size k of the maximum partial rainbow matching.
[[nodiscard]] auto table_g(int r, int k) -> TableEntry;

/// "f(2,2) = 3 (exhaustive)"; bounded entries print ">=".
[[nodiscard]] auto format_entry(const TableEntry & entry) -> std::string;
[[nodiscard]] auto format_entry_details(const TableEntry & entry) -> std::string;

enum class Target {
    seven_fourths,
    tripartite_half,
    woolbright,
    drisko,
    abm_degree,
    conj_full,
    conj_partial,
    conj_disjoint,
    conj_regular,
};

class UnknownTarget : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Accepts either underscores or hyphens ("conj-regular").
[[nodiscard]] auto parse_target(std::string_view name) -> Target;
[[nodiscard]] auto to_string(Target target) -> std::string;

struct VerifyParams {
    std::optional<int> k, r, t, side, q, m, n, d;
    bool exhaustive = false;
    /// conj_regular only: check this instance instead of sampling.
    std::optional<FamilySystem> input;
    std::string input_name;
};

struct VerifyOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct ViolationRecord {
    int trial = 0;
    nlohmann::ordered_json seed_material;
    int observed = 0;
    int required = 0;
    bool hypothesis_met = true;
    FamilySystem instance;
    /// Filled in once the witness has been written out.
    std::string instance_path;
};

enum class Status { holds, violated, inconclusive };

[[nodiscard]] auto to_string(Status status) -> std::string;

struct VerificationReport {
    std::string target;
    nlohmann::ordered_json params;
    int trials = 0;
    int valid_trials = 0;
    std::vector<ViolationRecord> violations;
    Status status = Status::inconclusive;
    /// Target-specific tallies, e.g. how often a stronger stated bound held.
    nlohmann::ordered_json observations = nlohmann::ordered_json::object();
    std::vector<std::string> notes;
};

/// Runs the target's trials. Per-trial seeds derive from (seed, trial), so
/// the report does not depend on the worker count. Throws
/// std::invalid_argument for missing or out-of-range parameters.
[[nodiscard]] auto verify(Target target, const VerifyParams & params, const VerifyOptions & options) -> VerificationReport;

inline constexpr std::string_view report_format = "rainbow-report/1";

[[nodiscard]] auto report_to_json(const VerificationReport & report) -> nlohmann::ordered_json;

/// ceil(k - sqrt(k)), computed in integers.
[[nodiscard]] auto woolbright_bound(int k) -> int;

} // namespace rainbow::harness
