#pragma once

#include <rainbow/core.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rainbow::latin {

/// n x n array over symbols 1..n, each symbol once per row and column.
/// Rows and columns are 0-based.
class LatinSquare {
public:
    /// Throws std::invalid_argument unless cells form a Latin square.
    LatinSquare(int n, std::vector<int> cells);

    [[nodiscard]] auto order() const -> int { return n_; }
    [[nodiscard]] auto at(int row, int col) const -> int { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
    [[nodiscard]] auto cells() const -> const std::vector<int> & { return cells_; }

    [[nodiscard]] auto transposed() const -> LatinSquare;
    /// symbol_perm[s-1] is the new symbol for s.
    [[nodiscard]] auto with_symbols_permuted(const std::vector<int> & symbol_perm) const -> LatinSquare;

    auto operator==(const LatinSquare &) const -> bool = default;

private:
    int n_;
    std::vector<int> cells_;
};

[[nodiscard]] auto is_latin(int n, const std::vector<int> & cells) -> bool;

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell &) const = default;
};

struct Transversal {
    std::vector<Cell> cells;
    [[nodiscard]] auto size() const -> int { return static_cast<int>(cells.size()); }
};

[[nodiscard]] auto is_transversal(const LatinSquare & square, const Transversal & t) -> bool;

[[nodiscard]] auto cyclic(int n) -> LatinSquare;

/// Row-by-row completion: each row is a random permutation consistent with
/// the columns so far, found by backtracking. Deterministic per seed, not
/// uniform over Latin squares.
[[nodiscard]] auto random_latin(int n, std::uint64_t seed) -> LatinSquare;

/// 3-partite system (rows, columns, symbols); family s-1 holds the n cells
/// carrying symbol s, in row order.
[[nodiscard]] auto to_hypergraph(const LatinSquare & square) -> FamilySystem;

/// Exact maximum partial transversal with a witness.
[[nodiscard]] auto max_transversal(const LatinSquare & square) -> Transversal;

inline constexpr int enumeration_limit = 5;

/// Calls visit for every Latin square of order n exactly once, in
/// lexicographic order of the row-major cells. Throws SizeGuardError for
/// n > enumeration_limit.
void enumerate_all(int n, const std::function<void(const LatinSquare &)> & visit);

/// Same, restricted to squares whose first row is first_row.
void enumerate_with_first_row(int n, const std::vector<int> & first_row, const std::function<void(const LatinSquare &)> & visit);

struct SweepReport {
    int order = 0;
    std::uint64_t squares = 0;
    int min_max_transversal = 0;
    /// First square (in enumeration order) attaining the minimum.
    std::optional<LatinSquare> minimum_witness;
    /// Squares with max transversal below n-1.
    std::uint64_t brualdi_stein_violations = 0;
    /// For odd n, squares without a full transversal.
    std::uint64_t ryser_violations = 0;
    std::optional<LatinSquare> counterexample;
};

/// Scans every square of order n, sharded by first row over workers.
[[nodiscard]] auto sweep(int n, int workers = 1) -> SweepReport;

/// Text format: first line n, then n lines of n space-separated symbols.
[[nodiscard]] auto parse_square(std::string_view text) -> LatinSquare;
[[nodiscard]] auto format_square(const LatinSquare & square) -> std::string;

} // namespace rainbow::latin
