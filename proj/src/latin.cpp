#include <rainbow/latin.hpp>
#include <rainbow/random.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <thread>

namespace rainbow::latin {

auto is_latin(int n, const std::vector<int> & cells) -> bool
{
    if (n < 1 || cells.size() != static_cast<std::size_t>(n) * n)
        return false;
    for (int s : cells)
        if (s < 1 || s > n)
            return false;
    for (int i = 0; i < n; ++i) {
        std::vector<bool> in_row(n + 1, false), in_col(n + 1, false);
        for (int j = 0; j < n; ++j) {
            int a = cells[static_cast<std::size_t>(i) * n + j], b = cells[static_cast<std::size_t>(j) * n + i];
            if (in_row[a] || in_col[b])
                return false;
            in_row[a] = in_col[b] = true;
        }
    }
    return true;
}

LatinSquare::LatinSquare(int n, std::vector<int> cells) : n_(n), cells_(std::move(cells))
{
    if (! is_latin(n_, cells_))
        throw std::invalid_argument("not a Latin square of order " + std::to_string(n));
}

auto LatinSquare::transposed() const -> LatinSquare
{
    std::vector<int> t(cells_.size());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            t[static_cast<std::size_t>(j) * n_ + i] = at(i, j);
    return {n_, std::move(t)};
}

auto LatinSquare::with_symbols_permuted(const std::vector<int> & symbol_perm) const -> LatinSquare
{
    if (static_cast<int>(symbol_perm.size()) != n_)
        throw std::invalid_argument("symbol permutation has wrong size");
    std::vector<int> t(cells_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c)
        t[c] = symbol_perm[cells_[c] - 1];
    return {n_, std::move(t)};
}

auto is_transversal(const LatinSquare & square, const Transversal & t) -> bool
{
    const int n = square.order();
    std::vector<bool> rows(n, false), cols(n, false), syms(n + 1, false);
    for (const auto & c : t.cells) {
        if (c.row < 0 || c.row >= n || c.col < 0 || c.col >= n)
            return false;
        const int s = square.at(c.row, c.col);
        if (rows[c.row] || cols[c.col] || syms[s])
            return false;
        rows[c.row] = cols[c.col] = syms[s] = true;
    }
    return true;
}

auto cyclic(int n) -> LatinSquare
{
    if (n < 1)
        throw std::invalid_argument("cyclic: order must be at least 1");
    std::vector<int> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cells.push_back((i + j) % n + 1);
    return {n, std::move(cells)};
}

namespace {

/// Fills row `row` column by column, trying symbols in `order`.
auto complete_row(int n, int row, int col, std::vector<int> & cells, std::vector<std::vector<bool>> & col_used,
    std::vector<bool> & row_used, const std::vector<int> & order) -> bool
{
    if (col == n)
        return true;
    for (int s : order) {
        if (row_used[s] || col_used[col][s])
            continue;
        row_used[s] = col_used[col][s] = true;
        cells[static_cast<std::size_t>(row) * n + col] = s;
        if (complete_row(n, row, col + 1, cells, col_used, row_used, order))
            return true;
        row_used[s] = col_used[col][s] = false;
    }
    return false;
}

} // namespace

auto random_latin(int n, std::uint64_t seed) -> LatinSquare
{
    if (n < 1)
        throw std::invalid_argument("random_latin: order must be at least 1");
    Rng rng(seed);
    std::vector<int> cells(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::vector<bool>> col_used(n, std::vector<bool>(n + 1, false));
    for (int row = 0; row < n; ++row) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 1);
        rng.shuffle(order);
        std::vector<bool> row_used(n + 1, false);
        // A Latin rectangle always extends by a row, so this cannot fail.
        if (! complete_row(n, row, 0, cells, col_used, row_used, order))
            throw IntegrityError("random_latin: row completion failed");
    }
    return {n, std::move(cells)};
}

auto to_hypergraph(const LatinSquare & square) -> FamilySystem
{
    const int n = square.order();
    FamilySystem sys{{{n, n, n}}, std::vector<Family>(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int s = square.at(i, j);
            sys.families[s - 1].push_back({i, j, s - 1});
        }
    return sys;
}

namespace {

class TransversalSearch {
public:
    explicit TransversalSearch(const LatinSquare & square) :
        square_(square), n_(square.order()), col_used_(n_, false), sym_used_(n_ + 1, false)
    {
    }

    auto run() -> Transversal
    {
        search(0);
        return {best_};
    }

private:
    void search(int row)
    {
        const int size = static_cast<int>(current_.size());
        if (size > static_cast<int>(best_.size()))
            best_ = current_;
        if (static_cast<int>(best_.size()) == n_ || row == n_)
            return;
        if (size + (n_ - row) <= static_cast<int>(best_.size()))
            return;
        for (int c = 0; c < n_; ++c) {
            const int s = square_.at(row, c);
            if (col_used_[c] || sym_used_[s])
                continue;
            col_used_[c] = sym_used_[s] = true;
            current_.push_back({row, c});
            search(row + 1);
            current_.pop_back();
            col_used_[c] = sym_used_[s] = false;
            if (static_cast<int>(best_.size()) == n_)
                return;
        }
        search(row + 1);
    }

    const LatinSquare & square_;
    int n_;
    std::vector<bool> col_used_, sym_used_;
    std::vector<Cell> current_, best_;
};

class SquareEnumerator {
public:
    SquareEnumerator(int n, const std::function<void(const LatinSquare &)> & visit) :
        n_(n), visit_(visit), cells_(static_cast<std::size_t>(n) * n, 0), row_used_(n, std::vector<bool>(n + 1, false)),
        col_used_(n, std::vector<bool>(n + 1, false))
    {
    }

    auto seed_first_row(const std::vector<int> & first_row) -> bool
    {
        for (int j = 0; j < n_; ++j) {
            const int s = first_row[j];
            if (s < 1 || s > n_ || row_used_[0][s])
                return false;
            cells_[j] = s;
            row_used_[0][s] = col_used_[j][s] = true;
        }
        return true;
    }

    void fill(std::size_t position)
    {
        if (position == cells_.size()) {
            visit_(LatinSquare(n_, cells_));
            return;
        }
        const int row = static_cast<int>(position) / n_, col = static_cast<int>(position) % n_;
        for (int s = 1; s <= n_; ++s) {
            if (row_used_[row][s] || col_used_[col][s])
                continue;
            row_used_[row][s] = col_used_[col][s] = true;
            cells_[position] = s;
            fill(position + 1);
            row_used_[row][s] = col_used_[col][s] = false;
        }
        cells_[position] = 0;
    }

private:
    int n_;
    const std::function<void(const LatinSquare &)> & visit_;
    std::vector<int> cells_;
    std::vector<std::vector<bool>> row_used_, col_used_;
};

void check_guard(int n)
{
    if (n < 1)
        throw std::invalid_argument("order must be at least 1");
    if (n > enumeration_limit)
        throw SizeGuardError("exhaustive Latin square enumeration is limited to order " + std::to_string(enumeration_limit));
}

} // namespace

auto max_transversal(const LatinSquare & square) -> Transversal
{
    return TransversalSearch(square).run();
}

void enumerate_all(int n, const std::function<void(const LatinSquare &)> & visit)
{
    check_guard(n);
    SquareEnumerator(n, visit).fill(0);
}

void enumerate_with_first_row(int n, const std::vector<int> & first_row, const std::function<void(const LatinSquare &)> & visit)
{
    check_guard(n);
    if (static_cast<int>(first_row.size()) != n)
        throw std::invalid_argument("first row has wrong length");
    SquareEnumerator e(n, visit);
    if (! e.seed_first_row(first_row))
        throw std::invalid_argument("first row is not a permutation of 1..n");
    e.fill(static_cast<std::size_t>(n));
}

namespace {

struct ShardResult {
    std::uint64_t squares = 0;
    int min_value = 0;
    std::optional<LatinSquare> witness;
    std::uint64_t brualdi_stein = 0, ryser = 0;
    std::optional<LatinSquare> counterexample;
};

auto sweep_shard(int n, const std::vector<int> & first_row) -> ShardResult
{
    ShardResult out;
    out.min_value = n + 1;
    enumerate_with_first_row(n, first_row, [&](const LatinSquare & square) {
        ++out.squares;
        const int value = max_transversal(square).size();
        if (value < out.min_value) {
            out.min_value = value;
            out.witness = square;
        }
        const bool bs = value < n - 1;
        const bool ryser = n % 2 == 1 && value < n;
        out.brualdi_stein += bs;
        out.ryser += ryser;
        if ((bs || ryser) && ! out.counterexample)
            out.counterexample = square;
    });
    return out;
}

} // namespace

auto sweep(int n, int workers) -> SweepReport
{
    check_guard(n);
    std::vector<std::vector<int>> rows;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do
        rows.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<ShardResult> shards(rows.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < rows.size();)
            shards[i] = sweep_shard(n, rows[i]);
    };
    const int threads = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
    if (threads == 1)
        work();
    else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }

    // Shards are in lexicographic first-row order, so the first strict
    // minimum is the same for any worker count.
    SweepReport report;
    report.order = n;
    report.min_max_transversal = n + 1;
    for (auto & s : shards) {
        report.squares += s.squares;
        if (s.min_value < report.min_max_transversal) {
            report.min_max_transversal = s.min_value;
            report.minimum_witness = s.witness;
        }
        report.brualdi_stein_violations += s.brualdi_stein;
        report.ryser_violations += s.ryser;
        if (s.counterexample && ! report.counterexample)
            report.counterexample = s.counterexample;
    }
    return report;
}

auto parse_square(std::string_view text) -> LatinSquare
{
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos)
                return true;
        }
        return false;
    };
    auto parse_ints = [](const std::string & s) {
        std::istringstream ls(s);
        std::vector<long long> values;
        std::string token;
        while (ls >> token) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(token, &used);
            }
            catch (const std::exception &) {
                throw ParseError("not an integer: '" + token + "'");
            }
            if (used != token.size())
                throw ParseError("not an integer: '" + token + "'");
            values.push_back(v);
        }
        return values;
    };

    if (! next_line())
        throw ParseError("empty Latin square file");
    auto header = parse_ints(line);
    if (header.size() != 1 || header[0] < 1 || header[0] > 4096)
        throw ParseError("first line must hold the order n");
    const int n = static_cast<int>(header[0]);
    std::vector<int> cells;
    for (int i = 0; i < n; ++i) {
        if (! next_line())
            throw ParseError("expected " + std::to_string(n) + " rows, got " + std::to_string(i));
        auto row = parse_ints(line);
        if (static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        for (auto v : row) {
            if (v < 1 || v > n)
                throw ParseError("symbol " + std::to_string(v) + " outside 1.." + std::to_string(n));
            cells.push_back(static_cast<int>(v));
        }
    }
    if (next_line())
        throw ParseError("trailing content after " + std::to_string(n) + " rows");
    if (! is_latin(n, cells))
        throw ParseError("rows and columns do not form a Latin square");
    return {n, std::move(cells)};
}

auto format_square(const LatinSquare & square) -> std::string
{
    std::ostringstream out;
    const int n = square.order();
    out << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out << (j ? " " : "") << square.at(i, j);
        out << '\n';
    }
    return out.str();
}

} // namespace rainbow::latin
