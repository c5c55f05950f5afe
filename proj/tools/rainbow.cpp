// rainbow: command-line front end for the rainbow matching library.
//
// Exit codes: 0 success/holds, 2 usage or parse error, 3 counterexample or
// integrity failure, 4 resource limit (timeout, size guard), 5 inconclusive.

#include <rainbow/constructions.hpp>
#include <rainbow/core.hpp>
#include <rainbow/harness.hpp>
#include <rainbow/io.hpp>
#include <rainbow/latin.hpp>
#include <rainbow/solver.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace rainbow;

enum Exit : int { ok = 0, usage = 2, counterexample = 3, resource = 4, inconclusive = 5 };

/// Usage-level failure carrying its exit code.
struct CommandError {
    int code;
    std::string message;
};

auto read_input(const std::string & path) -> std::string
{
    if (path.empty() || path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return read_text_file(path);
}

void print_selection(const FamilySystem & sys, const RainbowSelection & sel)
{
    for (const auto & p : sel.picks)
        std::cout << "  family " << p.family << ": edge " << p.edge_index << ' '
                  << to_string(sys.families[p.family][p.edge_index]) << '\n';
}

auto time_limit_of(std::optional<double> seconds) -> SolveOptions
{
    SolveOptions options;
    if (seconds)
        options.time_limit = std::chrono::milliseconds(static_cast<long long>(*seconds * 1000.0));
    return options;
}

struct SolveArgs {
    std::string path;
    bool oracle = false;
    bool full_only = false;
    std::optional<double> time_limit;
    bool json = false;
    bool timing = false;
};

auto command_solve(const SolveArgs & args) -> int
{
    const auto sys = parse_instance(read_input(args.path));
    const auto options = time_limit_of(args.time_limit);
    if (args.oracle && ! oracle_feasible(sys))
        throw SizeGuardError("oracle: selection space exceeds " + std::to_string(oracle_limit));

    SolveResult result;
    if (args.full_only) {
        result = find_full_rainbow(sys, options);
        // Without a full matching the early-exit search only proves "not
        // full"; the exact optimum still has to be computed.
        if (! result.full && result.status == SolveStatus::optimal) {
            const auto nodes = result.nodes_explored;
            result = max_rainbow(sys, options);
            result.nodes_explored += nodes;
        }
    }
    else
        result = max_rainbow(sys, options);

    if (args.json)
        std::cout << result_to_json(result, args.timing).dump() << '\n';
    else {
        if (result.status == SolveStatus::timeout)
            std::cout << "timeout: best found " << result.optimal_size << " of " << sys.m() << " (not proven optimal)\n";
        else if (args.full_only)
            std::cout << (result.full ? "full rainbow matching found" : "no full rainbow matching") << " (optimal "
                      << result.optimal_size << " of " << sys.m() << ")\n";
        else
            std::cout << "optimal " << result.optimal_size << " of " << sys.m() << (result.full ? " (full)" : " (not full)") << '\n';
        print_selection(sys, result.selection);
        std::cout << "nodes explored " << result.nodes_explored << '\n';
    }
    if (result.status == SolveStatus::timeout)
        return resource;

    if (args.oracle) {
        const auto check = oracle_max_rainbow(sys);
        if (check.optimal_size != result.optimal_size) {
            std::cerr << "oracle disagrees: oracle " << check.optimal_size << ", solver " << result.optimal_size << '\n';
            return counterexample;
        }
        (args.json ? std::cerr : std::cout) << "oracle agrees\n";
    }
    return ok;
}

struct ConstructArgs {
    std::string name;
    std::optional<int> k, m, r, q, d, p;
    std::string input;
    std::string output;
};

auto need(const std::optional<int> & v, const char * flag) -> int
{
    if (! v)
        throw CommandError{usage, std::string("missing --") + flag};
    return *v;
}

auto command_construct(const ConstructArgs & args) -> int
{
    namespace c = constructions;
    FamilySystem sys;
    const auto & n = args.name;
    if (n == "standard")
        sys = c::standard(need(args.k, "k"));
    else if (n == "wanless")
        sys = c::wanless(need(args.m, "m"));
    else if (n == "boolean-cube")
        sys = c::boolean_cube(need(args.r, "r"));
    else if (n == "g-upper")
        sys = c::g_upper(need(args.r, "r"));
    else if (n == "absz")
        sys = c::absz(need(args.k, "k"), need(args.q, "q"));
    else if (n == "drisko-sharp")
        sys = c::drisko_sharp(need(args.k, "k"));
    else if (n == "fano-multi")
        sys = c::fano_multi(need(args.d, "d"));
    else if (n == "pad") {
        if (args.input.empty())
            throw CommandError{usage, "pad needs --input"};
        sys = pad_families(read_instance(args.input), need(args.p, "p"));
    }
    else
        throw CommandError{usage, "unknown construction '" + n + "'"};

    if (args.output.empty()) {
        std::cout << serialize_instance(sys);
        return ok;
    }
    write_instance(args.output, sys);
    std::cout << "wrote " << args.output << '\n' << "families " << sys.m() << ", sizes";
    for (const auto & f : sys.families)
        std::cout << ' ' << f.size();
    std::cout << "\nmax vertex degree " << max_degree(sys) << '\n';
    if (sys.total_edges() <= 256) {
        auto result = max_rainbow(sys, time_limit_of(2.0));
        if (result.status == SolveStatus::optimal)
            std::cout << "optimal rainbow " << result.optimal_size << " of " << sys.m() << (result.full ? " (full)" : " (not full)")
                      << '\n';
    }
    return ok;
}

struct VerifyArgs {
    std::string target;
    harness::VerifyParams params;
    std::string input;
    int trials = 100;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string report;
    bool json = false;
};

auto command_verify(VerifyArgs args) -> int
{
    harness::Target target;
    try {
        target = harness::parse_target(args.target);
    }
    catch (const harness::UnknownTarget & e) {
        throw CommandError{usage, e.what()};
    }
    if (! args.input.empty()) {
        args.params.input = read_instance(args.input);
        args.params.input_name = args.input;
    }
    harness::VerifyOptions options{args.trials, args.seed, args.workers};
    auto report = harness::verify(target, args.params, options);

    // Witnesses sit next to the report, or in the working directory.
    std::filesystem::path base = args.report.empty() ? std::filesystem::path(report.target) : std::filesystem::path(args.report);
    for (auto & v : report.violations) {
        auto witness = base;
        witness.replace_filename(base.stem().string() + "-witness-" + std::to_string(v.trial) + ".json");
        write_instance(witness, v.instance);
        v.instance_path = witness.string();
    }
    const auto doc = harness::report_to_json(report).dump(2) + "\n";
    if (! args.report.empty())
        write_text_file(args.report, doc);

    if (args.json)
        std::cout << doc;
    else {
        std::cout << report.target << ": " << harness::to_string(report.status) << " (" << report.valid_trials << " of "
                  << report.trials << " trials valid, " << report.violations.size() << " violations)\n";
        for (const auto & v : report.violations)
            std::cout << "  trial " << v.trial << ": observed " << v.observed << " < required " << v.required
                      << (v.hypothesis_met ? "" : " (hypothesis not met)") << ", witness " << v.instance_path << '\n';
        for (const auto & note : report.notes)
            std::cout << "  note: " << note << '\n';
        if (! args.report.empty())
            std::cout << "report " << args.report << '\n';
    }
    switch (report.status) {
    case harness::Status::holds: return ok;
    case harness::Status::violated: return counterexample;
    case harness::Status::inconclusive: return inconclusive;
    }
    return inconclusive;
}

struct LatinArgs {
    std::string input;
    std::string output;
    int order = 0;
    std::string kind = "cyclic";
    std::uint64_t seed = 0;
    int workers = 1;
    bool json = false;
};

auto guard_to_usage(auto && fn) -> int
{
    try {
        return fn();
    }
    catch (const SizeGuardError & e) {
        throw CommandError{usage, e.what()};
    }
}

auto command_latin_gen(const LatinArgs & args) -> int
{
    if (args.order < 1)
        throw CommandError{usage, "--order must be at least 1"};
    std::optional<latin::LatinSquare> square;
    if (args.kind == "cyclic")
        square = latin::cyclic(args.order);
    else if (args.kind == "random")
        square = latin::random_latin(args.order, args.seed);
    else
        throw CommandError{usage, "--kind must be cyclic or random"};
    const auto text = latin::format_square(*square);
    if (args.output.empty())
        std::cout << text;
    else
        write_text_file(args.output, text);
    return ok;
}

auto command_latin_transversal(const LatinArgs & args) -> int
{
    const auto square = latin::parse_square(read_input(args.input));
    const auto t = latin::max_transversal(square);
    if (args.json) {
        nlohmann::ordered_json doc;
        doc["format"] = "rainbow-transversal/1";
        doc["order"] = square.order();
        doc["size"] = t.size();
        auto cells = nlohmann::ordered_json::array();
        for (const auto & c : t.cells)
            cells.push_back({{"row", c.row}, {"col", c.col}, {"symbol", square.at(c.row, c.col)}});
        doc["cells"] = std::move(cells);
        std::cout << doc.dump() << '\n';
        return ok;
    }
    std::cout << "max transversal " << t.size() << " of " << square.order() << '\n';
    for (const auto & c : t.cells)
        std::cout << "  row " << c.row << " col " << c.col << " symbol " << square.at(c.row, c.col) << '\n';
    return ok;
}

auto command_latin_hypergraph(const LatinArgs & args) -> int
{
    const auto sys = latin::to_hypergraph(latin::parse_square(read_input(args.input)));
    if (args.output.empty())
        std::cout << serialize_instance(sys);
    else
        write_instance(args.output, sys);
    return ok;
}

auto command_latin_sweep(const LatinArgs & args) -> int
{
    return guard_to_usage([&] {
        const auto report = latin::sweep(args.order, args.workers);
        const bool violated = report.brualdi_stein_violations > 0 || report.ryser_violations > 0;
        if (args.json) {
            nlohmann::ordered_json doc;
            doc["format"] = "rainbow-sweep/1";
            doc["order"] = report.order;
            doc["squares"] = report.squares;
            doc["min_max_transversal"] = report.min_max_transversal;
            doc["brualdi_stein_violations"] = report.brualdi_stein_violations;
            doc["ryser_violations"] = report.ryser_violations;
            doc["minimum_witness"] = report.minimum_witness ? latin::format_square(*report.minimum_witness) : "";
            std::cout << doc.dump() << '\n';
        }
        else {
            std::cout << "min max-transversal = " << report.min_max_transversal << " over " << report.squares << " squares\n";
            std::cout << "squares below n-1: " << report.brualdi_stein_violations << '\n';
            if (report.order % 2 == 1)
                std::cout << "odd order squares without a full transversal: " << report.ryser_violations << '\n';
            if (report.minimum_witness)
                std::cout << "first square attaining the minimum:\n" << latin::format_square(*report.minimum_witness);
        }
        return violated ? counterexample : ok;
    });
}

struct TableArgs {
    std::string function;
    int r = 2;
    int k = 2;
    bool json = false;
};

auto command_table(const TableArgs & args) -> int
{
    return guard_to_usage([&] {
        const auto entry = args.function == "f" ? harness::table_f(args.r, args.k) : harness::table_g(args.r, args.k);
        if (args.json) {
            nlohmann::ordered_json doc;
            doc["format"] = "rainbow-table/1";
            doc["function"] = std::string(1, entry.function);
            doc["r"] = entry.r;
            doc["k"] = entry.k;
            doc["value"] = entry.value;
            doc["proof_mode"] = harness::to_string(entry.proof_mode);
            doc["side_size_limit"] = entry.side_size_limit;
            doc["max_size_checked"] = entry.max_size_checked;
            doc["classes"] = entry.classes;
            std::cout << doc.dump() << '\n';
        }
        else
            std::cout << harness::format_entry(entry) << '\n' << "  " << harness::format_entry_details(entry) << '\n';
        return ok;
    });
}

auto run(int argc, char ** argv) -> int
{
    CLI::App app{"Maximum rainbow matchings, extremal constructions, and bound verification"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto * solve_cmd = app.add_subcommand("solve", "Maximum partial rainbow matching of an instance file");
    solve_cmd->add_option("path", solve.path, "rainbow-instance/1 file ('-' for stdin)")->required();
    solve_cmd->add_flag("--oracle", solve.oracle, "Cross-check against exhaustive enumeration");
    solve_cmd->add_flag("--full-only", solve.full_only, "Stop at the first full rainbow matching");
    solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds before giving up with a lower bound")
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_flag("--json", solve.json, "Print a rainbow-result/1 document");
    solve_cmd->add_flag("--timing", solve.timing, "Fill elapsed_ms in JSON output (makes output run-dependent)");

    ConstructArgs construct;
    auto * construct_cmd = app.add_subcommand("construct", "Write a named extremal construction");
    construct_cmd
        ->add_option("name", construct.name, "standard, wanless, boolean-cube, g-upper, absz, drisko-sharp, fano-multi, pad")
        ->required();
    construct_cmd->add_option("--k", construct.k);
    construct_cmd->add_option("--m", construct.m);
    construct_cmd->add_option("--r", construct.r);
    construct_cmd->add_option("--q", construct.q);
    construct_cmd->add_option("--d", construct.d);
    construct_cmd->add_option("--p", construct.p, "Padding edges (pad)");
    construct_cmd->add_option("--input", construct.input, "Instance to pad (pad)");
    construct_cmd->add_option("-o,--output", construct.output, "Output path; stdout when omitted");

    VerifyArgs verify;
    auto * verify_cmd = app.add_subcommand("verify", "Randomized or exhaustive check of a bound");
    verify_cmd->add_option("target", verify.target, "seven-fourths, tripartite-half, woolbright, drisko, abm-degree, conj-full, "
                                                    "conj-partial, conj-disjoint, conj-regular")
        ->required();
    verify_cmd->add_option("--k", verify.params.k);
    verify_cmd->add_option("--r", verify.params.r);
    verify_cmd->add_option("--t", verify.params.t);
    verify_cmd->add_option("--side", verify.params.side, "Side size (default: the dense case)");
    verify_cmd->add_option("--q", verify.params.q);
    verify_cmd->add_option("--m", verify.params.m);
    verify_cmd->add_option("--n", verify.params.n);
    verify_cmd->add_option("--d", verify.params.d);
    verify_cmd->add_option("--input", verify.input, "Instance to check (conj-regular)");
    verify_cmd->add_flag("--exhaustive", verify.params.exhaustive, "Enumerate all systems up to isomorphism");
    verify_cmd->add_option("--trials", verify.trials)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify.seed);
    verify_cmd->add_option("--workers", verify.workers)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--report", verify.report, "Write the rainbow-report/1 document here");
    verify_cmd->add_flag("--json", verify.json, "Print the report instead of a summary");

    LatinArgs latin_args;
    auto * latin_cmd = app.add_subcommand("latin", "Latin squares and transversals");
    latin_cmd->require_subcommand(1);
    auto * gen_cmd = latin_cmd->add_subcommand("gen", "Generate a Latin square");
    gen_cmd->add_option("--order", latin_args.order)->required();
    gen_cmd->add_option("--kind", latin_args.kind, "cyclic or random");
    gen_cmd->add_option("--seed", latin_args.seed);
    gen_cmd->add_option("-o,--output", latin_args.output);
    auto * transversal_cmd = latin_cmd->add_subcommand("transversal", "Maximum partial transversal");
    transversal_cmd->add_option("path", latin_args.input, "Square file (stdin when omitted)");
    transversal_cmd->add_flag("--json", latin_args.json);
    auto * hypergraph_cmd = latin_cmd->add_subcommand("hypergraph", "Convert a square to a rainbow instance");
    hypergraph_cmd->add_option("path", latin_args.input, "Square file (stdin when omitted)");
    hypergraph_cmd->add_option("-o,--output", latin_args.output);
    auto * sweep_cmd = latin_cmd->add_subcommand("sweep", "Exhaustive transversal sweep over all squares of an order");
    sweep_cmd->add_option("--order", latin_args.order)->required();
    sweep_cmd->add_option("--workers", latin_args.workers)->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--json", latin_args.json);

    TableArgs table;
    auto * table_cmd = app.add_subcommand("table", "Exact f(r,k) or g(r,k) by exhaustive enumeration");
    table_cmd->add_option("function", table.function, "f or g")->required()->check(CLI::IsMember({"f", "g"}));
    table_cmd->add_option("--r", table.r);
    table_cmd->add_option("--k", table.k);
    table_cmd->add_flag("--json", table.json);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*solve_cmd)
            return command_solve(solve);
        if (*construct_cmd)
            return command_construct(construct);
        if (*verify_cmd)
            return command_verify(verify);
        if (*gen_cmd)
            return command_latin_gen(latin_args);
        if (*transversal_cmd)
            return command_latin_transversal(latin_args);
        if (*hypergraph_cmd)
            return command_latin_hypergraph(latin_args);
        if (*sweep_cmd)
            return command_latin_sweep(latin_args);
        if (*table_cmd)
            return command_table(table);
    }
    catch (const CommandError & e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const IntegrityError & e) {
        std::cerr << "integrity failure: " << e.what() << '\n';
        return counterexample;
    }
    catch (const SizeGuardError & e) {
        std::cerr << "size guard: " << e.what() << '\n';
        return resource;
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

} // namespace

auto main(int argc, char ** argv) -> int
{
    return run(argc, argv);
}
