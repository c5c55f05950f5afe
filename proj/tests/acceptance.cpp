// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include "oracles.hpp"

#include <rainbow/constructions.hpp>
#include <rainbow/harness.hpp>
#include <rainbow/io.hpp>
#include <rainbow/random.hpp>
#include <rainbow/latin.hpp>
#include <rainbow/solver.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

using namespace rainbow;
namespace cn = rainbow::constructions;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

auto seconds_since(Clock::time_point start) -> double
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

auto workers() -> int
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string & what)
    {
        if (! ok) {
            if (pass)
                detail << "failed: ";
            else
                detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

int failures = 0;

void report(int number, const std::string & title, const std::function<void(Outcome &)> & body)
{
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    }
    catch (const std::exception & e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    failures += ! o.pass;
    std::printf("%s criterion %d: %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), elapsed, o.detail.str().c_str());
    std::fflush(stdout);
}

auto verify_all(Outcome & o, harness::Target target, int k_from, int k_to, int trials, std::uint64_t seed)
    -> std::map<int, harness::VerificationReport>
{
    std::map<int, harness::VerificationReport> reports;
    for (int k = k_from; k <= k_to; ++k) {
        harness::VerifyParams params;
        params.k = k;
        auto rep = harness::verify(target, params, {trials, seed, workers()});
        o.require(rep.status == harness::Status::holds, "k=" + std::to_string(k) + " status " + harness::to_string(rep.status));
        o.require(rep.violations.empty(), "k=" + std::to_string(k) + " has violations");
        o.require(rep.valid_trials == trials, "k=" + std::to_string(k) + " valid trials " + std::to_string(rep.valid_trials));
        reports.emplace(k, std::move(rep));
    }
    return reports;
}

auto run_cli(const fs::path & dir, const std::string & args, int & exit_code) -> std::string
{
    const std::string cmd = "cd '" + dir.string() + "' && '" RAINBOW_CLI_PATH "' " + args + " 2>/dev/null";
    std::string out;
    FILE * pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr)
        throw std::runtime_error("cannot start " + cmd);
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        out.append(buffer, n);
    const int status = ::pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void oracle_equivalence(Outcome & o)
{
    int checked = 0, mismatches = 0;
    const auto start = Clock::now();
    for (std::uint64_t i = 0; i < 500; ++i) {
        const int r = 2 + static_cast<int>(i % 2);
        const int k = 1 + static_cast<int>((i / 2) % 4);
        const int t = 1 + static_cast<int>((i / 8) % 4);
        const int side = t + static_cast<int>((i / 32) % 3);
        auto sys = harness::sample_family_system(r, k, t, side, derive_seed(1, {i}));
        const auto exact = max_rainbow(sys);
        const auto exhaustive = oracle_max_rainbow(sys);
        const int brute = oracle::rainbow_number(sys);
        ++checked;
        if (exact.optimal_size != exhaustive.optimal_size || exact.optimal_size != brute || ! validate_selection(sys, exact.selection))
            ++mismatches;
    }
    const double elapsed = seconds_since(start);
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    o.require(elapsed < 60.0, "took longer than 60 s");
    o.detail << checked << " instances, " << mismatches << " mismatches";
}

void constructions_check(Outcome & o)
{
    int solved = 0;
    double slowest = 0;
    auto expect = [&](const std::string & name, const FamilySystem & sys, int expected) {
        o.require(validate_instance(sys).valid(), name + " invalid");
        const auto start = Clock::now();
        const auto res = max_rainbow(sys);
        const double elapsed = seconds_since(start);
        slowest = std::max(slowest, elapsed);
        o.require(elapsed < 5.0, name + " solve over 5 s");
        o.require(res.status == SolveStatus::optimal && res.optimal_size == expected,
            name + " optimum " + std::to_string(res.optimal_size) + " expected " + std::to_string(expected));
        try {
            o.require(oracle_max_rainbow(sys).optimal_size == expected, name + " oracle disagrees");
        }
        catch (const SizeGuardError &) {
        }
        ++solved;
    };
    for (int k = 2; k <= 7; ++k)
        expect("standard(" + std::to_string(k) + ")", cn::standard(k), k - 1);
    for (int r = 2; r <= 4; ++r)
        expect("boolean_cube(" + std::to_string(r) + ")", cn::boolean_cube(r), 1);
    for (int r = 3; r <= 4; ++r)
        expect("g_upper(" + std::to_string(r) + ")", cn::g_upper(r), 1 << (r - 2));
    for (auto [k, q] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}})
        expect("absz(" + std::to_string(k) + "," + std::to_string(q) + ")", cn::absz(k, q), k);
    for (int k = 2; k <= 5; ++k)
        expect("drisko_sharp(" + std::to_string(k) + ")", cn::drisko_sharp(k), k - 1);
    for (int m = 2; m <= 3; ++m) {
        const auto sys = cn::wanless(m);
        const auto start = Clock::now();
        const bool full = has_full_rainbow(sys);
        o.require(seconds_since(start) < 5.0, "wanless solve over 5 s");
        o.require(! full, "wanless(" + std::to_string(m) + ") has a full rainbow matching");
        ++solved;
    }
    o.detail << solved << " constructions solved, slowest " << slowest << " s";
}

void good_edge_claims(Outcome & o)
{
    int deficient = 0, claim1 = 0, claim2 = 0, definition = 0;
    std::uint64_t sampled = 0;
    for (std::uint64_t i = 0; deficient < 300 && i < 100000; ++i) {
        const int k = 3 + deficient % 3;
        ++sampled;
        const auto sys = harness::sample_family_system(3, k, k, k, derive_seed(5, {i}));
        const auto res = max_rainbow(sys);
        const int p = res.optimal_size;
        if (p >= k)
            continue;
        ++deficient;
        const auto picked = selected_edges(sys, res.selection);
        const auto rep = good_edges(sys, res.selection);
        std::map<Pick, int> good_for;
        for (const auto & fam : rep.unrepresented) {
            const int g = static_cast<int>(fam.good.size());
            claim1 += g < k - 2 * p;
            definition += g != oracle::good_count(sys, picked, fam.family);
            for (const auto & pick : fam.good)
                ++good_for[pick];
        }
        for (const auto & [pick, count] : good_for)
            claim2 += count >= 3;
    }
    o.require(claim1 == 0, std::to_string(claim1) + " families with fewer than k-2p good edges");
    o.require(claim2 == 0, std::to_string(claim2) + " edges good for 3 families");
    o.require(definition == 0, std::to_string(definition) + " disagreements with the direct count");
    o.require(deficient == 300, "only " + std::to_string(deficient) + " systems with p < k");
    o.detail << deficient << " systems with p < k (" << sampled << " sampled), 0 violations of either claim";
}

void latin_sweeps(Outcome & o)
{
    const auto s4 = latin::sweep(4, workers());
    o.require(s4.squares == 576, "sweep(4) visited " + std::to_string(s4.squares));
    o.require(s4.min_max_transversal == 3, "sweep(4) min " + std::to_string(s4.min_max_transversal));
    o.require(s4.brualdi_stein_violations == 0, "sweep(4) below n-1");

    const auto start = Clock::now();
    const auto s5 = latin::sweep(5, workers());
    const double elapsed = seconds_since(start);
    o.require(s5.squares == 161280, "sweep(5) visited " + std::to_string(s5.squares));
    o.require(s5.min_max_transversal == 5, "sweep(5) min " + std::to_string(s5.min_max_transversal));
    o.require(s5.ryser_violations == 0, "sweep(5) squares without a full transversal");
    o.require(elapsed < 600.0, "sweep(5) over 10 min");

    const auto t6 = latin::max_transversal(latin::cyclic(6));
    o.require(t6.size() == 5 && latin::is_transversal(latin::cyclic(6), t6), "cyclic(6) max transversal " + std::to_string(t6.size()));
    o.detail << "576 squares min 3; 161280 squares min 5 in " << elapsed << " s; cyclic(6) -> " << t6.size();
}

void tables(Outcome & o)
{
    const auto f22 = harness::table_f(2, 2);
    const auto g22 = harness::table_g(2, 2);
    const auto g23 = harness::table_g(2, 3);
    for (const auto * e : {&f22, &g22, &g23})
        o.require(e->proof_mode == harness::ProofMode::exhaustive, harness::format_entry(*e) + " not exhaustive");
    o.require(f22.value == 3, harness::format_entry(f22));
    o.require(g22.value == 1, harness::format_entry(g22));
    o.require(g23.value == 2, harness::format_entry(g23));
    // g(2,k) <= k-1 and f(2,k) >= k+1
    o.require(g22.value <= 1 && g23.value <= 2 && f22.value >= 3, "inconsistent with the standard example bounds");
    o.detail << harness::format_entry(f22) << ", " << harness::format_entry(g22) << ", " << harness::format_entry(g23);
}

void fano(Outcome & o)
{
    const auto sys = cn::fano_multi(4);
    const auto nu = max_matching(sys);
    o.require(nu.size == 1, "nu = " + std::to_string(nu.size));
    o.require(oracle::matching_number(union_edges(sys)) == 1, "brute-force nu differs");
    for (const auto & side : vertex_degrees(sys))
        for (int d : side)
            o.require(d == 4, "vertex of degree " + std::to_string(d));
    harness::VerifyParams params;
    params.d = 4;
    params.input = sys;
    params.input_name = "fano_multi(4)";
    const auto rep = harness::verify(harness::Target::conj_regular, params, {});
    const bool flagged = std::find(rep.notes.begin(), rep.notes.end(),
                             "instance has repeated edges; conjecture hypothesis (simple) not met") != rep.notes.end();
    o.require(flagged, "checker did not flag the simple hypothesis");
    o.require(! rep.violations.empty() && ! rep.violations.front().hypothesis_met, "violation not marked as hypothesis failure");
    o.detail << "nu = 1, all degrees 4, simple hypothesis reported violated";
}

void determinism(Outcome & o)
{
    const auto dir = fs::temp_directory_path() / ("rainbow-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    int code = 0;
    run_cli(dir, "construct standard --k 5 -o s5.json", code);
    o.require(code == 0, "construct failed");
    run_cli(dir, "construct fano-multi --d 4 -o fano4.json", code);
    const std::vector<std::string> commands{
        "solve --json s5.json",
        "solve --oracle --json s5.json",
        "construct g-upper --r 4",
        "verify seven-fourths --k 5 --trials 300 --seed 11 --json",
        "verify tripartite-half --k 6 --trials 300 --seed 12 --json --workers 4",
        "verify conj-full --k 2 --exhaustive --json",
        "verify conj-disjoint --k 3 --trials 100 --seed 2 --json",
        "verify abm-degree --q 2 --m 3 --trials 100 --seed 3 --json",
        "verify conj-regular --input fano4.json --d 4 --json",
        "latin sweep --order 4 --json",
        "latin transversal --json c6.txt",
        "table g --r 2 --k 2 --json",
    };
    run_cli(dir, "latin gen --order 6 --kind random --seed 8 -o c6.txt", code);
    int identical = 0;
    for (const auto & cmd : commands) {
        int c1 = 0, c2 = 0;
        const auto a = run_cli(dir, cmd, c1);
        const auto b = run_cli(dir, cmd, c2);
        const bool parses = nlohmann::json::accept(a);
        o.require(parses && ! a.empty(), "'" + cmd + "' did not print JSON");
        o.require(a == b && c1 == c2, "'" + cmd + "' differs between runs");
        identical += a == b && c1 == c2;
    }
    // report files written by --report must match too
    run_cli(dir, "verify drisko --k 4 --trials 200 --seed 5 --report r1.json", code);
    run_cli(dir, "verify drisko --k 4 --trials 200 --seed 5 --workers 3 --report r2.json", code);
    const bool reports_equal = read_text_file(dir / "r1.json") == read_text_file(dir / "r2.json");
    o.require(reports_equal, "report files differ");
    fs::remove_all(dir);
    o.detail << identical << " of " << commands.size() << " commands byte-identical; report files "
             << (reports_equal ? "identical" : "differ");
}

} // namespace

int main()
{
    std::printf("acceptance run with %d workers\n", workers());

    report(1, "max_rainbow equals the exhaustive oracle on 500 random instances", oracle_equivalence);

    report(2, "extremal constructions attain their stated optima", constructions_check);

    report(3, "k matchings of size ceil(7k/4) have a full rainbow matching (k=2..6)", [](Outcome & o) {
        const auto start = Clock::now();
        verify_all(o, harness::Target::seven_fourths, 2, 6, 1000, 3);
        o.require(seconds_since(start) < 120.0, "over 2 min");
        o.detail << "5000 trials, 0 violations";
    });

    report(4, "3-partite: partial rainbow matching of size >= ceil((k-1)/2) (k=2..6)", [](Outcome & o) {
        auto reports = verify_all(o, harness::Target::tripartite_half, 2, 6, 1000, 4);
        o.detail << "0 violations; ceil(k/2) reached in";
        for (const auto & [k, rep] : reports)
            o.detail << " k=" << k << ":" << rep.observations.value("stated_bound_met", 0) << "/" << rep.valid_trials;
    });

    report(5, "good-edge claims on 300 random 3-partite systems", good_edge_claims);

    report(6, "bipartite: partial rainbow matching of size >= ceil(k - sqrt(k)) (k=4..9)", [](Outcome & o) {
        verify_all(o, harness::Target::woolbright, 4, 9, 500, 6);
        o.detail << "3000 trials, 0 violations";
    });

    report(7, "2k-1 matchings of size k have a rainbow matching of size k (k=2..5, exhaustive at k=2)", [](Outcome & o) {
        verify_all(o, harness::Target::drisko, 2, 5, 1000, 7);
        harness::VerifyParams params;
        params.k = 2;
        params.exhaustive = true;
        const auto rep = harness::verify(harness::Target::drisko, params, {1, 0, workers()});
        o.require(rep.status == harness::Status::holds, "exhaustive k=2 status " + harness::to_string(rep.status));
        o.detail << "4000 trials and " << rep.trials << " isomorphism classes at k=2, 0 violations";
    });

    report(8, "Latin square sweeps of orders 4 and 5, cyclic(6)", latin_sweeps);

    report(9, "exhaustive f/g tables", tables);

    report(10, "Fano multigraph: nu = 1, 4-regular, simple hypothesis violated", fano);

    report(11, "CLI JSON output is byte-identical across runs", determinism);

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
