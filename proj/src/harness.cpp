#include <rainbow/harness.hpp>
#include <rainbow/random.hpp>
#include <rainbow/solver.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>

namespace rainbow::harness {

auto sample_family_system(int r, int k, int t, int side_size, std::uint64_t seed) -> FamilySystem
{
    if (r < 2)
        throw std::invalid_argument("sample_family_system: r must be at least 2");
    if (k < 0 || t < 0)
        throw std::invalid_argument("sample_family_system: k and t must be non-negative");
    if (side_size < 1 || t > side_size)
        throw std::invalid_argument("sample_family_system: need 1 <= side_size and t <= side_size");

    Rng rng(seed);
    FamilySystem sys{{std::vector<int>(r, side_size)}, {}};
    std::vector<int> labels(side_size);
    for (int i = 0; i < k; ++i) {
        Family fam(t, Edge(std::vector<int>(r, 0)));
        for (int j = 0; j < r; ++j) {
            std::iota(labels.begin(), labels.end(), 0);
            rng.shuffle(labels);
            for (int x = 0; x < t; ++x)
                fam[x].coords[j] = labels[x];
        }
        sys.families.push_back(std::move(fam));
    }
    return sys;
}

auto woolbright_bound(int k) -> int
{
    if (k < 0)
        throw std::invalid_argument("woolbright_bound: k must be non-negative");
    int root = 0;
    while ((root + 1) * (root + 1) <= k)
        ++root;
    // ceil(k - sqrt(k)) = k - floor(sqrt(k))
    return k - root;
}

auto to_string(Status status) -> std::string
{
    switch (status) {
    case Status::holds: return "holds";
    case Status::violated: return "violated";
    case Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct TargetName {
    Target target;
    const char * name;
};

constexpr TargetName target_names[] = {
    {Target::seven_fourths, "seven_fourths"},
    {Target::tripartite_half, "tripartite_half"},
    {Target::woolbright, "woolbright"},
    {Target::drisko, "drisko"},
    {Target::abm_degree, "abm_degree"},
    {Target::conj_full, "conj_full"},
    {Target::conj_partial, "conj_partial"},
    {Target::conj_disjoint, "conj_disjoint"},
    {Target::conj_regular, "conj_regular"},
};

} // namespace

auto parse_target(std::string_view name) -> Target
{
    std::string normalized(name);
    std::replace(normalized.begin(), normalized.end(), '-', '_');
    for (const auto & [target, known] : target_names)
        if (normalized == known)
            return target;
    throw UnknownTarget("unknown verification target '" + std::string(name) + "'");
}

auto to_string(Target target) -> std::string
{
    for (const auto & [t, known] : target_names)
        if (t == target)
            return known;
    return "unknown";
}

namespace {

struct TrialOutcome {
    bool valid = false;
    bool hypothesis_met = true;
    int observed = 0;
    int required = 0;
    /// Optional second, stronger bound tallied in observations.
    bool stated_bound_met = true;
    FamilySystem instance;
};

using TrialFn = std::function<TrialOutcome(int trial, std::uint64_t trial_seed)>;

auto need(const std::optional<int> & value, const char * name, int minimum) -> int
{
    if (! value)
        throw std::invalid_argument(std::string("missing parameter --") + name);
    if (*value < minimum)
        throw std::invalid_argument(std::string("parameter --") + name + " must be at least " + std::to_string(minimum));
    return *value;
}

auto side_or(const VerifyParams & params, int at_least) -> int
{
    if (! params.side)
        return at_least;
    if (*params.side < at_least)
        throw std::invalid_argument("parameter --side must be at least " + std::to_string(at_least));
    return *params.side;
}

/// Exact optimum for a sampled system, judged against a lower bound.
auto judge(FamilySystem sys, int required) -> TrialOutcome
{
    TrialOutcome out;
    out.valid = true;
    out.observed = max_rainbow(sys).optimal_size;
    out.required = required;
    out.instance = std::move(sys);
    return out;
}

auto shares_edge(const Family & a, const Family & b) -> bool
{
    std::set<Edge> values(a.begin(), a.end());
    return std::any_of(b.begin(), b.end(), [&](const Edge & e) { return values.contains(e); });
}

/// n x n x n system, d perfect matchings {(x, sigma(x), tau(x))} that share no edge.
auto sample_regular(int n, int d, std::uint64_t seed) -> std::optional<FamilySystem>
{
    constexpr int attempts = 1000;
    FamilySystem sys{{{n, n, n}}, {}};
    Family all;
    for (int f = 0; f < d; ++f) {
        bool placed = false;
        for (int attempt = 0; attempt < attempts && ! placed; ++attempt) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(attempt)}));
            std::vector<int> sigma(n), tau(n);
            std::iota(sigma.begin(), sigma.end(), 0);
            std::iota(tau.begin(), tau.end(), 0);
            rng.shuffle(sigma);
            rng.shuffle(tau);
            Family m;
            for (int x = 0; x < n; ++x)
                m.push_back({x, sigma[x], tau[x]});
            if (! shares_edge(all, m)) {
                all.insert(all.end(), m.begin(), m.end());
                placed = true;
            }
        }
        if (! placed)
            return std::nullopt;
    }
    sys.families.push_back(std::move(all));
    return sys;
}

struct RegularCheck {
    bool three_partite_square = false;
    bool regular = false;
    bool simple = false;
    int n = 0;
    int d = 0;
};

auto check_regular(const FamilySystem & sys, std::optional<int> d) -> RegularCheck
{
    RegularCheck c;
    c.three_partite_square = sys.r() == 3 && sys.universe.side_sizes[0] == sys.universe.side_sizes[1]
        && sys.universe.side_sizes[1] == sys.universe.side_sizes[2];
    c.n = sys.universe.side_sizes.empty() ? 0 : sys.universe.side_sizes[0];
    auto degrees = vertex_degrees(sys);
    c.d = d ? *d : (degrees.empty() || degrees[0].empty() ? 0 : degrees[0][0]);
    c.regular = c.d >= 1;
    for (const auto & side : degrees)
        for (int deg : side)
            c.regular = c.regular && deg == c.d;
    c.simple = is_simple(sys);
    return c;
}

auto ceil_div(long long a, long long b) -> int
{
    return static_cast<int>((a + b - 1) / b);
}

/// Maps each target onto a trial function and its resolved parameters.
struct Plan {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    TrialFn trial;
    /// Set when trials come from exhaustive enumeration instead of sampling.
    std::optional<std::pair<int, int>> exhaustive_families_and_size;
    std::function<int()> exhaustive_required;
    bool conjecture = false;
    std::string stated_bound_name;
};

auto plan_for(Target target, const VerifyParams & p) -> Plan
{
    Plan plan;
    auto & out = plan.params;
    const auto reject_exhaustive = [&] {
        if (p.exhaustive)
            throw std::invalid_argument("target " + to_string(target) + " has no exhaustive mode");
    };

    switch (target) {
    case Target::seven_fourths: {
        reject_exhaustive();
        const int k = need(p.k, "k", 1);
        const int t = ceil_div(7LL * k, 4);
        const int side = side_or(p, t);
        out = {{"r", 2}, {"k", k}, {"t", t}, {"side", side}};
        plan.trial = [=](int, std::uint64_t seed) { return judge(sample_family_system(2, k, t, side, seed), k); };
        break;
    }
    case Target::tripartite_half: {
        reject_exhaustive();
        const int k = need(p.k, "k", 1);
        const int side = side_or(p, k);
        const int proof_bound = k / 2; // ceil((k-1)/2)
        const int stated_bound = ceil_div(k, 2);
        out = {{"r", 3}, {"k", k}, {"t", k}, {"side", side}, {"required", proof_bound}, {"stated_bound", stated_bound}};
        plan.stated_bound_name = "stated_bound_met";
        plan.trial = [=](int, std::uint64_t seed) {
            auto o = judge(sample_family_system(3, k, k, side, seed), proof_bound);
            o.stated_bound_met = o.observed >= stated_bound;
            return o;
        };
        break;
    }
    case Target::woolbright: {
        reject_exhaustive();
        const int k = need(p.k, "k", 1);
        const int side = side_or(p, k);
        const int bound = woolbright_bound(k);
        out = {{"r", 2}, {"k", k}, {"t", k}, {"side", side}, {"required", bound}};
        plan.trial = [=](int, std::uint64_t seed) { return judge(sample_family_system(2, k, k, side, seed), bound); };
        break;
    }
    case Target::drisko: {
        const int k = need(p.k, "k", 1);
        const int families = 2 * k - 1;
        if (p.exhaustive) {
            out = {{"r", 2}, {"k", k}, {"families", families}, {"t", k}, {"mode", "exhaustive"}};
            plan.exhaustive_families_and_size = {families, k};
            plan.exhaustive_required = [=] { return k; };
            break;
        }
        const int side = side_or(p, k);
        out = {{"r", 2}, {"k", k}, {"families", families}, {"t", k}, {"side", side}};
        plan.trial = [=](int, std::uint64_t seed) { return judge(sample_family_system(2, families, k, side, seed), k); };
        break;
    }
    case Target::abm_degree: {
        reject_exhaustive();
        const int q = p.q ? need(p.q, "q", 2) : (p.r ? need(p.r, "r", 2) : 2);
        const int m = p.m ? need(p.m, "m", 1) : (p.k ? need(p.k, "k", 1) : 2);
        const int t = p.t ? need(p.t, "t", 1) : q * m;
        const int side = side_or(p, t);
        constexpr int attempts = 100;
        out = {{"q", q}, {"m", m}, {"t", t}, {"side", side}, {"max_attempts", attempts}};
        plan.trial = [=](int, std::uint64_t seed) {
            for (int attempt = 0; attempt < attempts; ++attempt) {
                auto sys = sample_family_system(q, m, t, side, derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
                // Families are uniform of size t; the hypothesis is |F_i| >= q * Delta.
                if (static_cast<long long>(t) >= static_cast<long long>(q) * max_degree(sys))
                    return judge(std::move(sys), m);
            }
            return TrialOutcome{};
        };
        break;
    }
    case Target::conj_full:
    case Target::conj_partial: {
        plan.conjecture = true;
        const int k = need(p.k, "k", 1);
        const int t = target == Target::conj_full ? k + 1 : k;
        const int required = target == Target::conj_full ? k : k - 1;
        const int r = p.r ? need(p.r, "r", 2) : 2;
        if (p.exhaustive) {
            if (r != 2)
                throw std::invalid_argument("exhaustive mode needs r = 2");
            out = {{"r", r}, {"k", k}, {"t", t}, {"required", required}, {"mode", "exhaustive"}};
            plan.exhaustive_families_and_size = {k, t};
            plan.exhaustive_required = [=] { return required; };
            break;
        }
        const int side = side_or(p, t);
        out = {{"r", r}, {"k", k}, {"t", t}, {"side", side}, {"required", required}};
        plan.trial = [=](int, std::uint64_t seed) { return judge(sample_family_system(r, k, t, side, seed), required); };
        break;
    }
    case Target::conj_disjoint: {
        reject_exhaustive();
        plan.conjecture = true;
        const int k = need(p.k, "k", 1);
        const int side = side_or(p, k + 1);
        constexpr int attempts = 1000;
        out = {{"r", 2}, {"k", k}, {"families", k + 1}, {"t", k}, {"side", side}, {"max_attempts", attempts}};
        plan.trial = [=](int, std::uint64_t seed) {
            FamilySystem sys{{{side, side}}, {}};
            for (int f = 0; f <= k; ++f) {
                bool placed = false;
                for (int attempt = 0; attempt < attempts && ! placed; ++attempt) {
                    auto one = sample_family_system(2, 1, k, side,
                        derive_seed(seed, {static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(attempt)}));
                    if (std::none_of(sys.families.begin(), sys.families.end(),
                            [&](const Family & g) { return shares_edge(g, one.families[0]); })) {
                        sys.families.push_back(std::move(one.families[0]));
                        placed = true;
                    }
                }
                if (! placed)
                    return TrialOutcome{};
            }
            return judge(std::move(sys), k);
        };
        break;
    }
    case Target::conj_regular: {
        reject_exhaustive();
        plan.conjecture = true;
        if (p.input) {
            const auto sys = *p.input;
            const auto check = check_regular(sys, p.d);
            out = {{"input", p.input_name}, {"n", check.n}, {"d", check.d}};
            plan.trial = [=](int, std::uint64_t) {
                TrialOutcome o;
                o.hypothesis_met = check.three_partite_square && check.regular && check.simple;
                o.valid = o.hypothesis_met;
                o.observed = max_matching(sys).size;
                o.required = check.d > 0 ? ceil_div(static_cast<long long>(check.d - 1) * check.n, check.d) : 0;
                o.instance = sys;
                return o;
            };
            break;
        }
        const int n = need(p.n, "n", 1);
        const int d = need(p.d, "d", 1);
        if (d > n)
            throw std::invalid_argument("parameter --d must not exceed --n");
        const int required = ceil_div(static_cast<long long>(d - 1) * n, d);
        out = {{"n", n}, {"d", d}, {"required", required}};
        plan.trial = [=](int, std::uint64_t seed) {
            auto sys = sample_regular(n, d, seed);
            if (! sys)
                return TrialOutcome{};
            TrialOutcome o;
            o.valid = true;
            o.observed = max_matching(*sys).size;
            o.required = required;
            o.instance = std::move(*sys);
            return o;
        };
        break;
    }
    }
    return plan;
}

template <typename Fn_>
void run_pool(int count, int workers, Fn_ && fn)
{
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < count;)
            fn(i);
    };
    const int threads = std::max(1, std::min(workers, count));
    if (threads == 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(work);
}

} // namespace

auto verify(Target target, const VerifyParams & params, const VerifyOptions & options) -> VerificationReport
{
    if (options.trials < 1 && ! params.exhaustive)
        throw std::invalid_argument("trials must be at least 1");
    auto plan = plan_for(target, params);

    VerificationReport report;
    report.target = to_string(target);
    report.params = plan.params;
    if (! plan.exhaustive_families_and_size && ! (target == Target::conj_regular && params.input))
        report.params["seed"] = options.seed;

    std::vector<TrialOutcome> outcomes;
    std::vector<nlohmann::ordered_json> materials;
    if (plan.exhaustive_families_and_size) {
        const auto [families, t] = *plan.exhaustive_families_and_size;
        std::vector<FamilySystem> classes;
        auto stats = for_each_matching_system(families, t, [&](const FamilySystem & sys) {
            classes.push_back(sys);
            return true;
        });
        const int required = plan.exhaustive_required();
        outcomes.resize(classes.size());
        run_pool(static_cast<int>(classes.size()), options.workers,
            [&](int i) { outcomes[i] = judge(classes[i], required); });
        for (std::size_t i = 0; i < classes.size(); ++i)
            materials.push_back({{"mode", "exhaustive"}, {"class", i}});
        report.observations["isomorphism_classes"] = stats.classes;
        report.observations["candidates_generated"] = stats.candidates;
    }
    else if (target == Target::conj_regular && params.input) {
        outcomes.push_back(plan.trial(0, 0));
        materials.push_back({{"input", params.input_name}});
    }
    else {
        outcomes.resize(options.trials);
        run_pool(options.trials, options.workers, [&](int i) {
            outcomes[i] = plan.trial(i, derive_seed(options.seed, {static_cast<std::uint64_t>(i)}));
        });
        for (int i = 0; i < options.trials; ++i)
            materials.push_back({{"seed", options.seed}, {"trial", i}});
    }

    report.trials = static_cast<int>(outcomes.size());
    int stated_met = 0, min_margin = std::numeric_limits<int>::max();
    for (int i = 0; i < report.trials; ++i) {
        auto & o = outcomes[i];
        if (o.valid) {
            ++report.valid_trials;
            stated_met += o.stated_bound_met;
            min_margin = std::min(min_margin, o.observed - o.required);
        }
        if ((o.valid || ! o.hypothesis_met) && o.observed < o.required && ! o.instance.families.empty())
            report.violations.push_back({i, materials[i], o.observed, o.required, o.hypothesis_met, std::move(o.instance), ""});
    }
    if (! plan.stated_bound_name.empty())
        report.observations[plan.stated_bound_name] = stated_met;
    if (report.valid_trials > 0)
        report.observations["min_margin"] = min_margin;

    if (! report.violations.empty())
        report.status = Status::violated;
    else if (report.valid_trials == 0)
        report.status = Status::inconclusive;
    else
        report.status = Status::holds;

    const bool supplied = target == Target::conj_regular && params.input.has_value();
    if (report.valid_trials == 0 && ! supplied)
        report.notes.push_back("no trial met the target's hypothesis; parameters may make sampling infeasible");
    else if (report.valid_trials < report.trials)
        report.notes.push_back(std::to_string(report.trials - report.valid_trials) + " trials did not meet the hypothesis and were skipped");
    if (supplied) {
        const auto check = check_regular(*params.input, params.d);
        if (! check.simple)
            report.notes.push_back("instance has repeated edges; conjecture hypothesis (simple) not met");
        if (! check.three_partite_square)
            report.notes.push_back("instance is not 3-partite with equal sides; conjecture hypothesis not met");
        else if (! check.regular)
            report.notes.push_back("instance is not d-regular; conjecture hypothesis not met");
    }
    if (plan.conjecture && report.status == Status::holds)
        report.notes.push_back("no counterexample in this sweep; this is evidence, not a proof");
    return report;
}

auto report_to_json(const VerificationReport & report) -> nlohmann::ordered_json
{
    nlohmann::ordered_json doc;
    doc["format"] = report_format;
    doc["target"] = report.target;
    doc["params"] = report.params;
    doc["trials"] = report.trials;
    doc["valid_trials"] = report.valid_trials;
    auto violations = nlohmann::ordered_json::array();
    for (const auto & v : report.violations)
        violations.push_back({{"trial", v.trial}, {"seed_material", v.seed_material}, {"observed", v.observed},
            {"required", v.required}, {"hypothesis_met", v.hypothesis_met}, {"instance_path", v.instance_path}});
    doc["violations"] = std::move(violations);
    doc["status"] = to_string(report.status);
    doc["observations"] = report.observations;
    doc["notes"] = report.notes;
    return doc;
}

} // namespace rainbow::harness
