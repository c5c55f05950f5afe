#include <rainbow/constructions.hpp>
#include <rainbow/solver.hpp>

#include <stdexcept>
#include <string>

namespace rainbow::constructions {

namespace {

void require(bool ok, const std::string & message)
{
    if (! ok)
        throw std::invalid_argument(message);
}

auto identity_matching(int k) -> Family
{
    Family f;
    for (int i = 0; i < k; ++i)
        f.push_back({i, i});
    return f;
}

auto shift_matching(int k) -> Family
{
    Family f;
    for (int i = 0; i < k; ++i)
        f.push_back({i, (i + 1) % k});
    return f;
}

} // namespace

auto standard(int k) -> FamilySystem
{
    require(k >= 2, "standard: k must be at least 2");
    FamilySystem sys{{{k, k}}, {}};
    for (int i = 0; i + 1 < k; ++i)
        sys.families.push_back(identity_matching(k));
    sys.families.push_back(shift_matching(k));
    return sys;
}

auto wanless(int m) -> FamilySystem
{
    require(m >= 2, "wanless: m must be at least 2");
    const int k = 2 * m;
    // 0-based: a_i is vertex i-1 on side 0, b_i vertex i-1 on side 1.
    Family p = identity_matching(k);
    Family q;
    for (int i = 1; i < k; ++i) {
        // b_{i+1} with the index reduced mod (k-1) into 1..k-1.
        const int b = (i % (k - 1)) + 1;
        q.push_back({i - 1, b - 1});
    }

    FamilySystem sys{{{k + 1, k + 1}}, {}};
    for (int i = 0; i < m; ++i)
        sys.families.push_back(p);
    for (int i = 0; i + 1 < m; ++i) {
        Family f = q;
        f.push_back({k - 1, k - 1});
        sys.families.push_back(std::move(f));
    }
    Family last = q;
    last.push_back({k - 1, k});
    last.push_back({k, k - 1});
    sys.families.push_back(std::move(last));

    if (has_full_rainbow(sys))
        throw IntegrityError("wanless(" + std::to_string(m) + "): construction has a full rainbow matching");
    return sys;
}

namespace {

/// Edges e_T and f_T on r sides with vertex offset base per side.
auto cube_pair(int r, unsigned subset, int base) -> Family
{
    Edge e, f;
    for (int i = 0; i < r; ++i) {
        const bool in_t = (subset >> i) & 1U;
        e.coords.push_back(base + (in_t ? 0 : 1));
        f.coords.push_back(base + (in_t ? 1 : 0));
    }
    return {e, f};
}

} // namespace

auto boolean_cube(int r) -> FamilySystem
{
    require(r >= 2 && r <= 20, "boolean_cube: r must be in [2, 20]");
    FamilySystem sys{{std::vector<int>(r, 2)}, {}};
    for (unsigned t = 0; t < (1U << (r - 1)); ++t)
        sys.families.push_back(cube_pair(r, t, 0));
    return sys;
}

auto g_upper(int r) -> FamilySystem
{
    require(r >= 3 && r <= 12, "g_upper: r must be in [3, 12]");
    const int copies = 1 << (r - 2);
    const int k = 1 << (r - 1);
    FamilySystem sys{{std::vector<int>(r, 2 * copies)}, std::vector<Family>(k)};
    for (int c = 0; c < copies; ++c)
        for (int t = 0; t < k; ++t) {
            auto pair = cube_pair(r, static_cast<unsigned>(t), 2 * c);
            sys.families[t].insert(sys.families[t].end(), pair.begin(), pair.end());
        }
    return sys;
}

auto absz(int k, int q) -> FamilySystem
{
    require(k >= 1, "absz: k must be at least 1");
    require(q >= 2, "absz: q must be at least 2");
    // Copy i, grid cell [row][col] is vertex i*q + row on side col.
    FamilySystem sys{{std::vector<int>(q, k * q)}, {}};
    Family diagonals;
    for (int i = 0; i < k; ++i) {
        Family rows;
        for (int row = 0; row < q; ++row)
            rows.push_back(Edge(std::vector<int>(q, i * q + row)));
        Family repeated;
        for (int rep = 0; rep < k; ++rep)
            repeated.insert(repeated.end(), rows.begin(), rows.end());
        sys.families.push_back(std::move(repeated));
        for (int j = 0; j < q; ++j) {
            Edge e;
            for (int col = 0; col < q; ++col)
                e.coords.push_back(i * q + (j + col) % q);
            diagonals.push_back(std::move(e));
        }
    }
    sys.families.push_back(std::move(diagonals));
    return sys;
}

auto drisko_sharp(int k) -> FamilySystem
{
    require(k >= 2, "drisko_sharp: k must be at least 2");
    FamilySystem sys{{{k, k}}, {}};
    for (int i = 0; i + 1 < k; ++i)
        sys.families.push_back(identity_matching(k));
    for (int i = 0; i + 1 < k; ++i)
        sys.families.push_back(shift_matching(k));
    return sys;
}

auto fano_multi(int d) -> FamilySystem
{
    require(d >= 2 && d % 2 == 0, "fano_multi: d must be even and at least 2");
    const Family base{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    Family all;
    for (int rep = 0; rep < d / 2; ++rep)
        all.insert(all.end(), base.begin(), base.end());
    return FamilySystem{{{2, 2, 2}}, {std::move(all)}};
}

} // namespace rainbow::constructions
