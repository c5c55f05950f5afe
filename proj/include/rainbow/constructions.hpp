#pragma once

#include <rainbow/core.hpp>

namespace rainbow::constructions {

/// k-1 copies of the identity matching {(a_i,b_i)} and one cyclic shift
/// {(a_i,b_{i+1 mod k})}; no full rainbow matching.
[[nodiscard]] auto standard(int k) -> FamilySystem;

/// Wanless's system for k = 2m: all families of size k except the last of
/// size k+1, without a full rainbow matching. Throws IntegrityError if the
/// built system does have one.
[[nodiscard]] auto wanless(int m) -> FamilySystem;

/// 2^{r-1} two-edge matchings {e_T, f_T} on r sides of size 2, one per
/// complementary pair of subsets T (represented by T not containing the
/// last element). Vertex 0 of side i is a_i, vertex 1 is b_i.
[[nodiscard]] auto boolean_cube(int r) -> FamilySystem;

/// 2^{r-2} disjoint copies of the boolean cube gadget; family j takes the
/// j-th pair from every copy.
[[nodiscard]] auto g_upper(int r) -> FamilySystem;

/// k copies of a q x q grid. F_i is the row matching of copy i repeated k
/// times; F_{k+1} holds, for every copy, the q cyclic diagonals, each of
/// which meets every row edge of its copy.
[[nodiscard]] auto absz(int k, int q) -> FamilySystem;

/// k-1 identity matchings followed by k-1 copies of the cyclic shift.
[[nodiscard]] auto drisko_sharp(int k) -> FamilySystem;

/// The four edges of the Fano plane minus a vertex, each repeated d/2
/// times, as a single family. d must be even.
[[nodiscard]] auto fano_multi(int d) -> FamilySystem;

} // namespace rainbow::constructions
