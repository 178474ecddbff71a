#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hda/precubical.hpp"

namespace hda {

namespace detail {

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

/// Per-cube invariant colors, refined a few rounds over face and coface
/// neighbourhoods.  Equal precubical sets get equal color multisets.
inline std::vector<std::vector<std::uint64_t>> invariant_colors(
    const Lps& k, std::size_t rounds) {
  const std::size_t maxdim = k.dim();
  std::vector<std::vector<std::uint64_t>> color(maxdim + 1);
  for (std::size_t n = 0; n <= maxdim; ++n) {
    color[n].resize(k.count(n));
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      std::uint64_t h = hash_mix(0x12345, n);
      for (LabelId a : k.label(n, x).ids()) h = hash_mix(h, a);
      color[n][x] = h;
    }
  }
  // coface incidence: (slot, parent) pairs per cube
  std::vector<std::vector<std::vector<std::pair<std::size_t, CubeIdx>>>> up(
      maxdim + 1);
  for (std::size_t n = 0; n <= maxdim; ++n)
    up[n].resize(k.count(n));
  for (std::size_t n = 1; n <= maxdim; ++n)
    for (CubeIdx x = 0; x < k.count(n); ++x)
      for (std::size_t i = 1; i <= n; ++i)
        for (int a = 0; a < 2; ++a)
          up[n - 1][k.face(n, x, i, a)].push_back(
              {2 * (i - 1) + static_cast<std::size_t>(a), x});

  for (std::size_t r = 0; r < rounds; ++r) {
    auto next = color;
    for (std::size_t n = 0; n <= maxdim; ++n) {
      for (CubeIdx x = 0; x < k.count(n); ++x) {
        std::uint64_t h = hash_mix(color[n][x], 0xabcdef);
        for (std::size_t i = 1; i <= n; ++i)
          for (int a = 0; a < 2; ++a)
            h = hash_mix(h, color[n - 1][k.face(n, x, i, a)]);
        std::vector<std::uint64_t> cof;
        for (auto& [slot, parent] : up[n][x])
          cof.push_back(hash_mix(slot, color[n + 1][parent]));
        std::sort(cof.begin(), cof.end());
        for (auto v : cof) h = hash_mix(h, v);
        next[n][x] = h;
      }
    }
    color = std::move(next);
  }
  return color;
}

}  // namespace detail

/// Searches for an isomorphism of labelled precubical sets.  Cubes are
/// assigned top dimension first; assigning a cube forces all its
/// iterated faces, so the search is heavily propagated.  Exponential
/// worst case, fine at the scale this library targets.
inline std::optional<std::pair<Morphism, Morphism>> iso_check(const Lps& k,
                                                              const Lps& l) {
  if (k.dim() != l.dim()) return std::nullopt;
  const std::size_t maxdim = k.dim();
  for (std::size_t n = 0; n <= maxdim; ++n)
    if (k.count(n) != l.count(n)) return std::nullopt;

  auto ck = detail::invariant_colors(k, maxdim + 2);
  auto cl = detail::invariant_colors(l, maxdim + 2);
  for (std::size_t n = 0; n <= maxdim; ++n) {
    auto a = ck[n], b = cl[n];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  // map[n][x] = y+1, 0 means unassigned; used[n][y] mirrors it
  std::vector<std::vector<CubeIdx>> map(maxdim + 1), used(maxdim + 1);
  for (std::size_t n = 0; n <= maxdim; ++n) {
    map[n].assign(k.count(n), 0);
    used[n].assign(l.count(n), 0);
  }
  std::vector<std::pair<std::size_t, CubeIdx>> trail;

  std::function<bool(std::size_t, CubeIdx, CubeIdx)> force =
      [&](std::size_t n, CubeIdx x, CubeIdx y) -> bool {
    if (map[n][x] != 0) return map[n][x] == y + 1;
    if (used[n][y] != 0) return false;
    if (ck[n][x] != cl[n][y]) return false;
    if (k.label(n, x) != l.label(n, y)) return false;
    map[n][x] = y + 1;
    used[n][y] = x + 1;
    trail.push_back({n, x});
    for (std::size_t i = 1; i <= n; ++i)
      for (int a = 0; a < 2; ++a)
        if (!force(n - 1, k.face(n, x, i, a), l.face(n, y, i, a)))
          return false;
    return true;
  };

  // assignment order: top dimension first
  std::vector<std::pair<std::size_t, CubeIdx>> order;
  for (std::size_t n = maxdim + 1; n-- > 0;)
    for (CubeIdx x = 0; x < k.count(n); ++x) order.push_back({n, x});

  std::function<bool(std::size_t)> search = [&](std::size_t pos) -> bool {
    while (pos < order.size() && map[order[pos].first][order[pos].second] != 0)
      ++pos;
    if (pos == order.size()) return true;
    auto [n, x] = order[pos];
    for (CubeIdx y = 0; y < l.count(n); ++y) {
      if (used[n][y] != 0) continue;
      std::size_t mark = trail.size();
      if (force(n, x, y) && search(pos + 1)) return true;
      while (trail.size() > mark) {
        auto [tn, tx] = trail.back();
        trail.pop_back();
        used[tn][map[tn][tx] - 1] = 0;
        map[tn][tx] = 0;
      }
    }
    return false;
  };

  if (!search(0)) return std::nullopt;

  Morphism fwd, bwd;
  fwd.component.resize(maxdim + 1);
  bwd.component.resize(maxdim + 1);
  for (std::size_t n = 0; n <= maxdim; ++n) {
    fwd.component[n].resize(k.count(n));
    bwd.component[n].resize(l.count(n));
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      fwd.component[n][x] = map[n][x] - 1;
      bwd.component[n][map[n][x] - 1] = x;
    }
  }
  return std::make_pair(std::move(fwd), std::move(bwd));
}

}  // namespace hda
