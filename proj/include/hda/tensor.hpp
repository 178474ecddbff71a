#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hda/colimit.hpp"
#include "hda/precubical.hpp"
#include "hda/shells.hpp"

namespace hda {

namespace detail {

/// Inserts bit a at 1-based position i.
inline std::uint32_t insert_bit(std::uint32_t eps, std::size_t i, int a) {
  const std::uint32_t low = eps & ((1u << (i - 1)) - 1u);
  return low | (static_cast<std::uint32_t>(a) << (i - 1)) |
         ((eps >> (i - 1)) << i);
}

}  // namespace detail

/// 1-based positions of each factor's axes in the label-sorted merged
/// coordinate order (stable: on equal labels the first factor's axis
/// comes first).  Cube directions follow the weakly increasing label
/// tuple, so grid coordinates must be ordered the same way or the
/// shells of the grid come out twisted.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
merge_positions(const LabelTuple& tm, const LabelTuple& tn) {
  std::vector<std::size_t> mpos(tm.size()), npos(tn.size());
  std::size_t i = 0, j = 0, pos = 1;
  while (i < tm.size() || j < tn.size()) {
    if (j == tn.size() || (i < tm.size() && tm[i] <= tn[j]))
      mpos[i++] = pos++;
    else
      npos[j++] = pos++;
  }
  return {mpos, npos};
}

/// The synchronization grid Z of an m-cube labelled tm and an n-cube
/// labelled tn: vertices are {0,1}^(m+n) with coordinates in merged
/// label order (vertex id = coordinate bits), edges are the axis edges
/// of both factors plus a tau diagonal for every pair of complementary
/// edges.
inline Lps sync_grid(std::size_t m, const LabelTuple& tm, std::size_t n,
                     const LabelTuple& tn, LabelSetPtr sigma) {
  if (tm.size() != m || tn.size() != n)
    throw std::invalid_argument("sync_grid: tuple length mismatch");
  const LabelSet& sig = *sigma;
  Lps z(std::move(sigma));
  z.set_vertex_count(std::size_t{1} << (m + n));
  const auto positions = merge_positions(tm, tn);
  const auto& mpos = positions.first;
  const auto& npos = positions.second;
  auto vertex = [&](std::uint32_t mpart, std::uint32_t npart) {
    std::uint32_t v = 0;
    for (std::size_t b = 0; b < m; ++b)
      v |= ((mpart >> b) & 1u) << (mpos[b] - 1);
    for (std::size_t b = 0; b < n; ++b)
      v |= ((npart >> b) & 1u) << (npos[b] - 1);
    return v;
  };
  // axis edges of the m block
  for (std::size_t i = 1; i <= m; ++i)
    for (std::uint32_t u = 0; u < (1u << (m - 1)); ++u)
      for (std::uint32_t v = 0; v < (1u << n); ++v)
        z.add_cube(1,
                   {vertex(detail::insert_bit(u, i, 0), v),
                    vertex(detail::insert_bit(u, i, 1), v)},
                   LabelTuple({tm[i - 1]}));
  // axis edges of the n block
  for (std::size_t j = 1; j <= n; ++j)
    for (std::uint32_t w = 0; w < (1u << (n - 1)); ++w)
      for (std::uint32_t u = 0; u < (1u << m); ++u)
        z.add_cube(1,
                   {vertex(u, detail::insert_bit(w, j, 0)),
                    vertex(u, detail::insert_bit(w, j, 1))},
                   LabelTuple({tn[j - 1]}));
  // tau diagonals for complementary pairs
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      if (sig.involution(tm[i - 1]) != tn[j - 1]) continue;
      for (std::uint32_t u = 0; u < (1u << (m - 1)); ++u)
        for (std::uint32_t w = 0; w < (1u << (n - 1)); ++w)
          z.add_cube(1,
                     {vertex(detail::insert_bit(u, i, 0),
                             detail::insert_bit(w, j, 0)),
                      vertex(detail::insert_bit(u, i, 1),
                             detail::insert_bit(w, j, 1))},
                     LabelTuple({sig.tau()}));
    }
  z.normalize();
  return z;
}

namespace detail {

/// Extends a vertex map between two coskeletonized grids to a full
/// morphism: edges are matched by endpoints, higher cubes by their
/// mapped face family.  A missing image cube means the map fails to be
/// a morphism of precubical sets.
inline Morphism induced_cosk_map(
    const Lps& src, const Lps& dst,
    const std::function<std::uint32_t(std::uint32_t)>& vmap) {
  Morphism out;
  out.component.resize(src.dim() + 1);
  out.component[0].resize(src.count(0));
  for (CubeIdx v = 0; v < src.count(0); ++v) out.component[0][v] = vmap(v);

  if (src.dim() >= 1) {
    std::map<std::pair<CubeIdx, CubeIdx>, CubeIdx> by_endpoints;
    for (CubeIdx e = 0; e < dst.count(1); ++e)
      by_endpoints[{dst.face(1, e, 1, 0), dst.face(1, e, 1, 1)}] = e;
    out.component[1].resize(src.count(1));
    for (CubeIdx e = 0; e < src.count(1); ++e) {
      auto it = by_endpoints.find({out.component[0][src.face(1, e, 1, 0)],
                                   out.component[0][src.face(1, e, 1, 1)]});
      if (it == by_endpoints.end() ||
          dst.label(1, it->second) != src.label(1, e))
        throw std::runtime_error("tensor: induced map misses an edge");
      out.component[1][e] = it->second;
    }
  }
  for (std::size_t d = 2; d <= src.dim(); ++d) {
    std::map<std::vector<CubeIdx>, CubeIdx> by_faces;
    for (CubeIdx x = 0; x < dst.count(d); ++x) {
      std::vector<CubeIdx> fam(2 * d);
      for (std::size_t i = 1; i <= d; ++i)
        for (int a = 0; a < 2; ++a)
          fam[2 * (i - 1) + static_cast<std::size_t>(a)] =
              dst.face(d, x, i, a);
      by_faces[fam] = x;
    }
    out.component[d].resize(src.count(d));
    for (CubeIdx x = 0; x < src.count(d); ++x) {
      std::vector<CubeIdx> fam(2 * d);
      for (std::size_t i = 1; i <= d; ++i)
        for (int a = 0; a < 2; ++a)
          fam[2 * (i - 1) + static_cast<std::size_t>(a)] =
              out.component[d - 1][src.face(d, x, i, a)];
      auto it = by_faces.find(fam);
      if (it == by_faces.end() || dst.label(d, it->second) != src.label(d, x))
        throw std::runtime_error(
            "tensor: image shell of a filled cube is not filled");
      out.component[d][x] = it->second;
    }
  }
  return out;
}

}  // namespace detail

/// K (x)_sigma L: the double colimit, over the cubes of K and L, of the
/// coskeleta of their synchronization grids, glued along the maps
/// induced by the face operators of each argument.
inline PointedLps tensor_sigma(const PointedLps& kp, const PointedLps& lp) {
  const Lps& k = kp.lps;
  const Lps& l = lp.lps;

  // memoized coskeletonized grids, keyed by the two label tuples
  std::map<std::pair<std::vector<LabelId>, std::vector<LabelId>>, Lps> cache;
  auto grid_cosk = [&](const LabelTuple& tm, const LabelTuple& tn) -> const Lps& {
    auto key = std::make_pair(tm.ids(), tn.ids());
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache
               .emplace(key, cosk(sync_grid(tm.size(), tm, tn.size(), tn,
                                            k.sigma()),
                                  tm.size() + tn.size()))
               .first;
    return it->second;
  };

  struct Obj {
    std::size_t m, n;
    CubeIdx x, y;
  };
  std::vector<Obj> objs;
  std::map<std::tuple<std::size_t, CubeIdx, std::size_t, CubeIdx>, std::size_t>
      obj_id;
  Diagram diag;
  for (std::size_t m = 0; m <= k.dim(); ++m)
    for (CubeIdx x = 0; x < k.count(m); ++x)
      for (std::size_t n = 0; n <= l.dim(); ++n)
        for (CubeIdx y = 0; y < l.count(n); ++y) {
          obj_id[{m, x, n, y}] = objs.size();
          objs.push_back({m, n, x, y});
          diag.objects.push_back(grid_cosk(k.label(m, x), l.label(n, y)));
        }

  for (std::size_t o = 0; o < objs.size(); ++o) {
    const auto& ob = objs[o];
    const Lps& dst = diag.objects[o];
    const auto positions =
        merge_positions(k.label(ob.m, ob.x), l.label(ob.n, ob.y));
    for (std::size_t i = 1; i <= ob.m; ++i)
      for (int a = 0; a < 2; ++a) {
        std::size_t src_id =
            obj_id.at({ob.m - 1, k.face(ob.m, ob.x, i, a), ob.n, ob.y});
        const std::size_t pos = positions.first[i - 1];
        auto vmap = [pos, a](std::uint32_t v) {
          return detail::insert_bit(v, pos, a);
        };
        diag.arrows.push_back(
            {src_id, o,
             detail::induced_cosk_map(diag.objects[src_id], dst, vmap)});
      }
    for (std::size_t j = 1; j <= ob.n; ++j)
      for (int a = 0; a < 2; ++a) {
        std::size_t src_id =
            obj_id.at({ob.m, ob.x, ob.n - 1, l.face(ob.n, ob.y, j, a)});
        const std::size_t pos = positions.second[j - 1];
        auto vmap = [pos, a](std::uint32_t v) {
          return detail::insert_bit(v, pos, a);
        };
        diag.arrows.push_back(
            {src_id, o,
             detail::induced_cosk_map(diag.objects[src_id], dst, vmap)});
      }
  }

  ColimitResult col = colimit(diag);

  PointedLps out;
  out.lps = std::move(col.lps);
  out.initial =
      col.injections[obj_id.at({0, kp.initial, 0, lp.initial})].at(0, 0);
  out.approximate = kp.approximate || lp.approximate;
  out.dim_capped = kp.dim_capped || lp.dim_capped;
  if (kp.decorations && lp.decorations) {
    std::vector<TermPtr> dec(out.lps.count(0));
    for (std::size_t o = 0; o < objs.size(); ++o) {
      const auto& ob = objs[o];
      const std::size_t verts = std::size_t{1} << (ob.m + ob.n);
      const auto positions =
          merge_positions(k.label(ob.m, ob.x), l.label(ob.n, ob.y));
      for (std::uint32_t eps = 0; eps < verts; ++eps) {
        std::uint32_t em = 0, en = 0;
        for (std::size_t b = 0; b < ob.m; ++b)
          em |= ((eps >> (positions.first[b] - 1)) & 1u) << b;
        for (std::size_t b = 0; b < ob.n; ++b)
          en |= ((eps >> (positions.second[b] - 1)) & 1u) << b;
        CubeIdx vk = vertex_of(k, ob.m, ob.x, em);
        CubeIdx vl = vertex_of(l, ob.n, ob.y, en);
        dec[col.injections[o].at(0, eps)] =
            Term::par((*kp.decorations)[vk], (*lp.decorations)[vl]);
      }
    }
    out.decorations = std::move(dec);
  }
  return out;
}

}  // namespace hda
