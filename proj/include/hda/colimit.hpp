#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hda/precubical.hpp"

namespace hda {

struct Diagram {
  struct Arrow {
    std::size_t src = 0, dst = 0;
    Morphism map;
  };
  std::vector<Lps> objects;
  std::vector<Arrow> arrows;
};

struct ColimitResult {
  Lps lps;
  std::vector<Morphism> injections;  // one per diagram object
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep the smaller id as root so representatives are canonical
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

/// Pointwise colimit: per dimension, the quotient of the disjoint union
/// of all cubes by the equivalence generated by x ~ m(x) for each
/// diagram arrow m.  Classes are renumbered by their smallest member in
/// disjoint-union order, so the result does not depend on arrow order.
inline ColimitResult colimit(const Diagram& d) {
  if (d.objects.empty())
    throw std::invalid_argument("colimit: empty diagram");
  const std::size_t nobj = d.objects.size();
  std::size_t maxdim = 0;
  for (const auto& k : d.objects) maxdim = std::max(maxdim, k.dim());

  // offsets into the disjoint union, per dimension
  std::vector<std::vector<std::uint32_t>> offset(maxdim + 1,
                                                 std::vector<std::uint32_t>(nobj));
  std::vector<std::size_t> total(maxdim + 1, 0);
  for (std::size_t n = 0; n <= maxdim; ++n)
    for (std::size_t o = 0; o < nobj; ++o) {
      offset[n][o] = static_cast<std::uint32_t>(total[n]);
      total[n] += d.objects[o].count(n);
    }

  std::vector<detail::UnionFind> uf;
  uf.reserve(maxdim + 1);
  for (std::size_t n = 0; n <= maxdim; ++n) uf.emplace_back(total[n]);

  for (const auto& a : d.arrows) {
    const Lps& src = d.objects[a.src];
    for (std::size_t n = 0; n <= src.dim(); ++n)
      for (CubeIdx x = 0; x < src.count(n); ++x)
        uf[n].unite(offset[n][a.src] + x,
                    offset[n][a.dst] + a.map.at(n, x));
  }

  // class numbering by canonical (smallest) representative
  std::vector<std::vector<std::uint32_t>> class_of(maxdim + 1);
  std::vector<std::vector<std::uint32_t>> rep(maxdim + 1);  // class -> global id
  for (std::size_t n = 0; n <= maxdim; ++n) {
    class_of[n].assign(total[n], 0);
    for (std::uint32_t g = 0; g < total[n]; ++g) {
      std::uint32_t r = uf[n].find(g);
      if (r == g) {
        class_of[n][g] = static_cast<std::uint32_t>(rep[n].size());
        rep[n].push_back(g);
      } else {
        class_of[n][g] = class_of[n][r];
      }
    }
  }

  auto locate = [&](std::size_t n, std::uint32_t g) {
    // object owning a global id, by offset table
    std::size_t o = nobj - 1;
    while (offset[n][o] > g) --o;
    return std::pair<std::size_t, CubeIdx>(o, g - offset[n][o]);
  };

  Lps out(d.objects[0].sigma());
  out.set_vertex_count(rep[0].size());
  for (std::size_t n = 1; n <= maxdim; ++n) {
    for (std::uint32_t c = 0; c < rep[n].size(); ++c) {
      auto [o, x] = locate(n, rep[n][c]);
      const Lps& k = d.objects[o];
      std::vector<CubeIdx> faces(2 * n);
      for (std::size_t i = 1; i <= n; ++i)
        for (int al = 0; al < 2; ++al)
          faces[2 * (i - 1) + static_cast<std::size_t>(al)] =
              class_of[n - 1][offset[n - 1][o] + k.face(n, x, i, al)];
      out.add_cube(n, faces, k.label(n, x));
    }
    // label consistency across each class
    for (std::uint32_t g = 0; g < total[n]; ++g) {
      auto [o, x] = locate(n, g);
      auto [ro, rx] = locate(n, rep[n][class_of[n][g]]);
      if (d.objects[o].label(n, x) != d.objects[ro].label(n, rx))
        throw std::runtime_error(
            "colimit: inconsistent labels inside an equivalence class");
    }
  }
  out.normalize();

  ColimitResult res{std::move(out), {}};
  res.injections.resize(nobj);
  for (std::size_t o = 0; o < nobj; ++o) {
    auto& comp = res.injections[o].component;
    comp.resize(maxdim + 1);
    for (std::size_t n = 0; n <= maxdim; ++n) {
      comp[n].resize(d.objects[o].count(n));
      for (CubeIdx x = 0; x < d.objects[o].count(n); ++x)
        comp[n][x] = class_of[n][offset[n][o] + x];
    }
  }
  return res;
}

namespace detail {

/// Disjoint union of two pointed sets with one vertex of the first
/// identified with one vertex of the second; vertices of A keep their
/// ids, vertices of B are appended minus the identified one.
inline PointedLps merge_at(const PointedLps& a, CubeIdx va,
                           const PointedLps& b, CubeIdx vb) {
  const Lps& A = a.lps;
  const Lps& B = b.lps;
  Lps out(A.sigma());
  const std::size_t a0 = A.count(0);
  out.set_vertex_count(a0 + B.count(0) - 1);
  auto bvert = [&](CubeIdx v) -> CubeIdx {
    if (v == vb) return va;
    return static_cast<CubeIdx>(a0 + (v < vb ? v : v - 1));
  };
  const std::size_t maxdim = std::max(A.dim(), B.dim());
  for (std::size_t n = 1; n <= maxdim; ++n) {
    const std::size_t an = A.count(n);
    for (CubeIdx x = 0; x < an; ++x) {
      std::vector<CubeIdx> faces(2 * n);
      for (std::size_t i = 1; i <= n; ++i)
        for (int al = 0; al < 2; ++al)
          faces[2 * (i - 1) + static_cast<std::size_t>(al)] =
              A.face(n, x, i, al);
      out.add_cube(n, faces, A.label(n, x));
    }
    const std::size_t off = n == 1 ? 0 : A.count(n - 1);
    for (CubeIdx x = 0; x < B.count(n); ++x) {
      std::vector<CubeIdx> faces(2 * n);
      for (std::size_t i = 1; i <= n; ++i)
        for (int al = 0; al < 2; ++al) {
          CubeIdx f = B.face(n, x, i, al);
          faces[2 * (i - 1) + static_cast<std::size_t>(al)] =
              n == 1 ? bvert(f) : static_cast<CubeIdx>(off + f);
        }
      out.add_cube(n, faces, B.label(n, x));
    }
  }
  out.normalize();

  PointedLps res;
  res.lps = std::move(out);
  res.approximate = a.approximate || b.approximate;
  res.dim_capped = a.dim_capped || b.dim_capped;
  if (a.decorations && b.decorations) {
    std::vector<TermPtr> dec(res.lps.count(0));
    for (CubeIdx v = 0; v < a0; ++v) dec[v] = (*a.decorations)[v];
    for (CubeIdx v = 0; v < B.count(0); ++v)
      dec[bvert(v)] = (*b.decorations)[v];  // identified vertex takes B's
    res.decorations = std::move(dec);
  }
  return res;
}

}  // namespace detail

/// P + Q: disjoint union with the two initial vertices identified.
inline PointedLps coproduct_pointed(const PointedLps& p, const PointedLps& q) {
  PointedLps out = detail::merge_at(p, p.initial, q, q.initial);
  out.initial = p.initial;
  return out;
}

/// Glues B.initial onto the vertex f of A; the result keeps A's initial
/// vertex.  This is the prefix pushout when A is a single mu-edge and f
/// is its target.
inline PointedLps glue_pushout(const PointedLps& a, CubeIdx f,
                               const PointedLps& b) {
  if (f >= a.lps.count(0))
    throw std::invalid_argument("glue_pushout: f is not a vertex of A");
  PointedLps out = detail::merge_at(a, f, b, b.initial);
  out.initial = a.initial;
  return out;
}

/// Keeps exactly the cubes whose label tuple lies in the allowed set;
/// all vertices survive.  This is the pullback against !(Sigma').
inline Lps pullback_labels(const Lps& k, const std::vector<bool>& allowed) {
  Lps out(k.sigma());
  out.set_vertex_count(k.count(0));
  std::vector<std::vector<CubeIdx>> renum(k.dim() + 1);
  renum[0].resize(k.count(0));
  std::iota(renum[0].begin(), renum[0].end(), 0u);
  for (std::size_t n = 1; n <= k.dim(); ++n) {
    renum[n].assign(k.count(n), UINT32_MAX);
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      bool keep = true;
      for (std::size_t j = 0; j < n; ++j)
        if (!allowed[k.label(n, x)[j]]) keep = false;
      if (!keep) continue;
      std::vector<CubeIdx> faces(2 * n);
      for (std::size_t i = 1; i <= n; ++i)
        for (int al = 0; al < 2; ++al)
          faces[2 * (i - 1) + static_cast<std::size_t>(al)] =
              renum[n - 1][k.face(n, x, i, al)];
      renum[n][x] = out.add_cube(n, faces, k.label(n, x));
    }
  }
  out.normalize();
  return out;
}

/// Restriction (nu a): removes every cube mentioning a or ~a.
inline PointedLps restrict_pointed(const PointedLps& p, LabelId a) {
  const LabelSet& sigma = *p.lps.sigma();
  std::vector<bool> allowed(sigma.size(), true);
  allowed[a] = false;
  allowed[sigma.involution(a)] = false;
  PointedLps out;
  out.lps = pullback_labels(p.lps, allowed);
  out.initial = p.initial;
  out.approximate = p.approximate;
  out.dim_capped = p.dim_capped;
  if (p.decorations) {
    std::vector<TermPtr> dec(out.lps.count(0));
    for (CubeIdx v = 0; v < out.lps.count(0); ++v)
      dec[v] = Term::restrict(sigma.name(a), (*p.decorations)[v]);
    out.decorations = std::move(dec);
  }
  return out;
}

}  // namespace hda
