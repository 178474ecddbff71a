#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hda/precubical.hpp"

namespace hda {

/// A candidate boundary of an (n+1)-cube: a map from the boundary of
/// the standard (n+1)-cube into the ambient set, given by its 2(n+1)
/// n-dimensional faces and the common label tuple.
struct Shell {
  std::size_t n = 0;            // dimension of the faces
  std::vector<CubeIdx> faces;   // 2(n+1) entries, slot 2*(i-1)+alpha
  LabelTuple tuple;             // length n+1

  CubeIdx at(std::size_t i, int alpha) const {
    return faces[2 * (i - 1) + static_cast<std::size_t>(alpha)];
  }

  bool operator==(const Shell& o) const { return faces == o.faces; }
  bool operator<(const Shell& o) const { return faces < o.faces; }
};

/// Certificate that a shell's vertex map factors as a coordinate
/// duplication followed by a morphism of the cube category: per output
/// coordinate, a constant or the index of the input coordinate it
/// projects.
struct NonTwistedCertificate {
  static constexpr int kConst0 = -1;
  static constexpr int kConst1 = -2;
  std::vector<int> coordinate;  // size p; value >= 1 is a projection index
};

namespace detail {

/// Removes coordinate i (1-based) from a bit vector.
inline std::uint32_t drop_coordinate(std::uint32_t eps, std::size_t i) {
  const std::uint32_t low = eps & ((1u << (i - 1)) - 1u);
  return low | ((eps >> i) << (i - 1));
}

}  // namespace detail

/// The vertex map x0 : {0,1}^(n+1) -> vertices of the ambient set.
/// Every face route must give the same vertex; a mismatch means the
/// face family is not a shell.
inline std::vector<CubeIdx> shell_vertex_map(const Lps& k, const Shell& s) {
  const std::size_t m = s.n + 1;
  std::vector<CubeIdx> vm(std::size_t{1} << m);
  for (std::uint32_t eps = 0; eps < vm.size(); ++eps) {
    bool first = true;
    for (std::size_t i = 1; i <= m; ++i) {
      const int a = static_cast<int>((eps >> (i - 1)) & 1u);
      CubeIdx v =
          vertex_of(k, s.n, s.at(i, a), detail::drop_coordinate(eps, i));
      if (first) {
        vm[eps] = v;
        first = false;
      } else if (vm[eps] != v) {
        throw std::runtime_error("shell_vertex_map: inconsistent routes");
      }
    }
  }
  return vm;
}

/// Non-twistedness for an ambient set whose vertices are identified
/// with {0,1}^p (vertex id bits = coordinates).  Checks that every
/// coordinate function of the vertex map is a constant or a projection
/// and that the projection indices, read in coordinate order, are
/// weakly increasing, start at 1, end at n+1 and cover {1..n+1}.
inline std::optional<NonTwistedCertificate> non_twisted_certificate(
    const std::vector<CubeIdx>& vm, std::size_t m /* = n+1 */,
    std::size_t p) {
  // the vertex map must be one-to-one
  std::set<CubeIdx> seen(vm.begin(), vm.end());
  if (seen.size() != vm.size()) return std::nullopt;

  NonTwistedCertificate cert;
  cert.coordinate.resize(p);
  std::vector<int> projections;
  for (std::size_t c = 1; c <= p; ++c) {
    bool const0 = true, const1 = true;
    for (std::uint32_t eps = 0; eps < vm.size(); ++eps) {
      const int bit = static_cast<int>((vm[eps] >> (c - 1)) & 1u);
      if (bit) const0 = false;
      else const1 = false;
    }
    if (const0) {
      cert.coordinate[c - 1] = NonTwistedCertificate::kConst0;
      continue;
    }
    if (const1) {
      cert.coordinate[c - 1] = NonTwistedCertificate::kConst1;
      continue;
    }
    int proj = 0;
    for (std::size_t j = 1; j <= m && proj == 0; ++j) {
      bool match = true;
      for (std::uint32_t eps = 0; eps < vm.size(); ++eps)
        if (((vm[eps] >> (c - 1)) & 1u) != ((eps >> (j - 1)) & 1u)) {
          match = false;
          break;
        }
      if (match) proj = static_cast<int>(j);
    }
    if (proj == 0) return std::nullopt;  // genuinely twisted coordinate
    cert.coordinate[c - 1] = proj;
    projections.push_back(proj);
  }
  if (projections.empty()) return std::nullopt;
  if (!std::is_sorted(projections.begin(), projections.end()))
    return std::nullopt;
  if (projections.front() != 1 ||
      projections.back() != static_cast<int>(m))
    return std::nullopt;
  for (int j = 1; j <= static_cast<int>(m); ++j)
    if (!std::binary_search(projections.begin(), projections.end(), j))
      return std::nullopt;
  return cert;
}

inline bool is_non_twisted(const Lps& k, const Shell& s, std::size_t p) {
  return non_twisted_certificate(shell_vertex_map(k, s), s.n + 1, p)
      .has_value();
}

/// All non-twisted labelled n-shells of K, in a deterministic order.
/// The face family is grown slot by slot ((1,0),(1,1),(2,0),(2,1),...)
/// under the adjacency constraints
///   d_i^a(faces(j,b)) = d_{j-1}^b(faces(i,a))   for i < j,
/// with label pruning against the candidate tuples; vertex injectivity
/// and non-twistedness are checked on completed families.
inline std::vector<Shell> enumerate_shells(const Lps& k, std::size_t n,
                                           std::size_t p) {
  std::vector<Shell> out;
  const std::size_t slots = 2 * (n + 1);
  if (k.count(n) == 0) return out;
  const std::size_t nsigma = k.sigma()->size();

  std::vector<CubeIdx> faces(slots, 0);
  std::vector<LabelTuple> tuples;  // candidates, shrinks as slots fill

  std::function<void(std::size_t)> grow = [&](std::size_t slot) {
    if (slot == slots) {
      if (tuples.size() != 1) return;  // deletions of a tuple determine it
      Shell s{n, faces, tuples[0]};
      std::vector<CubeIdx> vm;
      try {
        vm = shell_vertex_map(k, s);
      } catch (const std::runtime_error&) {
        return;  // pairwise-adjacent but not a coherent boundary
      }
      if (non_twisted_certificate(vm, n + 1, p)) out.push_back(std::move(s));
      return;
    }
    const std::size_t j = slot / 2 + 1;
    const int b = static_cast<int>(slot % 2);
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      // adjacency with already assigned slots of smaller direction
      bool ok = true;
      for (std::size_t i = 1; i < j && ok; ++i)
        for (int a = 0; a < 2 && ok; ++a)
          if (n >= 1 &&
              k.face(n, x, i, a) !=
                  k.face(n, faces[2 * (i - 1) + static_cast<std::size_t>(a)],
                         j - 1, b))
            ok = false;
      if (!ok) continue;
      // label pruning
      std::vector<LabelTuple> kept;
      if (slot == 0) {
        for (LabelId a = 0; a < nsigma; ++a) {
          LabelTuple t = k.label(n, x).inserted(a);
          if (kept.empty() || !(kept.back() == t)) kept.push_back(t);
        }
      } else {
        for (const auto& t : tuples)
          if (t.deleted(j) == k.label(n, x)) kept.push_back(t);
      }
      if (kept.empty()) continue;
      faces[slot] = x;
      std::swap(tuples, kept);
      grow(slot + 1);
      std::swap(tuples, kept);
    }
  };
  grow(0);
  return out;
}

/// The labelled coskeleton: iterated filling of every non-twisted
/// labelled shell of a 1-dimensional input whose vertex set is {0,1}^p.
/// Each stage adds one (n+1)-cube per n-shell; injectivity of shell
/// vertex maps bounds the dimension by p.
inline Lps cosk(const Lps& k, std::size_t p) {
  if (k.dim() > 1) throw std::invalid_argument("cosk: input must be 1-dimensional");
  if (k.count(0) != (std::size_t{1} << p))
    throw std::invalid_argument("cosk: vertex set is not {0,1}^p");
  if (p < 2) return k;
  Lps cur = k;
  for (std::size_t n = 1; n + 1 <= p; ++n) {
    auto shells = enumerate_shells(cur, n, p);
    if (shells.empty()) break;
    for (const auto& s : shells) cur.add_cube(n + 1, s.faces, s.tuple);
  }
  return cur;
}

}  // namespace hda
