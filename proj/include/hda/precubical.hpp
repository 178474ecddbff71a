#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hda/labels.hpp"
#include "hda/term.hpp"

namespace hda {

using CubeIdx = std::uint32_t;

/// A finite labelled precubical set.  Cubes of each dimension are
/// numbered densely from 0; an n-cube stores its 2n faces
/// d_i^a (1 <= i <= n, a in {0,1}) as indices into dimension n-1 and a
/// weakly increasing label tuple of length n.  Vertices carry the empty
/// tuple implicitly.
class Lps {
 public:
  struct Level {
    std::vector<CubeIdx> faces;     // count * 2n, slot 2*(i-1)+a
    std::vector<LabelTuple> labels; // count
  };

  Lps() = default;
  explicit Lps(LabelSetPtr sigma) : sigma_(std::move(sigma)) {}

  const LabelSetPtr& sigma() const { return sigma_; }

  /// Largest n with cubes; 0 for a set of vertices, 0 for empty too.
  std::size_t dim() const { return levels_.size(); }

  std::size_t count(std::size_t n) const {
    if (n == 0) return vertices_;
    if (n > levels_.size()) return 0;
    return levels_[n - 1].labels.size();
  }

  std::size_t total_cubes() const {
    std::size_t t = vertices_;
    for (const auto& l : levels_) t += l.labels.size();
    return t;
  }

  CubeIdx face(std::size_t n, CubeIdx x, std::size_t i, int alpha) const {
    return levels_[n - 1].faces[x * 2 * n + 2 * (i - 1) +
                                static_cast<std::size_t>(alpha)];
  }

  const LabelTuple& label(std::size_t n, CubeIdx x) const {
    static const LabelTuple empty;
    if (n == 0) return empty;
    return levels_[n - 1].labels[x];
  }

  CubeIdx add_vertex() { return static_cast<CubeIdx>(vertices_++); }

  void set_vertex_count(std::size_t c) { vertices_ = c; }

  CubeIdx add_cube(std::size_t n, const std::vector<CubeIdx>& faces,
                   LabelTuple tuple) {
    if (n == 0 || faces.size() != 2 * n || tuple.size() != n)
      throw std::invalid_argument("add_cube: bad arity");
    if (levels_.size() < n) levels_.resize(n);
    auto& lvl = levels_[n - 1];
    lvl.faces.insert(lvl.faces.end(), faces.begin(), faces.end());
    lvl.labels.push_back(std::move(tuple));
    return static_cast<CubeIdx>(lvl.labels.size() - 1);
  }

  /// Drops trailing empty levels.
  void normalize() {
    while (!levels_.empty() && levels_.back().labels.empty())
      levels_.pop_back();
  }

 private:
  LabelSetPtr sigma_;
  std::size_t vertices_ = 0;
  std::vector<Level> levels_;
};

/// The vertex of an n-cube at corner eps in {0,1}^n (bit j-1 of eps is
/// coordinate j).  Fixes coordinates in descending order; the cubical
/// relations make the result order-independent.
inline CubeIdx vertex_of(const Lps& k, std::size_t n, CubeIdx x,
                         std::uint32_t eps) {
  for (std::size_t i = n; i >= 1; --i)
    x = k.face(i, x, i, static_cast<int>((eps >> (i - 1)) & 1u));
  return x;
}

/// Checks the cubical relations and label compatibility.  Violations
/// are returned as human-readable strings; empty means valid.
inline std::vector<std::string> validate(const Lps& k) {
  std::vector<std::string> out;
  for (std::size_t n = 1; n <= k.dim(); ++n) {
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      for (std::size_t i = 1; i <= n; ++i) {
        for (int a = 0; a < 2; ++a) {
          CubeIdx f = k.face(n, x, i, a);
          if (f >= k.count(n - 1)) {
            out.push_back("dim " + std::to_string(n) + " cube " +
                          std::to_string(x) + ": face out of range");
            continue;
          }
          if (k.label(n - 1, f) != k.label(n, x).deleted(i))
            out.push_back("dim " + std::to_string(n) + " cube " +
                          std::to_string(x) + ": face (" + std::to_string(i) +
                          "," + std::to_string(a) +
                          ") label is not delete_i of the tuple");
        }
      }
      // d_i^a d_j^b = d_{j-1}^b d_i^a for i < j
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              if (n >= 2 &&
                  k.face(n - 1, k.face(n, x, j, b), i, a) !=
                      k.face(n - 1, k.face(n, x, i, a), j - 1, b))
                out.push_back("dim " + std::to_string(n) + " cube " +
                              std::to_string(x) + ": cubical relation (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ") violated");
    }
  }
  return out;
}

/// The standard labelled n-cube.  k-cubes are the pairs (S, v) with S a
/// k-subset of {1..n} (free coordinates) and v a 0/1 assignment of the
/// complement; numbering is by increasing (S, v) encoded as bitmasks.
class StandardCube {
 public:
  StandardCube(std::size_t n, const LabelTuple& t, LabelSetPtr sigma)
      : n_(n) {
    if (t.size() != n)
      throw std::invalid_argument("standard_cube: tuple length mismatch");
    lps_ = Lps(std::move(sigma));
    index_.resize(n + 1);
    const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::uint32_t s = 0;; ++s) {
        if (static_cast<std::size_t>(__builtin_popcount(s)) == k) {
          const std::uint32_t comp = full & ~s;
          // iterate assignments of the complement in increasing order
          std::uint32_t v = 0;
          while (true) {
            if (k == 0) {
              index_[k][{s, v}] = lps_.add_vertex();
            } else {
              std::vector<CubeIdx> faces(2 * k);
              for (std::size_t i = 1; i <= k; ++i) {
                std::uint32_t bit = nth_bit(s, i);
                for (int a = 0; a < 2; ++a)
                  faces[2 * (i - 1) + static_cast<std::size_t>(a)] =
                      index_[k - 1].at(
                          {s & ~bit, a ? (v | bit) : v});
              }
              index_[k][{s, v}] = lps_.add_cube(k, faces, t.restricted(s));
            }
            // next subset of comp
            if (v == comp) break;
            v = (v - comp) & comp;  // enumerates submasks ascending
          }
        }
        if (s == full) break;
      }
    }
    lps_.normalize();
  }

  const Lps& lps() const { return lps_; }
  Lps take() { return std::move(lps_); }

  /// Index of the cube with free coordinates S and fixed values v.
  CubeIdx cube(std::uint32_t s, std::uint32_t v) const {
    return index_[static_cast<std::size_t>(__builtin_popcount(s))].at({s, v});
  }

  CubeIdx vertex(std::uint32_t eps) const { return index_[0].at({0u, eps}); }

 private:
  static std::uint32_t nth_bit(std::uint32_t mask, std::size_t i) {
    for (std::uint32_t b = 1;; b <<= 1)
      if (mask & b)
        if (--i == 0) return b;
  }

  std::size_t n_;
  Lps lps_;
  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, CubeIdx>>
      index_;
};

inline Lps standard_cube(std::size_t n, const LabelTuple& t,
                         LabelSetPtr sigma) {
  return StandardCube(n, t, std::move(sigma)).take();
}

inline Lps truncate(const Lps& k, std::size_t n) {
  Lps out(k.sigma());
  out.set_vertex_count(k.count(0));
  for (std::size_t d = 1; d <= std::min(n, k.dim()); ++d)
    for (CubeIdx x = 0; x < k.count(d); ++x) {
      std::vector<CubeIdx> faces(2 * d);
      for (std::size_t i = 1; i <= d; ++i)
        for (int a = 0; a < 2; ++a)
          faces[2 * (i - 1) + static_cast<std::size_t>(a)] = k.face(d, x, i, a);
      out.add_cube(d, faces, k.label(d, x));
    }
  return out;
}

/// The boundary of the standard n-cube; empty for n = 0.
inline Lps boundary(std::size_t n, const LabelTuple& t, LabelSetPtr sigma) {
  if (n == 0) return Lps(std::move(sigma));  // 0 vertices
  return truncate(standard_cube(n, t, std::move(sigma)), n - 1);
}

/// A labelled precubical set with a distinguished initial vertex and
/// optional process-name decorations on vertices.
struct PointedLps {
  Lps lps;
  CubeIdx initial = 0;
  std::optional<std::vector<TermPtr>> decorations;
  bool approximate = false;   // recursion finitized at rec_depth
  bool dim_capped = false;    // construction truncated at dim_cap
};

/// A label-preserving, face-commuting map; component[n] maps n-cubes of
/// the source to n-cubes of the target.
struct Morphism {
  std::vector<std::vector<CubeIdx>> component;  // per dimension

  CubeIdx at(std::size_t n, CubeIdx x) const { return component[n][x]; }
};

inline std::vector<std::string> morphism_violations(const Lps& src,
                                                    const Lps& dst,
                                                    const Morphism& m) {
  std::vector<std::string> out;
  if (m.component.size() < src.dim() + 1) {
    out.push_back("morphism: missing components");
    return out;
  }
  for (std::size_t n = 0; n <= src.dim(); ++n) {
    if (m.component[n].size() != src.count(n)) {
      out.push_back("morphism: component size mismatch at dim " +
                    std::to_string(n));
      return out;
    }
    for (CubeIdx x = 0; x < src.count(n); ++x) {
      CubeIdx y = m.component[n][x];
      if (y >= dst.count(n)) {
        out.push_back("morphism: image out of range at dim " +
                      std::to_string(n));
        continue;
      }
      if (dst.label(n, y) != src.label(n, x))
        out.push_back("morphism: label not preserved at dim " +
                      std::to_string(n) + " cube " + std::to_string(x));
      for (std::size_t i = 1; i <= n; ++i)
        for (int a = 0; a < 2; ++a)
          if (m.component[n - 1][src.face(n, x, i, a)] !=
              dst.face(n, y, i, a))
            out.push_back("morphism: face square fails at dim " +
                          std::to_string(n) + " cube " + std::to_string(x));
    }
  }
  return out;
}

}  // namespace hda
