#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hda/precubical.hpp"

namespace hda {

class flow_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A morphism of the flow of labels: a nonempty commutative word,
/// i.e. a multiset of labels kept as a sorted vector.
struct CommWord {
  std::vector<LabelId> ids;  // sorted

  static CommWord of(std::vector<LabelId> v) {
    std::sort(v.begin(), v.end());
    return CommWord{std::move(v)};
  }
  CommWord operator*(const CommWord& o) const {
    std::vector<LabelId> out;
    out.reserve(ids.size() + o.ids.size());
    std::merge(ids.begin(), ids.end(), o.ids.begin(), o.ids.end(),
               std::back_inserter(out));
    return CommWord{std::move(out)};
  }
  bool operator==(const CommWord& o) const { return ids == o.ids; }

  std::string to_string(const LabelSet& sigma) const {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += "*";
      s += sigma.name(ids[i]);
    }
    return s;
  }
};

/// The dimension-<=2 discrete realization of a labelled precubical set:
/// states are the vertices, morphisms are directed edge paths modulo
/// the square relation of each 2-cube, labelled in commutative words
/// and graded by length.  Cubes above dimension 2 contribute nothing.
class FlowSet {
 public:
  using Path = std::vector<std::uint32_t>;  // edge ids

  struct PathClass {
    std::uint32_t id = 0;
    CubeIdx src = 0, dst = 0;
    std::uint32_t length = 0;
    CommWord label;
    Path rep;                    // lexicographically least member
    std::vector<Path> members;   // all paths of the class, sorted
  };

  std::size_t state_count() const { return states_; }
  const std::vector<PathClass>& classes() const { return classes_; }
  const PathClass& cls(std::uint32_t id) const { return classes_.at(id); }

  const std::vector<std::uint32_t>& hom(CubeIdx s, CubeIdx t) const {
    static const std::vector<std::uint32_t> empty;
    auto it = hom_.find({s, t});
    return it == hom_.end() ? empty : it->second;
  }

  /// Composition x*y; nullopt when not composable.
  std::optional<std::uint32_t> compose(std::uint32_t x,
                                       std::uint32_t y) const {
    const auto& a = classes_.at(x);
    const auto& b = classes_.at(y);
    if (a.dst != b.src) return std::nullopt;
    Path p = a.rep;
    p.insert(p.end(), b.rep.begin(), b.rep.end());
    return class_of_path_.at(p);
  }

  std::uint32_t class_of(const Path& p) const { return class_of_path_.at(p); }

  bool has_outgoing(CubeIdx s) const { return outgoing_[s]; }

  /// Same states and the same partition of the same path set.
  bool operator==(const FlowSet& o) const {
    if (states_ != o.states_) return false;
    auto partition = [](const FlowSet& f) {
      std::vector<std::vector<Path>> p;
      for (const auto& c : f.classes_) p.push_back(c.members);
      std::sort(p.begin(), p.end());
      return p;
    };
    return partition(*this) == partition(o);
  }

  friend FlowSet bad_realization_le2(const Lps& k);

 private:
  std::size_t states_ = 0;
  std::vector<PathClass> classes_;
  std::map<Path, std::uint32_t> class_of_path_;
  std::map<std::pair<CubeIdx, CubeIdx>, std::vector<std::uint32_t>> hom_;
  std::vector<bool> outgoing_;
};

inline FlowSet bad_realization_le2(const Lps& k) {
  const std::size_t nv = k.count(0);
  const std::size_t ne = k.count(1);

  // acyclicity of the 1-skeleton, else hom-sets are infinite
  {
    std::vector<std::size_t> indeg(nv, 0);
    for (CubeIdx e = 0; e < ne; ++e) ++indeg[k.face(1, e, 1, 1)];
    std::vector<CubeIdx> queue;
    for (CubeIdx v = 0; v < nv; ++v)
      if (indeg[v] == 0) queue.push_back(v);
    std::size_t seen = 0;
    std::vector<std::vector<CubeIdx>> out_edges(nv);
    for (CubeIdx e = 0; e < ne; ++e)
      out_edges[k.face(1, e, 1, 0)].push_back(e);
    while (!queue.empty()) {
      CubeIdx v = queue.back();
      queue.pop_back();
      ++seen;
      for (CubeIdx e : out_edges[v])
        if (--indeg[k.face(1, e, 1, 1)] == 0)
          queue.push_back(k.face(1, e, 1, 1));
    }
    if (seen != nv)
      throw flow_error("bad_realization_le2: cyclic 1-skeleton");
  }

  std::vector<std::vector<CubeIdx>> out_edges(nv);
  for (CubeIdx e = 0; e < ne; ++e)
    out_edges[k.face(1, e, 1, 0)].push_back(e);

  // all nonempty directed paths, in deterministic order
  std::vector<FlowSet::Path> paths;
  {
    FlowSet::Path cur;
    std::function<void(CubeIdx)> dfs = [&](CubeIdx v) {
      for (CubeIdx e : out_edges[v]) {
        cur.push_back(e);
        paths.push_back(cur);
        dfs(k.face(1, e, 1, 1));
        cur.pop_back();
      }
    };
    for (CubeIdx v = 0; v < nv; ++v) dfs(v);
  }
  std::map<FlowSet::Path, std::uint32_t> index;
  for (std::uint32_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;

  // the square relation: for each 2-cube c the two boundary composites
  // from its initial corner to its final corner are equated:
  //   [d_1^0 c then d_2^1 c] = [d_2^0 c then d_1^1 c]
  std::map<std::pair<CubeIdx, CubeIdx>, std::pair<CubeIdx, CubeIdx>> swap_to;
  for (CubeIdx c = 0; c < k.count(2); ++c) {
    std::pair<CubeIdx, CubeIdx> lhs{k.face(2, c, 1, 0), k.face(2, c, 2, 1)};
    std::pair<CubeIdx, CubeIdx> rhs{k.face(2, c, 2, 0), k.face(2, c, 1, 1)};
    swap_to[lhs] = rhs;
    swap_to[rhs] = lhs;
  }

  std::vector<std::uint32_t> parent(paths.size());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find =
      [&](std::uint32_t x) -> std::uint32_t {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::uint32_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    for (std::size_t t = 0; t + 1 < p.size(); ++t) {
      auto it = swap_to.find({p[t], p[t + 1]});
      if (it == swap_to.end()) continue;
      FlowSet::Path q = p;
      q[t] = it->second.first;
      q[t + 1] = it->second.second;
      unite(i, index.at(q));
    }
  }

  // group and order classes by (src, dst, least member)
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t i = 0; i < paths.size(); ++i)
    groups[find(i)].push_back(i);
  struct Raw {
    CubeIdx src, dst;
    FlowSet::Path rep;
    std::vector<FlowSet::Path> members;
  };
  std::vector<Raw> raw;
  for (auto& [root, ids] : groups) {
    Raw r;
    for (auto i : ids) r.members.push_back(paths[i]);
    std::sort(r.members.begin(), r.members.end());
    r.rep = r.members.front();
    r.src = k.face(1, r.rep.front(), 1, 0);
    r.dst = k.face(1, r.rep.back(), 1, 1);
    raw.push_back(std::move(r));
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    return std::tie(a.src, a.dst, a.rep) < std::tie(b.src, b.dst, b.rep);
  });

  FlowSet f;
  f.states_ = nv;
  f.outgoing_.assign(nv, false);
  for (CubeIdx v = 0; v < nv; ++v) f.outgoing_[v] = !out_edges[v].empty();
  for (std::uint32_t id = 0; id < raw.size(); ++id) {
    auto& r = raw[id];
    FlowSet::PathClass c;
    c.id = id;
    c.src = r.src;
    c.dst = r.dst;
    c.length = static_cast<std::uint32_t>(r.rep.size());
    std::vector<LabelId> w;
    for (CubeIdx e : r.rep) w.push_back(k.label(1, e)[0]);
    c.label = CommWord::of(std::move(w));
    c.rep = r.rep;
    c.members = std::move(r.members);
    for (const auto& p : c.members) f.class_of_path_[p] = id;
    f.hom_[{c.src, c.dst}].push_back(id);
    f.classes_.push_back(std::move(c));
  }
  return f;
}

inline std::vector<std::uint32_t> path_classes(const FlowSet& f, CubeIdx s,
                                               CubeIdx t) {
  return f.hom(s, t);
}

inline const CommWord& word_label(const FlowSet& f, std::uint32_t m) {
  return f.cls(m).label;
}

inline std::uint32_t class_length(const FlowSet& f, std::uint32_t m) {
  return f.cls(m).length;
}

struct AnalysisReport {
  std::size_t state_count = 0;
  std::vector<std::size_t> cube_counts;  // per dimension
  std::map<std::pair<CubeIdx, CubeIdx>, std::size_t> class_counts;
  std::vector<CubeIdx> final_states;
  std::vector<CubeIdx> deadlock_states;
  bool deadlocks_known = false;  // needs decorations
};

inline AnalysisReport analyze(const FlowSet& f, const PointedLps& p) {
  AnalysisReport r;
  r.state_count = f.state_count();
  for (std::size_t n = 0; n <= p.lps.dim(); ++n)
    r.cube_counts.push_back(p.lps.count(n));
  for (const auto& c : f.classes()) ++r.class_counts[{c.src, c.dst}];
  r.deadlocks_known = p.decorations.has_value();
  for (CubeIdx v = 0; v < f.state_count(); ++v) {
    if (f.has_outgoing(v)) continue;
    if (!r.deadlocks_known || is_terminal((*p.decorations)[v]))
      r.final_states.push_back(v);
    else
      r.deadlock_states.push_back(v);
  }
  return r;
}

}  // namespace hda
