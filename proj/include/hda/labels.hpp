#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hda {

using LabelId = std::uint32_t;

inline constexpr const char* kTauName = "tau";

/// Name of the complementary action: a <-> ~a, tau is self-dual.
inline std::string co_name(const std::string& name) {
  if (name == kTauName) return name;
  if (!name.empty() && name[0] == '~') return name.substr(1);
  return "~" + name;
}

/// A finite action alphabet with involution a <-> ~a and the silent
/// action tau.  Label ids follow the lexicographic order of the names,
/// so comparing ids compares names.
class LabelSet {
 public:
  static LabelSet from_names(const std::set<std::string>& base_names) {
    std::set<std::string> closed;
    closed.insert(kTauName);
    for (const auto& n : base_names) {
      closed.insert(n);
      closed.insert(co_name(n));
    }
    LabelSet s;
    s.names_.assign(closed.begin(), closed.end());  // sorted by std::set
    for (LabelId i = 0; i < s.names_.size(); ++i) s.index_[s.names_[i]] = i;
    s.involution_.resize(s.names_.size());
    for (LabelId i = 0; i < s.names_.size(); ++i)
      s.involution_[i] = s.index_.at(co_name(s.names_[i]));
    s.tau_ = s.index_.at(kTauName);
    return s;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(LabelId id) const { return names_.at(id); }
  LabelId involution(LabelId id) const { return involution_.at(id); }
  LabelId tau() const { return tau_; }

  bool contains(const std::string& name) const {
    return index_.count(name) != 0;
  }
  LabelId id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::out_of_range("unknown label: " + name);
    return it->second;
  }

  bool operator==(const LabelSet& o) const {
    return names_ == o.names_ && involution_ == o.involution_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, LabelId> index_;
  std::vector<LabelId> involution_;
  LabelId tau_ = 0;
};

using LabelSetPtr = std::shared_ptr<const LabelSet>;

/// Weakly increasing tuple of labels; the label of an n-cube.
class LabelTuple {
 public:
  LabelTuple() = default;
  explicit LabelTuple(std::vector<LabelId> ids) : ids_(std::move(ids)) {
    if (!std::is_sorted(ids_.begin(), ids_.end()))
      throw std::invalid_argument("label tuple must be weakly increasing");
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  LabelId operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<LabelId>& ids() const { return ids_; }

  /// Removes the i-th entry (1-based), the label of any face d_i^a.
  LabelTuple deleted(std::size_t i) const {
    std::vector<LabelId> out(ids_);
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i - 1));
    return LabelTuple(std::move(out));
  }

  /// Sorted insertion, inverse of deleted().
  LabelTuple inserted(LabelId a) const {
    std::vector<LabelId> out(ids_);
    out.insert(std::upper_bound(out.begin(), out.end(), a), a);
    return LabelTuple(std::move(out));
  }

  /// Restriction to a subset S of positions {1..n}, given as a bitmask
  /// (bit j-1 set means position j kept).  Preserves order.
  LabelTuple restricted(std::uint32_t position_mask) const {
    std::vector<LabelId> out;
    for (std::size_t j = 0; j < ids_.size(); ++j)
      if (position_mask & (1u << j)) out.push_back(ids_[j]);
    return LabelTuple(std::move(out));
  }

  bool operator==(const LabelTuple& o) const { return ids_ == o.ids_; }
  bool operator!=(const LabelTuple& o) const { return ids_ != o.ids_; }
  bool operator<(const LabelTuple& o) const { return ids_ < o.ids_; }

  std::string to_string(const LabelSet& sigma) const {
    std::string s = "(";
    for (std::size_t j = 0; j < ids_.size(); ++j) {
      if (j) s += ",";
      s += sigma.name(ids_[j]);
    }
    return s + ")";
  }

 private:
  std::vector<LabelId> ids_;
};

}  // namespace hda
