#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hda/ccs.hpp"
#include "hda/compile.hpp"
#include "hda/labels.hpp"
#include "hda/precubical.hpp"

namespace testutil {

inline hda::LabelSetPtr sigma_abcde() {
  static hda::LabelSetPtr s = std::make_shared<const hda::LabelSet>(
      hda::LabelSet::from_names({"a", "b", "c", "d", "e"}));
  return s;
}

inline hda::LabelTuple tuple(const std::vector<std::string>& names,
                             const hda::LabelSetPtr& sigma = sigma_abcde()) {
  std::vector<hda::LabelId> ids;
  for (const auto& n : names) ids.push_back(sigma->id(n));
  std::sort(ids.begin(), ids.end());
  return hda::LabelTuple(ids);
}

inline hda::PointedLps compile_text(const std::string& text,
                                    unsigned rec_depth = 4) {
  hda::CompileOptions opts;
  opts.rec_depth = rec_depth;
  return hda::compile(hda::parse(text), opts, sigma_abcde());
}

}  // namespace testutil
