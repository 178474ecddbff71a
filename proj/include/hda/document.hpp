#pragma once

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hda/ccs.hpp"
#include "hda/precubical.hpp"
#include "hda/term.hpp"

namespace hda {

inline constexpr const char* kToolName = "ccshda";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

class document_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serializes a pointed labelled precubical set.  Cube ids are the
/// per-dimension dense indices, so import(export(K)) restores them
/// bit-exactly.
inline nlohmann::json export_document(const PointedLps& p,
                                      unsigned rec_depth) {
  const Lps& k = p.lps;
  const LabelSet& sigma = *k.sigma();
  nlohmann::json doc;
  doc["meta"] = {{"tool", kToolName},
                 {"version", kToolVersion},
                 {"schema", kSchemaVersion},
                 {"rec_depth", rec_depth},
                 {"approximation", p.approximate},
                 {"dim_capped", p.dim_capped}};
  nlohmann::json labels = nlohmann::json::array();
  for (LabelId a = 0; a < sigma.size(); ++a) labels.push_back(sigma.name(a));
  nlohmann::json invol = nlohmann::json::array();
  for (LabelId a = 0; a < sigma.size(); ++a)
    if (a < sigma.involution(a))
      invol.push_back({sigma.name(a), sigma.name(sigma.involution(a))});
  doc["sigma"] = {{"labels", labels},
                  {"involution", invol},
                  {"tau", sigma.name(sigma.tau())}};

  nlohmann::json dims = nlohmann::json::array();
  for (std::size_t n = 0; n <= k.dim(); ++n) {
    nlohmann::json level = nlohmann::json::array();
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      nlohmann::json cube;
      cube["id"] = x;
      if (n >= 1) {
        nlohmann::json faces = nlohmann::json::array();
        for (std::size_t i = 1; i <= n; ++i)
          faces.push_back({k.face(n, x, i, 0), k.face(n, x, i, 1)});
        cube["faces"] = faces;
        nlohmann::json lab = nlohmann::json::array();
        for (LabelId a : k.label(n, x).ids()) lab.push_back(sigma.name(a));
        cube["label"] = lab;
      }
      level.push_back(cube);
    }
    dims.push_back(level);
  }
  doc["cubes"] = dims;
  doc["initial"] = p.initial;
  if (p.decorations) {
    nlohmann::json dec = nlohmann::json::array();
    for (const auto& t : *p.decorations) dec.push_back(print_term(t));
    doc["decorations"] = dec;
  }
  return doc;
}

inline std::pair<PointedLps, unsigned> import_document(
    const nlohmann::json& doc) {
  try {
    if (doc.at("meta").at("schema").get<int>() != kSchemaVersion)
      throw document_error("unsupported schema version");
    std::set<std::string> names;
    for (const auto& n : doc.at("sigma").at("labels"))
      names.insert(n.get<std::string>());
    auto sigma = std::make_shared<const LabelSet>(LabelSet::from_names(names));
    for (LabelId a = 0; a < sigma->size(); ++a)
      if (doc.at("sigma").at("labels").at(a).get<std::string>() !=
          sigma->name(a))
        throw document_error("label set is not involution-closed and sorted");

    PointedLps p;
    p.lps = Lps(sigma);
    const auto& dims = doc.at("cubes");
    if (!dims.empty()) p.lps.set_vertex_count(dims.at(0).size());
    for (std::size_t n = 1; n < dims.size(); ++n) {
      for (const auto& cube : dims.at(n)) {
        std::vector<CubeIdx> faces(2 * n);
        for (std::size_t i = 1; i <= n; ++i) {
          faces[2 * (i - 1)] = cube.at("faces").at(i - 1).at(0).get<CubeIdx>();
          faces[2 * (i - 1) + 1] =
              cube.at("faces").at(i - 1).at(1).get<CubeIdx>();
        }
        std::vector<LabelId> lab;
        for (const auto& a : cube.at("label"))
          lab.push_back(sigma->id(a.get<std::string>()));
        p.lps.add_cube(n, faces, LabelTuple(std::move(lab)));
      }
    }
    p.initial = doc.at("initial").get<CubeIdx>();
    if (p.initial >= p.lps.count(0))
      throw document_error("initial vertex out of range");
    p.approximate = doc.at("meta").value("approximation", false);
    p.dim_capped = doc.at("meta").value("dim_capped", false);
    unsigned rec_depth = doc.at("meta").value("rec_depth", 0u);
    if (doc.contains("decorations")) {
      std::vector<TermPtr> dec;
      for (const auto& s : doc.at("decorations"))
        dec.push_back(parse(s.get<std::string>(), sigma.get()));
      if (dec.size() != p.lps.count(0))
        throw document_error("decoration count mismatch");
      p.decorations = std::move(dec);
    }
    return {std::move(p), rec_depth};
  } catch (const nlohmann::json::exception& e) {
    throw document_error(std::string("malformed document: ") + e.what());
  }
}

/// DOT digraph of the 1-skeleton; tau edges dashed, 2-cubes emitted as
/// comment annotations.
inline void export_dot(const PointedLps& p, std::ostream& os) {
  const Lps& k = p.lps;
  const LabelSet& sigma = *k.sigma();
  os << "digraph hda {\n  rankdir=LR;\n";
  for (CubeIdx v = 0; v < k.count(0); ++v) {
    os << "  v" << v << " [label=\"" << v;
    if (p.decorations) os << ": " << print_term((*p.decorations)[v]);
    os << "\"";
    if (v == p.initial) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (CubeIdx e = 0; e < k.count(1); ++e) {
    LabelId a = k.label(1, e)[0];
    os << "  v" << k.face(1, e, 1, 0) << " -> v" << k.face(1, e, 1, 1)
       << " [label=\"" << sigma.name(a) << "\"";
    if (a == sigma.tau()) os << ", style=dashed";
    os << "];\n";
  }
  for (std::size_t n = 2; n <= k.dim(); ++n)
    for (CubeIdx x = 0; x < k.count(n); ++x) {
      os << "  // " << n << "-cube " << x << " "
         << k.label(n, x).to_string(sigma) << " faces";
      for (std::size_t i = 1; i <= n; ++i)
        for (int al = 0; al < 2; ++al)
          os << " d" << i << "^" << al << "=" << k.face(n, x, i, al);
      os << "\n";
    }
  os << "}\n";
}

}  // namespace hda
