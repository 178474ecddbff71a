#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "hda/ccs.hpp"
#include "hda/compile.hpp"
#include "hda/document.hpp"
#include "hda/flow.hpp"
#include "hda/iso.hpp"
#include "hda/shells.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitNotIsomorphic = 2;
constexpr int kExitInternalError = 3;

std::string counts_line(const hda::Lps& k) {
  std::string s;
  for (std::size_t n = 0; n <= k.dim(); ++n) {
    if (n) s += "/";
    s += std::to_string(k.count(n));
  }
  return s;
}

hda::PointedLps load(const std::string& path, unsigned* rec_depth = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  auto [p, depth] = hda::import_document(doc);
  if (rec_depth) *rec_depth = depth;
  auto violations = hda::validate(p.lps);
  if (!violations.empty())
    throw std::runtime_error(path + ": invalid document: " +
                             violations.front());
  return std::move(p);
}

int cmd_compile(const std::string& term_text, unsigned rec_depth,
                int dim_cap, bool decorate, const std::string& out_path) {
  hda::TermPtr term = hda::parse(term_text);
  hda::CompileOptions opts;
  opts.rec_depth = rec_depth;
  if (dim_cap >= 0) opts.dim_cap = static_cast<std::size_t>(dim_cap);
  opts.decorate = decorate;
  hda::PointedLps p = hda::compile(term, opts);
  auto violations = hda::validate(p.lps);
  if (!violations.empty()) {
    std::cerr << "internal error: " << violations.front() << "\n";
    return kExitInternalError;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << hda::export_document(p, rec_depth).dump(2) << "\n";
  }
  std::cout << "cubes: " << counts_line(p.lps) << "\n";
  if (p.approximate)
    std::cout << "note: recursion approximated at depth " << rec_depth << "\n";
  if (p.dim_capped)
    std::cout << "note: construction truncated at the dimension cap\n";
  return kExitOk;
}

hda::CubeIdx resolve_state(const hda::PointedLps& p, const hda::FlowSet& f,
                           const std::string& name) {
  if (name == "initial") return p.initial;
  if (name == "final") {
    std::vector<hda::CubeIdx> finals;
    for (hda::CubeIdx v = 0; v < f.state_count(); ++v)
      if (!f.has_outgoing(v)) finals.push_back(v);
    if (finals.size() != 1)
      throw std::runtime_error("'final' is ambiguous: " +
                               std::to_string(finals.size()) +
                               " states without outgoing edges");
    return finals.front();
  }
  std::size_t pos = 0;
  unsigned long v = std::stoul(name, &pos);
  if (pos != name.size() || v >= p.lps.count(0))
    throw std::runtime_error("unknown state " + name);
  return static_cast<hda::CubeIdx>(v);
}

int cmd_paths(const std::string& path, const std::string& from,
              const std::string& to) {
  hda::PointedLps p = load(path);
  hda::FlowSet f = hda::bad_realization_le2(p.lps);
  hda::CubeIdx s = resolve_state(p, f, from);
  hda::CubeIdx t = resolve_state(p, f, to);
  auto classes = hda::path_classes(f, s, t);
  std::cout << classes.size() << " class(es) from " << s << " to " << t
            << "\n";
  for (auto id : classes) {
    const auto& c = f.cls(id);
    std::cout << "class " << id << ": length " << c.length << ", label "
              << c.label.to_string(*p.lps.sigma()) << ", edges";
    for (auto e : c.rep) std::cout << " " << e;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_iso(const std::string& a_path, const std::string& b_path) {
  hda::PointedLps a = load(a_path);
  hda::PointedLps b = load(b_path);
  auto iso = hda::iso_check(a.lps, b.lps);
  if (!iso) {
    std::cout << "not isomorphic\n";
    return kExitNotIsomorphic;
  }
  std::cout << "isomorphic\n";
  for (std::size_t n = 0; n < iso->first.component.size(); ++n) {
    std::cout << "dim " << n << ":";
    for (hda::CubeIdx x = 0; x < iso->first.component[n].size(); ++x)
      std::cout << " " << x << "->" << iso->first.component[n][x];
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_export_dot(const std::string& path, const std::string& out_path) {
  hda::PointedLps p = load(path);
  if (out_path.empty()) {
    hda::export_dot(p, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    hda::export_dot(p, out);
  }
  return kExitOk;
}

int cmd_hda_check(unsigned n) {
  static const char* kNames[] = {"a", "b", "c", "d", "e"};
  std::set<std::string> base(kNames, kNames + n);
  auto sigma =
      std::make_shared<const hda::LabelSet>(hda::LabelSet::from_names(base));
  std::vector<hda::LabelId> ids;
  for (unsigned i = 0; i < n; ++i) ids.push_back(sigma->id(kNames[i]));
  std::sort(ids.begin(), ids.end());
  hda::LabelTuple t(ids);
  hda::Lps cube = hda::standard_cube(n, t, sigma);
  hda::Lps filled = hda::cosk(hda::truncate(cube, 1), n);
  std::cout << "dim  cube  coskeleton\n";
  bool counts_ok = true;
  for (std::size_t d = 0; d <= n; ++d) {
    std::cout << d << "    " << cube.count(d) << "    " << filled.count(d)
              << "\n";
    counts_ok = counts_ok && cube.count(d) == filled.count(d);
  }
  bool ok = counts_ok && hda::iso_check(cube, filled).has_value();
  std::cout << (ok ? "pass" : "fail") << ": COSK(cube[" << n
            << "]_{<=1}) " << (ok ? "is" : "is NOT")
            << " isomorphic to cube[" << n << "]\n";
  return ok ? kExitOk : kExitInternalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CCS to higher-dimensional automata semantics compiler"};
  app.require_subcommand(1);

  std::string term_text, file_a, file_b, out_path, from_state, to_state;
  unsigned rec_depth = 4;
  int dim_cap = -1;
  bool decorate = false;
  unsigned check_n = 3;

  auto* c_compile = app.add_subcommand("compile", "compile a CCS term");
  c_compile->add_option("term", term_text, "CCS term text")->required();
  c_compile->add_option("--rec-depth", rec_depth,
                        "unfolding depth for rec terms");
  c_compile->add_option("--dim-cap", dim_cap, "cap on cube dimension");
  c_compile->add_flag("--decorate", decorate,
                      "decorate states with process names");
  c_compile->add_option("--out", out_path, "write the JSON document here");

  auto* c_paths = app.add_subcommand("paths", "list path classes");
  c_paths->add_option("file", file_a, "JSON document")->required();
  c_paths->add_option("--from", from_state, "source state id or 'initial'")
      ->required();
  c_paths->add_option("--to", to_state, "target state id or 'final'")
      ->required();

  auto* c_iso = app.add_subcommand("iso", "check isomorphism of two documents");
  c_iso->add_option("fileA", file_a, "first document")->required();
  c_iso->add_option("fileB", file_b, "second document")->required();

  auto* c_dot = app.add_subcommand("export-dot", "emit a DOT digraph");
  c_dot->add_option("file", file_a, "JSON document")->required();
  c_dot->add_option("--out", out_path, "output file (default stdout)");

  auto* c_check = app.add_subcommand(
      "hda-check", "verify the coskeleton fills the standard cube");
  c_check->add_option("n", check_n, "cube dimension (2..5)")
      ->required()
      ->check(CLI::Range(2u, 5u));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_compile)
      return cmd_compile(term_text, rec_depth, dim_cap, decorate, out_path);
    if (*c_paths) return cmd_paths(file_a, from_state, to_state);
    if (*c_iso) return cmd_iso(file_a, file_b);
    if (*c_dot) return cmd_export_dot(file_a, out_path);
    if (*c_check) return cmd_hda_check(check_n);
  } catch (const hda::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const hda::compile_error& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const hda::document_error& e) {
    std::cerr << "document error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "document error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}
