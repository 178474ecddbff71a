// End-to-end driver for the command line tool.
// argv[1] = path to the binary, argv[2] = scratch directory.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_bin, g_dir;
int g_failures = 0;

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string out_file = g_dir + "/out.txt";
  const std::string cmd =
      "'" + g_bin + "' " + args + " > '" + out_file + "' 2>&1";
  int status = std::system(cmd.c_str());
  int code = (status >= 0 && (status & 0x7f) == 0) ? ((status >> 8) & 0xff)
                                                   : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::fprintf(stderr, "FAIL: %s\n", what.c_str());
    ++g_failures;
  }
}

void expect_contains(const Result& r, const std::string& needle,
                     const std::string& what) {
  expect(r.out.find(needle) != std::string::npos,
         what + " (missing '" + needle + "' in output:\n" + r.out + ")");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_driver <binary> <scratch-dir>\n");
    return 2;
  }
  g_bin = argv[1];
  g_dir = argv[2];

  const std::string grid = g_dir + "/grid.json";
  const std::string sync = g_dir + "/sync.json";
  const std::string chain = g_dir + "/chain.json";

  // compile: counts on stdout, document on disk
  {
    Result r = run("compile 'a.nil || b.nil' --decorate --out '" + grid + "'");
    expect(r.code == 0, "compile exits 0");
    expect_contains(r, "cubes: 4/4/1", "compile prints the cube counts");
    std::ifstream f(grid);
    std::string head;
    f >> head;
    expect(head == "{", "compile writes a JSON document");
  }
  {
    Result r = run("compile 'a.nil || ~a.nil' --decorate --out '" + sync + "'");
    expect(r.code == 0, "compile (sync) exits 0");
    expect_contains(r, "cubes: 4/5/1", "sync pair has the tau edge");
  }
  {
    Result r = run("compile 'a.b.nil' --out '" + chain + "'");
    expect(r.code == 0, "compile (chain) exits 0");
    expect_contains(r, "cubes: 3/2", "chain counts");
  }
  {
    Result r = run("compile 'rec x . a.x' --rec-depth 2");
    expect(r.code == 0, "recursive compile exits 0");
    expect_contains(r, "approximated at depth 2", "approximation notice");
  }

  // paths
  {
    Result r = run("paths '" + grid + "' --from initial --to final");
    expect(r.code == 0, "paths exits 0");
    expect_contains(r, "1 class(es)", "filled square has one class");
    expect_contains(r, "length 2", "its length is 2");
    expect_contains(r, "a*b", "its label is a*b");
  }
  {
    Result r = run("paths '" + sync + "' --from initial --to final");
    expect(r.code == 0, "paths (sync) exits 0");
    expect_contains(r, "2 class(es)", "sync pair has two classes");
    expect_contains(r, "label tau", "one of them is the tau step");
  }
  {
    Result r = run("paths '" + grid + "' --from 99 --to final");
    expect(r.code == 1, "unknown state is a user error");
  }

  // iso
  {
    Result r = run("iso '" + grid + "' '" + grid + "'");
    expect(r.code == 0, "self iso exits 0");
    expect_contains(r, "isomorphic", "self iso says isomorphic");
  }
  {
    Result r = run("iso '" + grid + "' '" + sync + "'");
    expect(r.code == 2, "different complexes exit 2");
    expect_contains(r, "not isomorphic", "and say so");
  }

  // export-dot
  {
    Result r = run("export-dot '" + grid + "'");
    expect(r.code == 0, "export-dot exits 0");
    expect_contains(r, "digraph", "emits a digraph");
    expect_contains(r, "doublecircle", "marks the initial state");
  }
  {
    const std::string dot = g_dir + "/g.dot";
    Result r = run("export-dot '" + sync + "' --out '" + dot + "'");
    expect(r.code == 0, "export-dot --out exits 0");
    std::ifstream f(dot);
    std::stringstream ss;
    ss << f.rdbuf();
    expect(ss.str().find("style=dashed") != std::string::npos,
           "tau edge is dashed in the file");
  }

  // hda-check
  {
    Result r = run("hda-check 3");
    expect(r.code == 0, "hda-check 3 exits 0");
    expect_contains(r, "pass", "hda-check reports pass");
  }
  {
    Result r = run("hda-check 9");
    expect(r.code != 0, "out-of-range n is rejected");
  }

  // user errors
  expect(run("compile 'a.'").code == 1, "syntax error exits 1");
  expect(run("compile 'rec x . x'").code == 1, "unguarded rec exits 1");
  expect(run("paths '" + g_dir + "/nope.json' --from 0 --to 1").code == 1,
         "missing file exits 1");
  {
    std::ofstream bad(g_dir + "/bad.json");
    bad << "{\"meta\": {\"schema\": 999}}\n";
  }
  expect(run("iso '" + g_dir + "/bad.json' '" + grid + "'").code == 1,
         "bad document exits 1");

  if (g_failures == 0) std::printf("cli_driver: all checks passed\n");
  return g_failures == 0 ? 0 : 1;
}
