#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epic/cli.hpp"

using namespace epic;
using namespace epic::cli;

namespace {

const std::string kData = EPIC_TEST_DATA;
const std::string kZ = kData + "/z.epic";
const std::string kBroken = kData + "/broken.epic";
const std::string kCorpus = kData + "/corpus.epic";

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("epic_test_" + name)).string();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string load_error(const std::string& text) {
  try {
    parse_workspace(text, "t.epic");
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

// Runs a construct verb into a file, reloads it, and verifies the named demo.
Workspace construct(std::vector<std::string> args, const std::string& tag) {
  std::string out = temp_path(tag + ".epic");
  args.push_back("--out");
  args.push_back(out);
  auto r = run_cli(args);
  INFO(r.err);
  REQUIRE(r.code == kOk);
  return load({out});
}

}  // namespace

TEST_CASE("loading the Z demonstration file") {
  Workspace w = load({kZ});
  CHECK(w.groups.size() == 1);
  CHECK(w.automata.size() == 1);
  CHECK(w.demos.size() == 1);
  CHECK(demo::verify_no_identity(w.demonstration("Z"), 8).empty());
}

TEST_CASE("load errors name the problem and the line") {
  std::string e = load_error("demonstration D\n  group Nope\n  automaton A\nend\nautomaton A\n  alphabet a\nend\n");
  CHECK(contains(e, "Nope"));
  CHECK(e.rfind("t.epic:2:", 0) == 0);

  CHECK(contains(load_error("group G zk rank 1\nend\ngroup G zk rank 1\nend\n"), "duplicate group 'G'"));
  CHECK(contains(load_error("automaton A\n  alphabet a a\nend\n"), "alphabet collision"));
  CHECK(load_error("automaton A\n  alphabet a\n  states s\n  trans s b s\nend\n").rfind("t.epic:4:", 0) == 0);
  CHECK(contains(load_error("automaton A\n  alphabet eps\nend\n"), "reserved"));
  CHECK(contains(load_error("automaton A\n  states s\n"), "missing 'end'"));
  CHECK(load_error("bogus X\nend\n").rfind("t.epic:1:", 0) == 0);
  CHECK(load_error("group G perm degree 2\n  gen a = (1 3)\nend\n").rfind("t.epic:2:", 0) == 0);
  CHECK(contains(load_error("group G graphproduct\n  vertices u\n  vertex u uses H\nend\n"), "undefined group 'H'"));
  CHECK(contains(load_error("group A perm degree 2\n  gen a = (1 2)\nend\ngroup G graphproduct\n  vertices u v\n"
                            "  vertex u uses A\n  vertex v uses A\nend\n"),
                 "not disjoint"));
  CHECK(contains(load_error("group G graphproduct\n  vertices u\n  vertex u uses G\nend\n"), "refers to itself"));
  CHECK(load_error("group G matrix dim 2\n  gen m = [[2,0],[0,1]]\nend\n").rfind("t.epic:2:", 0) == 0);
  CHECK(contains(load_error("cosettable T group Nope\nend\n"), "undefined group 'Nope'"));
  CHECK(contains(load_error("presentation P\n  alphabet a\n  relator a b\nend\n"), "unpaired letter 'b'"));
}

TEST_CASE("errors in a second file name that file") {
  std::string bad = temp_path("bad.epic");
  std::ofstream(bad) << "\n\nautomaton A\n  alphabet a\n  states s\n  initial q\nend\n";
  try {
    load({kZ, bad});
    FAIL("expected a load error");
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).rfind(bad + ":6:", 0) == 0);
  }
}

TEST_CASE("the padding letter is not a comment") {
  Workspace w = load({kCorpus});
  const auto& t = w.automaton("Triples");
  CHECK(t.alphabet().size() == 5);
  CHECK(t.alphabet()[0].name() == "(#pad|a|a)");
}

TEST_CASE("render round-trips every block kind") {
  Workspace w = load({kCorpus});
  CHECK(w.groups.size() == 10);
  CHECK(w.automata.size() == 4);
  CHECK(w.demos.size() == 6);
  CHECK(w.tables.size() == 1);
  CHECK(w.presentations.size() == 1);
  std::string once = render(w);
  Workspace again = parse_workspace(once);
  CHECK(render(again) == once);
  // the reloaded objects behave the same
  for (const auto& name : w.demo_order) {
    auto r1 = demo::verify_coverage(w.demonstration(name), 2, 4);
    auto r2 = demo::verify_coverage(again.demonstration(name), 2, 4);
    CHECK(demo::render_report(r1) == demo::render_report(r2));
  }
  CHECK(again.demonstration("Twice").subgroup().has_value());
}

TEST_CASE("verify") {
  auto ok = run_cli({"verify", "--demo", "Z", "--max-len", "12", "--ball", "12", kZ});
  CHECK(ok.code == kOk);
  CHECK(contains(ok.out, "identity violations: 0, missing: 0"));
  CHECK(run_cli({"verify", "--demo", "Z", "--max-len", "12", "--ball", "12", kZ}).out == ok.out);

  auto builtin = run_cli({"verify", "--demo", "builtin:z", "--max-len", "12", "--ball", "12"});
  CHECK(builtin.code == kOk);
  CHECK(builtin.out == ok.out);

  auto broken = run_cli({"verify", "--demo", "Broken", "--max-len", "3", kBroken});
  CHECK(broken.code == kViolation);
  CHECK(contains(broken.out, "violating words:\n  eps\n"));

  auto porcelain = run_cli({"verify", "--demo", "Broken", "--max-len", "3", "--ball", "1", "--porcelain", kBroken});
  CHECK(porcelain.code == kViolation);
  CHECK(contains(porcelain.out, "violation\teps\n"));
}

TEST_CASE("misses fail only for finite groups past the completeness bound") {
  // with nothing searched every non-identity element is a miss
  auto loose = run_cli({"verify", "--demo", "S3all", "--max-len", "1", "--ball", "1", "--search-len", "0", kCorpus});
  CHECK(loose.code == kOk);
  CHECK(contains(loose.out, "missing: 5"));
  auto strict = run_cli({"verify", "--demo", "S3all", "--max-len", "1", "--ball", "1", "--search-len", "0",
                     "--complete-at", "0", kCorpus});
  CHECK(strict.code == kViolation);
  auto infinite = run_cli({"verify", "--demo", "ZDemo", "--max-len", "1", "--ball", "3", "--complete-at", "0", kCorpus});
  CHECK(infinite.code == kOk);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({"frobnicate"}).code == kUsage);
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"verify", "--demo", "Z", kZ}).code == kUsage);
  CHECK(run_cli({"verify", "--demo", "Z", "--max-len", "3", "--bogus", kZ}).code == kUsage);
  CHECK(run_cli({"verify", "--demo", "Nope", "--max-len", "3", kZ}).code == kUsage);
  CHECK(run_cli({"enumerate", "--max-len", "3", kZ}).code == kUsage);
  CHECK(run_cli({"verify", "--demo", "Z", "--max-len", "3", kData + "/missing.epic"}).code == kUsage);
}

TEST_CASE("enumerate and ball") {
  auto e = run_cli({"enumerate", "--automaton", "ZA", "--max-len", "3", kZ});
  CHECK(e.code == kOk);
  CHECK(e.out == "a\na^-1\na a\na^-1 a^-1\na a a\na^-1 a^-1 a^-1\n");
  auto b = run_cli({"ball", "--group", "ZG", "--radius", "1", kZ});
  CHECK(b.out == "zk:(-1) <- a^-1\nzk:(0) <- eps\nzk:(1) <- a\nelements: 3\n");
}

TEST_CASE("construct change-gens") {
  auto w = construct({"construct", "change-gens", "--demo", "ZDemo", "--letter", "y=a a", "--letter",
                      "v=a^-1 a^-1 a^-1", "--map", "a=y y v", "--map", "a^-1=v y", "--name", "ZYV", kCorpus},
                     "cg");
  const auto& d = w.demonstration("ZYV");
  CHECK(demo::verify_no_identity(d, 12).empty());
  CHECK(demo::verify_coverage(d, 4, 12).missing.empty());

  auto searched = construct({"construct", "change-gens", "--demo", "S3all", "--letter", "s=s", "--letter", "r=r",
                             "--search", "3", kCorpus},
                            "cg2");
  CHECK(demo::verify_coverage(searched.demonstration("result"), 3, 3).missing.empty());
}

TEST_CASE("construct extension") {
  auto w = construct({"construct", "extension", "--n-demo", "Center", "--q-demo", "Quot", "--group", "Heis",
                      "--lift", "a=x", "--lift", "a^-1=x^-1", "--lift", "b=y", "--lift", "b^-1=y^-1", kCorpus},
                     "ext");
  const auto& d = w.demonstration("result");
  CHECK(demo::verify_no_identity(d, 6).empty());
  CHECK(demo::verify_coverage(d, 2, 8).missing.empty());
}

TEST_CASE("construct fi-overgroup and fi-subgroup") {
  std::string dinf = temp_path("dinf.epic");
  std::ofstream(dinf) << "group D matrix dim 2\n  gen a = [[1,1],[0,1]]\n  gen a^-1 = inv a\n"
                         "  gen s = [[-1,0],[0,1]]\nend\n";
  auto over = construct({"construct", "fi-overgroup", "--demo", "ZDemo", "--group", "D", "--transversal", "t=s",
                         kCorpus, dinf},
                        "ovg");
  CHECK(demo::verify_no_identity(over.demonstration("result"), 8).empty());
  CHECK(demo::verify_coverage(over.demonstration("result"), 3, 8).missing.empty());

  auto sub = construct({"construct", "fi-subgroup", "--demo", "ZDemo", "--table", "Even", kCorpus}, "sub");
  const auto& d = sub.demonstration("result");
  CHECK(d.subgroup().has_value());
  auto r = demo::verify_coverage(d, 6, 6);
  CHECK(r.covered.size() == 6);
  CHECK(r.missing.empty());
}

TEST_CASE("construct graph-product") {
  auto w = construct({"construct", "graph-product", "--vertex", "u=Zn", "--vertex", "v=Center", "--edge", "u,v",
                      "--name", "Z2", kCorpus},
                     "gp");
  const auto& d = w.demonstration("Z2");
  CHECK(d.oracle()->kind() == "graphproduct");
  CHECK(demo::verify_coverage(d, 3, 6).missing.empty());
  CHECK(demo::verify_no_identity(d, 6).empty());
}

TEST_CASE("construct autostackable-project and cross-section") {
  auto proj = construct({"construct", "autostackable-project", "--automaton", "Triples", "--name", "N", kCorpus},
                        "as");
  CHECK(automata::enumerate(proj.automaton("N"), 2).size() == 5);

  std::string nfile = temp_path("as.epic");
  auto cs = construct({"construct", "cross-section", "--automaton", "N", "--group", "Z", nfile, kCorpus}, "cs");
  CHECK(automata::enumerate(cs.demonstration("result").language(), 3) ==
        automata::enumerate(demo::z_demo().language(), 3));
}

TEST_CASE("wp decide") {
  auto in = run_cli({"wp", "decide", "--presentation", "Comm", "--demo", "Quot", "--word", "a b a^-1 b^-1", kCorpus});
  CHECK(in.code == kOk);
  CHECK(contains(in.out, "verdict: IN_WP\n"));
  CHECK(contains(in.out, "replay: ok\n"));
  auto out = run_cli({"wp", "decide", "--presentation", "Comm", "--demo", "Quot", "--word", "a b", kCorpus});
  CHECK(contains(out.out, "verdict: NOT_IN_WP\n"));

  std::string frontier = temp_path("frontier.json");
  auto part = run_cli({"wp", "decide", "--presentation", "Comm", "--demo", "Quot", "--word", "a a b a^-1 b^-1 a^-1",
                   "--budget", "5", "--save", frontier, kCorpus});
  CHECK(contains(part.out, "verdict: BUDGET_EXCEEDED\n"));
  auto rest = run_cli({"wp", "decide", "--presentation", "Comm", "--demo", "Quot", "--word", "a a b a^-1 b^-1 a^-1",
                   "--resume", frontier, kCorpus});
  auto whole = run_cli({"wp", "decide", "--presentation", "Comm", "--demo", "Quot", "--word", "a a b a^-1 b^-1 a^-1",
                    kCorpus});
  CHECK(rest.out == whole.out);
  CHECK(contains(rest.out, "verdict: IN_WP\n"));
}

TEST_CASE("wp coword") {
  auto r = run_cli({"wp", "coword", "--group", "Z", "--count", "3", kCorpus});
  CHECK(r.out == "0: a\n1: a^-1\n2: a a\n");
}

TEST_CASE("render verb prints the normalized workspace") {
  auto r = run_cli({"render", kZ});
  CHECK(r.code == kOk);
  CHECK(render(parse_workspace(r.out)) == r.out);
  CHECK(contains(read(kZ), "letter a = a"));
  CHECK(contains(r.out, "demonstration Z\n  group ZG\n  letter a = a\n  letter a^-1 = a^-1\n  automaton ZA\nend\n"));
}
