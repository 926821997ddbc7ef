#include "weylglue/cli.hpp"
#include "weylglue/error.hpp"
#include "weylglue/serialize.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <sstream>

using namespace weylglue;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "weylglue");
  std::vector<char*> argv;
  for (auto& a : args)
    argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
  const auto path = std::filesystem::temp_directory_path() / ("weylglue_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

ErrorKind kind_of(const std::function<void()>& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kInvariantViolation;
}

} // namespace

TEST_CASE("poset and diagram round trips")
{
  const FinitePoset p({"a", "b", "c"}, {{0, 1}, {1, 2}});
  const json pj = to_json(p);
  CHECK(pj["leq_pairs"].size() == 2);
  const FinitePoset q = poset_from_json(pj);
  CHECK(q.nodes() == p.nodes());
  CHECK(q.leq(0, 2));

  const SetDiagram d = weyl_glued_diagram(make_weyl_group("A2"));
  const json dj = to_json(d);
  CHECK(dj["maps"].contains("({},{1})"));
  const SetDiagram e = diagram_from_json(dj);
  CHECK(e.sets == d.sets);
  CHECK(e.maps == d.maps);
  CHECK(to_json(e).dump() == dj.dump());
}

TEST_CASE("complex and sheaf round trips")
{
  const ChainComplex c(-1, {{"a", "b"}, {"c"}}, {SparseMatrix::zero(0, 2), SparseMatrix::zero(2, 1)});
  const ChainComplex back = complex_from_json(to_json(c));
  CHECK(back.min_degree() == -1);
  CHECK(back.dim(0) == 1);

  std::mt19937_64 rng(3);
  const FinitePoset y({"z", "u", "v"}, {{0, 1}, {0, 2}});
  for (int trial = 0; trial < 10; ++trial) {
    const PosetSheaf f = random_sheaf(rng, y, 8);
    const json j = to_json(f);
    CHECK(to_json(sheaf_from_json(j)).dump() == j.dump());
  }

  json m = json::array({json::array({"1/2", 3}), json::array({0, "-4"})});
  const SparseMatrix s = matrix_from_json(m, 2, 2);
  CHECK(s.to_dense() == QMatrix{{Q(1) / 2, Q(3)}, {Q(0), Q(-4)}});
}

TEST_CASE("malformed input")
{
  CHECK(kind_of([] { poset_from_json(json::parse(R"({"nodes": ["a"], "leq_pairs": [[0, 5]]})")); }) ==
        ErrorKind::kMalformedInput);
  CHECK(kind_of([] { poset_from_json(json::parse(R"({"nodes": ["a", "b"], "leq_pairs": [[0, 1], [1, 0]]})")); }) ==
        ErrorKind::kMalformedInput);
  CHECK(kind_of([] { poset_from_json(json::parse(R"({"leq_pairs": []})")); }) == ErrorKind::kMalformedInput);
  CHECK(kind_of([] { matrix_from_json(json::parse(R"([["x"]])"), 1, 1); }) == ErrorKind::kMalformedInput);
  CHECK(kind_of([] { matrix_from_json(json::parse(R"([[1, 2]])"), 1, 1); }) == ErrorKind::kMalformedInput);
  CHECK(kind_of([] { read_json_file("/nonexistent/weylglue.json"); }) == ErrorKind::kMalformedInput);
  // d∘d != 0 is malformed input rather than an internal failure.
  CHECK(kind_of([] {
          complex_from_json(json::parse(
              R"({"min_degree": 0, "bases": [["a"], ["b"], ["c"]], "differentials": [[], [[1]], [[1]]]})"));
        }) == ErrorKind::kMalformedInput);
  // Maps missing on a cover pair.
  CHECK(kind_of([] {
          diagram_from_json(json::parse(
              R"({"poset": {"nodes": ["a", "b"], "leq_pairs": [["a", "b"]]}, "sets": {"a": ["x"], "b": ["y"]}, "maps": {}})"));
        }) == ErrorKind::kMalformedInput);
}

TEST_CASE("rootsys and schubert")
{
  const Result r = invoke({"rootsys", "A1", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["weyl_order"] == 2);
  CHECK(j["status"] == "pass");
  CHECK(r.err.find("wall time") != std::string::npos);

  CHECK(invoke({"schubert", "A3", "--all"}).code == 0);
  CHECK(invoke({"schubert", "A2", "--j0", "1", "--j", "2", "--w", "2", "--json"}).code == 0);
  CHECK(invoke({"rootsys", "2,-1;-1,2"}).code == 0);
}

TEST_CASE("verify-all on A2")
{
  const Result r = invoke({"verify-all", "A2", "--corpus", "5", "--sheaves", "5", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "pass");
  bool saw_betti = false;
  for (const auto& c : j["checks"]) {
    CHECK(c["status"] == "pass");
    if (c["payload"].contains("betti") && c["name"] == "glued homology A2") {
      CHECK(c["payload"]["betti"] == json::array({1, 1}));
      saw_betti = true;
    }
  }
  CHECK(saw_betti);
}

TEST_CASE("output is deterministic")
{
  const std::vector<std::string> args = {"verify-all", "A2", "--corpus", "8", "--sheaves", "4", "--seed", "99", "--json"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> ff = {"glue", "ff", "--type", "B2", "--json"};
  CHECK(invoke(ff).out == invoke(ff).out);
}

TEST_CASE("glue subcommands read files")
{
  const std::string diagram = temp_file("diagram.json", to_json(weyl_glued_diagram(make_weyl_group("A2"))).dump());
  const Result ff = invoke({"glue", "ff", "--diagram", diagram, "--json"});
  CHECK(ff.code == 0);
  CHECK(json::parse(ff.out)["status"] == "pass");

  const std::string poset = temp_file("poset.json", to_json(FinitePoset({"z", "u"}, {{0, 1}})).dump());
  CHECK(invoke({"glue", "recollement", "--poset", poset, "--open", "u"}).code == 0);
  CHECK(invoke({"glue", "recollement", "--poset", poset, "--open", "z"}).code == 2);
  const std::string bad = temp_file("bad.json", "{ not json");
  CHECK(invoke({"glue", "ff", "--diagram", bad}).code == 4);
}

TEST_CASE("exit codes")
{
  CHECK(invoke({"rootsys", "Q7"}).code == 3);
  CHECK(invoke({"rootsys", "2,-2;-2,2"}).code == 6);
  CHECK(invoke({"schubert", "A2", "--j0", "7"}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  setenv("WEYLGLUE_MAX_ORDER", "100", 1);
  CHECK(invoke({"rootsys", "D4"}).code == 5);
  unsetenv("WEYLGLUE_MAX_ORDER");
  CHECK(invoke({"rootsys", "D4"}).code == 0);
}
