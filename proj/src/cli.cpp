#include "weylglue/cli.hpp"

#include "weylglue/error.hpp"
#include "weylglue/glue.hpp"
#include "weylglue/hocolim.hpp"
#include "weylglue/parabolic.hpp"
#include "weylglue/polytope.hpp"
#include "weylglue/serialize.hpp"
#include "weylglue/suites.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace weylglue {

namespace {

constexpr const char* kExitCodes = R"(Exit codes:
  0  all checks passed
  1  a check failed
  2  invalid argument
  3  unknown type label
  4  malformed JSON input
  5  resource cap exceeded (WEYLGLUE_MAX_ORDER, hull rank, adjunction size)
  6  Cartan matrix is not of finite type
  7  internal invariant violated

Environment:
  WEYLGLUE_MAX_ORDER  cap on |W| (default 2000))";

std::size_t max_order()
{
  const char* env = std::getenv("WEYLGLUE_MAX_ORDER");
  if (!env || !*env)
    return kDefaultMaxOrder;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw Error(ErrorKind::kInvalidArgument, std::string("WEYLGLUE_MAX_ORDER must be a positive integer, got '") + env + "'");
  return static_cast<std::size_t>(v);
}

IntMatrix parse_cartan(const std::string& text)
{
  IntMatrix m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::stringstream entries(row);
    std::string e;
    while (std::getline(entries, e, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stoi(e, &used));
        if (used != e.size())
          throw std::invalid_argument(e);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kInvalidArgument, "bad Cartan matrix entry '" + e + "'");
      }
    }
    m.push_back(std::move(r));
  }
  return m;
}

Word parse_word(const std::string& text, std::size_t rank)
{
  Word w;
  if (text.empty() || text == "e")
    return w;
  std::string digits;
  auto flush = [&] {
    if (digits.empty())
      return;
    const int i = std::stoi(digits);
    if (i < 1 || static_cast<std::size_t>(i) > rank)
      throw Error(ErrorKind::kInvalidArgument, "generator index " + digits + " out of range in word '" + text + "'");
    w.push_back(i - 1);
    digits.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch)))
      digits += ch;
    else if (ch == ',' || ch == 's' || ch == ' ')
      flush();
    else
      throw Error(ErrorKind::kInvalidArgument, "cannot parse word '" + text + "'");
  }
  flush();
  return w;
}

std::vector<char> parse_open(const FinitePoset& p, const std::string& text)
{
  std::vector<char> open(p.size(), 0);
  std::stringstream ss(text);
  std::string label;
  while (std::getline(ss, label, ',')) {
    if (label.empty())
      continue;
    auto i = p.index_of(label);
    if (!i)
      throw Error(ErrorKind::kInvalidArgument, "unknown node '" + label + "' in --open");
    open[*i] = 1;
  }
  if (!p.is_up_closed(open))
    throw Error(ErrorKind::kInvalidArgument, "--open must be up-closed");
  return open;
}

json word_json(const WeylGroup& W, Elem w)
{
  json a = json::array();
  for (int i : W.word(w))
    a.push_back(i + 1);
  return a;
}

void print_human(const Report& r, std::ostream& out)
{
  out << r.command << "\n";
  for (const auto& [k, v] : r.summary.items())
    out << fmt::format("  {:<22} {}\n", k, v.is_string() ? v.get<std::string>() : v.dump());
  for (const auto& c : r.checks) {
    out << fmt::format("{:<5} {}\n", c.passed ? "PASS" : "FAIL", c.name);
    if (c.payload.contains("witness"))
      out << "      witness: " << c.payload.at("witness").get<std::string>() << "\n";
  }
  out << (r.passed() ? "all checks passed" : "some checks FAILED") << "\n";
}

// ---------------------------------------------------------------------------

Report cmd_rootsys(const std::string& type)
{
  const WeylGroup W = load_group(type);
  Report r{"rootsys " + type, {}, {}};
  r.summary = {{"type", W.roots().spec().label},
               {"rank", W.rank()},
               {"num_positive_roots", W.roots().num_positive()},
               {"weyl_order", W.order()},
               {"longest_word", word_json(W, W.longest())}};
  Check c{"longest element", "the longest element has length |R+| and inverts every positive root", false, {}};
  const Elem w0 = W.longest();
  c.passed = W.length(w0) == W.roots().num_positive() && W.inversion_count(w0) == W.roots().num_positive();
  c.payload = {{"length", W.length(w0)}};
  if (!c.passed)
    c.payload["witness"] = "length of w0 differs from the number of positive roots";
  r.checks.push_back(std::move(c));
  return r;
}

Report cmd_schubert(const std::string& type, const std::string& j0s, const std::string& js, const std::string& ws,
                    bool all)
{
  const WeylGroup W = load_group(type);
  Report r{"schubert " + type, {}, {}};
  if (all) {
    r.command += " --all";
    r.checks.push_back(schubert_exhaustive_check(W, type));
    r.checks.push_back(strata_partition_check(W, type));
    r.checks.push_back(simple_partition_check(W, type));
    return r;
  }
  const Parabolic j0 = Parabolic::parse(j0s, W.rank());
  const Parabolic j = Parabolic::parse(js, W.rank());
  r.command += " --j0 " + j0.to_string() + " --j " + j.to_string();
  r.summary["poincare_polynomial"] = to_json(poincare_polynomial(W, j));
  std::vector<Elem> targets;
  if (!ws.empty()) {
    r.command += " --w " + ws;
    targets.push_back(W.from_word(parse_word(ws, W.rank())));
  } else {
    for (Elem w = 0; w < W.order(); ++w)
      if (min_coset_rep(W, w, j, CosetSide::kDouble, j0) == w)
        targets.push_back(w);
  }
  json strata = json::array();
  for (Elem w : targets) {
    const SchubertVerdict v = check_lemma_sch(W, j0, j, w);
    strata.push_back({{"w", W.word_string(w)},
                      {"s_plus", v.partition.plus.to_string()},
                      {"s_minus", v.partition.minus.to_string()},
                      {"j_tilde", v.j_tilde.to_string()},
                      {"polynomial", to_json(v.poly_j)},
                      {"polynomial_j_tilde", to_json(v.poly_j_tilde)},
                      {"empty", v.poly_j.is_zero()}});
    Check c{"stratum w=" + W.word_string(w), "emptiness and J -> J minus S+ invariance", v.passed(), {}};
    c.payload = {{"emptiness_applies", v.emptiness_applies}, {"bijection", v.bijection_holds}};
    if (!v.passed())
      c.payload["witness"] = v.witness;
    r.checks.push_back(std::move(c));
  }
  r.summary["strata"] = strata;
  if (ws.empty()) {
    Polynomial total;
    for (Elem w : targets)
      total += stratum_index(W, j0, j, w).polynomial(W);
    Check c{"strata partition", "stratum polynomials sum to the Poincaré polynomial", total == poincare_polynomial(W, j), {}};
    c.payload = {{"sum", to_json(total)}};
    if (!c.passed)
      c.payload["witness"] = "sum " + total.to_string() + " differs";
    r.checks.push_back(std::move(c));
  }
  return r;
}

Report cmd_glued_homology(const std::string& type, const std::string& export_path)
{
  const WeylGroup W = load_group(type);
  Report r{"glued-homology " + type, {}, {}};
  Check c = sphere_check(W, type);
  for (const char* k : {"chain_dims", "betti", "trivial_multiplicity", "sign_multiplicity"})
    r.summary[k] = c.payload[k];
  r.checks.push_back(std::move(c));
  if (!export_path.empty()) {
    std::ofstream f(export_path);
    if (!f)
      throw Error(ErrorKind::kInvalidArgument, "cannot write '" + export_path + "'");
    f << to_json(weyl_glued_diagram(W)).dump(2) << "\n";
  }
  return r;
}

Report cmd_strat_induction(const std::string& type, const std::string& j0s)
{
  const WeylGroup W = load_group(type);
  const Parabolic j0 = Parabolic::parse(j0s, W.rank());
  const StratInductionReport rep = strat_induction(W, j0);
  Report r{"strat-induction " + type + " --j0 " + j0.to_string(), {}, {}};
  r.summary["w0_prime"] = W.word_string(rep.w0_prime);
  json steps = json::array();
  for (const auto& s : rep.steps) {
    steps.push_back({{"w_word", W.word_string(s.w)},
                     {"stratum", {{"leq", s.betti_leq}, {"lt", s.betti_lt}, {"quotient", s.betti_quotient}}},
                     {"expectation", s.expectation},
                     {"verdict", s.passed ? "pass" : "fail"}});
    Check c{"stratum w=" + W.word_string(s.w), s.expectation, s.passed, {}};
    if (!s.passed)
      c.payload["witness"] = "homology differs from " + s.expectation;
    r.checks.push_back(std::move(c));
  }
  r.summary["steps"] = steps;
  Check base{"base case cofinality", "J -> J meet J0 is a right adjoint and the w = e stratum is cofinal", rep.base_case.passed(), {}};
  base.payload = {{"betti_full", rep.base_case.betti_full}, {"betti_sub", rep.base_case.betti_sub}};
  if (!base.passed)
    base.payload["witness"] = rep.base_case.witness.empty() ? "Betti numbers differ" : rep.base_case.witness;
  r.checks.push_back(std::move(base));
  Check ex{"exhaustive", "the stratum at w'0 is the whole glued diagram", rep.exhaustive, {}};
  if (!ex.passed)
    ex.payload["witness"] = "leq complex at w'0 differs from the full complex";
  r.checks.push_back(std::move(ex));
  return r;
}

Report cmd_permutohedron(const std::string& type, bool faces, bool homology, bool high_rank)
{
  const WeylGroup W = load_group(type);
  Report r{"permutohedron " + type, {}, {}};
  Check c = permutohedron_check(W, type, faces, homology, high_rank);
  r.summary["f_vector"] = c.payload["f_vector"];
  r.checks.push_back(std::move(c));
  return r;
}

Report cmd_glue_ff(const std::string& path, const std::string& type)
{
  if (path.empty() == type.empty())
    throw Error(ErrorKind::kInvalidArgument, "glue ff needs exactly one of --diagram and --type");
  if (!type.empty()) {
    const WeylGroup W = load_group(type);
    Report r{"glue ff --type " + type, {}, {}};
    r.checks.push_back(weyl_ff_check(W, type));
    return r;
  }
  const SetDiagram d = diagram_from_json(read_json_file(path));
  const FFVerdict v = ff_verdict(d);
  Report r{"glue ff --diagram " + path, {}, {}};
  json defect = json::object();
  for (auto [n, b] : v.defect)
    defect[std::to_string(n)] = b;
  r.summary = {{"hocolim_betti", v.hocolim_betti},
               {"hocolim_is_point", v.hocolim_is_point},
               {"counit_is_iso", v.counit_is_iso},
               {"fully_faithful", v.fully_faithful()},
               {"defect", defect}};
  Check c{"verdicts agree", "the hocolim is a point iff the unit pullback is fully faithful", v.agree(), {}};
  if (!c.passed)
    c.payload["witness"] = "hocolim and counit tests disagree";
  r.checks.push_back(std::move(c));
  return r;
}

Report cmd_glue_recollement(const std::string& path, const std::string& open_text, std::uint64_t seed)
{
  const json j = read_json_file(path);
  PosetSheaf f;
  Report r{"glue recollement --poset " + path + " --open " + open_text, {}, {}};
  if (j.contains("complexes")) {
    f = sheaf_from_json(j);
  } else {
    std::mt19937_64 rng(seed);
    f = random_sheaf(rng, poset_from_json(j.contains("poset") ? j.at("poset") : j));
    r.command += " --seed " + std::to_string(seed);
    r.summary["generated_sheaf"] = to_json(f);
  }
  const std::vector<char> open = parse_open(f.poset, open_text);
  const RecollementVerdict v = recollement_round_trip(f, open);
  r.summary["total_dimension"] = f.total_dimension();
  Check c{"round trip", "a sheaf is recovered from its open part, closed part and gluing map", v.passed(), {}};
  c.payload = {{"inverse_valid", v.inverse_valid},   {"unit_natural", v.unit_natural},
               {"unit_quasi_iso", v.unit_quasi_iso}, {"counit_quasi_iso", v.counit_quasi_iso},
               {"restriction_exact", v.restriction_exact}};
  if (!v.passed())
    c.payload["witness"] = v.witness;
  r.checks.push_back(std::move(c));
  return r;
}

Report cmd_verify_all(const std::vector<std::string>& types, std::uint64_t seed, std::size_t corpus, std::size_t sheaves)
{
  Report r{"verify-all", {}, {}};
  for (const auto& t : types)
    r.command += " " + t;
  r.summary = {{"types", types}, {"seed", seed}};
  for (const auto& t : types) {
    const WeylGroup W = load_group(t);
    r.checks.push_back(sphere_check(W, t));
    if (W.rank() <= 3)
      r.checks.push_back(permutohedron_check(W, t));
    r.checks.push_back(schubert_exhaustive_check(W, t));
    r.checks.push_back(strata_partition_check(W, t));
    r.checks.push_back(simple_partition_check(W, t));
    if (W.rank() <= 3)
      r.checks.push_back(strat_induction_check(W, t));
    r.checks.push_back(weyl_ff_check(W, t));
  }
  r.checks.push_back(string_adjoint_check(seed, corpus));
  r.checks.push_back(contractibility_corpus_check(seed, corpus));
  r.checks.push_back(recollement_check(seed, sheaves));
  return r;
}

} // namespace

WeylGroup load_group(const std::string& type)
{
  const bool literal = !type.empty() && (std::isdigit(static_cast<unsigned char>(type[0])) || type[0] == '-');
  CartanSpec spec = literal ? CartanSpec::from_matrix(parse_cartan(type)) : CartanSpec::named(type);
  return WeylGroup(RootSystem(std::move(spec)), max_order());
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"weylglue: exact checks for glued Weyl coset diagrams, Schubert strata and gluing of categories"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit the report as JSON");

  std::string type, j0s, js, ws, path, open_text, export_path, diagram_path, ff_type;
  bool all = false, faces = false, homology = false, high_rank = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t corpus = 50, sheaves = 30;
  std::vector<std::string> types;

  auto* rootsys = app.add_subcommand("rootsys", "Rank, positive roots, |W| and a reduced word for w0");
  rootsys->add_option("type", type, "Type label such as A3, or a Cartan matrix '2,-1;-1,2'")->required();
  rootsys->add_flag("--json", as_json);

  auto* schubert = app.add_subcommand("schubert", "Schubert strata of Fl_J relative to P_J0");
  schubert->add_option("type", type)->required();
  schubert->add_option("--j0", j0s, "Simple roots of J0, 1-based, e.g. 1,3");
  schubert->add_option("--j", js, "Simple roots of J");
  schubert->add_option("--w", ws, "Word such as 1,2,1 or s1s2s1");
  schubert->add_flag("--all", all, "Exhaustive check over every (J0, J, w)");
  schubert->add_flag("--json", as_json);

  auto* glued = app.add_subcommand("glued-homology", "Homology and characters of the glued coset diagram");
  glued->add_option("type", type)->required();
  glued->add_option("--export-diagram", export_path, "Write the diagram as JSON");
  glued->add_flag("--json", as_json);

  auto* strat = app.add_subcommand("strat-induction", "Replay the induction over the Schubert stratification");
  strat->add_option("type", type)->required();
  strat->add_option("--j0", j0s, "Proper subset J0")->required();
  strat->add_flag("--json", as_json);

  auto* perm = app.add_subcommand("permutohedron", "Exact hull of the W-orbit of rho");
  perm->add_option("type", type)->required();
  perm->add_flag("--check-faces", faces, "Match faces with cosets uW_J");
  perm->add_flag("--homology", homology, "Boundary homology against the glued homology");
  perm->add_flag("--allow-high-rank", high_rank, "Permit rank above 3");
  perm->add_flag("--json", as_json);

  auto* glue = app.add_subcommand("glue", "Gluing of categories over a poset");
  glue->require_subcommand(1);
  auto* ff = glue->add_subcommand("ff", "Full faithfulness of pullback versus contractibility of the hocolim");
  ff->add_option("--diagram", diagram_path, "Diagram JSON file");
  ff->add_option("--type", ff_type, "Use the glued coset diagram of a type");
  ff->add_flag("--json", as_json);
  auto* rec = glue->add_subcommand("recollement", "Round trip through (open part, closed part, gluing map)");
  rec->add_option("--poset", path, "Sheaf JSON, or poset JSON for a random sheaf")->required();
  rec->add_option("--open", open_text, "Comma-separated labels of an up-closed set")->required();
  rec->add_option("--seed", seed, "Seed for the random sheaf");
  rec->add_flag("--json", as_json);

  auto* verify = app.add_subcommand(
      "verify-all", "Run every suite for the given types and the random corpora (hull and induction up to rank 3)");
  verify->add_option("types", types, "Type labels")->required();
  verify->add_option("--seed", seed, "Seed of the random corpora");
  verify->add_option("--corpus", corpus, "Random diagrams");
  verify->add_option("--sheaves", sheaves, "Random sheaves");
  verify->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::kInvalidArgument);
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (*rootsys)
      report = cmd_rootsys(type);
    else if (*schubert) {
      if (!all && (!schubert->count("--j0") || !schubert->count("--j")))
        throw Error(ErrorKind::kInvalidArgument, "schubert needs --j0 and --j unless --all is given");
      report = cmd_schubert(type, j0s, js, ws, all);
    } else if (*glued)
      report = cmd_glued_homology(type, export_path);
    else if (*strat)
      report = cmd_strat_induction(type, j0s);
    else if (*perm)
      report = cmd_permutohedron(type, faces, homology, high_rank);
    else if (*ff)
      report = cmd_glue_ff(diagram_path, ff_type);
    else if (*rec)
      report = cmd_glue_recollement(path, open_text, seed);
    else
      report = cmd_verify_all(types, seed, corpus, sheaves);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kInvariantViolation);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (as_json)
    out << report.to_json().dump(2) << "\n";
  else
    print_human(report, out);
  err << fmt::format("wall time {:.3f} s\n", secs);
  return report.passed() ? 0 : 1;
}

} // namespace weylglue
