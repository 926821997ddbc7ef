#include "weylglue/suites.hpp"

#include "weylglue/error.hpp"
#include "weylglue/glue.hpp"
#include "weylglue/hocolim.hpp"
#include "weylglue/parabolic.hpp"
#include "weylglue/polytope.hpp"

#include <algorithm>
#include <random>

namespace weylglue {

namespace {

json betti_json(const std::map<int, std::size_t>& m)
{
  json j = json::object();
  for (auto [n, b] : m)
    j[std::to_string(n)] = b;
  return j;
}

std::vector<std::size_t> trim(std::vector<std::size_t> b)
{
  while (!b.empty() && b.back() == 0)
    b.pop_back();
  return b;
}

json merged(json base, const json& extra)
{
  if (extra.is_object())
    base.update(extra);
  return base;
}

// Records the first witness only.
void witness(Check& c, const std::string& text)
{
  c.passed = false;
  if (!c.payload.contains("witness"))
    c.payload["witness"] = text;
}

std::vector<char> random_open(std::mt19937_64& rng, const FinitePoset& p)
{
  std::vector<char> open(p.size(), 0);
  for (std::size_t a = 0; a < p.size(); ++a)
    if (rng() % 3 == 0)
      for (std::size_t b = 0; b < p.size(); ++b)
        if (p.leq(a, b))
          open[b] = 1;
  return open;
}

std::vector<std::vector<char>> all_up_closed(const FinitePoset& p)
{
  std::vector<std::vector<char>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.size()); ++m) {
    std::vector<char> s(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      s[i] = (m >> i) & 1u;
    if (p.is_up_closed(s))
      out.push_back(s);
  }
  return out;
}

std::string open_string(const FinitePoset& p, const std::vector<char>& open)
{
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (open[i]) {
      s += (first ? "" : ",") + p.label(i);
      first = false;
    }
  return s + "}";
}

} // namespace

bool Report::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json Report::to_json() const
{
  json j = {{"command", command}};
  for (const auto& [k, v] : summary.items())
    j[k] = v;
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"anchor", c.anchor}, {"status", c.passed ? "pass" : "fail"}, {"payload", c.payload.is_null() ? json::object() : c.payload}});
  j["checks"] = cs;
  j["status"] = passed() ? "pass" : "fail";
  return j;
}

Check sphere_check(const WeylGroup& W, const std::string& label)
{
  Check c{"glued homology " + label, "the glued coset diagram is a W-equivariant sphere with trivial and sign characters", false, {}};
  const GluedHomologyReport r = glued_homology_report(W, label);
  c.passed = r.passed();
  json triv = json::array(), sgn = json::array();
  for (std::size_t n = 0; n < r.betti.size(); ++n) {
    triv.push_back(to_string(r.triv_multiplicity[n]));
    sgn.push_back(to_string(r.sign_multiplicity[n]));
  }
  c.payload = {{"type", label},           {"rank", r.rank},
               {"chain_dims", r.chain_dims}, {"betti", r.betti},
               {"trivial_multiplicity", triv}, {"sign_multiplicity", sgn},
               {"equivariant", r.equivariant}, {"characters_consistent", r.characters_consistent},
               {"characters_ok", r.characters_ok}, {"euler_ok", r.euler_ok}};
  if (!c.passed) {
    std::string why = !r.betti_ok ? "Betti numbers are not those of a sphere"
                      : !r.characters_ok ? "homology characters differ from trivial and sign"
                      : !r.equivariant ? "group action is not by chain maps"
                      : !r.characters_consistent ? "trace identity fails"
                                                 : "Euler characteristic mismatch";
    witness(c, why);
  }
  return c;
}

Check permutohedron_check(const WeylGroup& W, const std::string& label, bool faces, bool homology, bool allow_high_rank)
{
  Check c{"permutohedron " + label, "faces of the orbit polytope are the cosets uW_J and its boundary is the glued sphere", true, {}};
  const auto pts = orbit_points(W, rho(W));
  const FaceLattice lat = convex_hull(pts, allow_high_rank);
  c.payload["type"] = label;
  c.payload["f_vector"] = lat.f_vector();
  if (faces) {
    const FaceIndexVerdict v = face_index_check(W, lat);
    c.payload["coset_counts"] = v.coset_counts;
    c.payload["counts_match"] = v.counts_match;
    c.payload["cosets_match"] = v.cosets_match;
    if (!v.passed())
      witness(c, v.witness.empty() ? "face counts differ from coset counts" : v.witness);
    const bool inv = hull_is_invariant(W, lat);
    c.payload["invariant"] = inv;
    if (!inv)
      witness(c, "a simple reflection does not permute the faces");
  }
  if (homology) {
    const auto hull_betti = trim(boundary_homology(lat, pts));
    const auto glued_betti = trim(betti_numbers(hocolim_complex(weyl_glued_diagram(W)).cx));
    c.payload["boundary_betti"] = hull_betti;
    c.payload["glued_betti"] = glued_betti;
    if (hull_betti != glued_betti)
      witness(c, "boundary homology differs from glued homology");
  }
  return c;
}

Check schubert_exhaustive_check(const WeylGroup& W, const std::string& label)
{
  Check c{"schubert strata " + label,
          "J meeting S- gives an empty stratum; J -> J minus S+ preserves the stratum polynomial bijectively", true, {}};
  const auto subsets = all_parabolics(W.rank(), false);
  std::size_t triples = 0, emptiness = 0, nonempty = 0;
  for (auto j0 : subsets)
    for (auto j : subsets)
      for (Elem w = 0; w < W.order(); ++w) {
        const SchubertVerdict v = check_lemma_sch(W, j0, j, w);
        ++triples;
        emptiness += v.emptiness_applies;
        nonempty += !v.poly_j.is_zero();
        if (!v.passed())
          witness(c, "J0=" + j0.to_string() + " J=" + j.to_string() + " w=" + W.word_string(w) + ": " + v.witness);
      }
  c.payload = merged({{"type", label}, {"triples", triples}, {"emptiness_cases", emptiness}, {"nonempty_strata", nonempty}}, c.payload);
  return c;
}

Check strata_partition_check(const WeylGroup& W, const std::string& label)
{
  Check c{"strata partition " + label, "Schubert strata partition the partial flag variety", true, {}};
  const auto subsets = all_parabolics(W.rank(), false);
  std::size_t pairs = 0;
  for (auto j0 : subsets)
    for (auto j : subsets) {
      Polynomial total;
      for (Elem w = 0; w < W.order(); ++w)
        if (min_coset_rep(W, w, j, CosetSide::kDouble, j0) == w)
          total += stratum_index(W, j0, j, w).polynomial(W);
      ++pairs;
      if (!(total == poincare_polynomial(W, j)))
        witness(c, "J0=" + j0.to_string() + " J=" + j.to_string() + ": sum " + total.to_string() + " vs " +
                       poincare_polynomial(W, j).to_string());
    }
  c.payload = merged({{"type", label}, {"pairs", pairs}}, c.payload);
  return c;
}

Check simple_partition_check(const WeylGroup& W, const std::string& label)
{
  Check c{"simple root partition " + label, "S- is empty iff w = e and S+ is empty iff w = w'0", true, {}};
  std::size_t cases = 0;
  for (auto j0 : all_parabolics(W.rank(), false)) {
    const Elem top = w0_prime(W, j0);
    for (Elem w : w_prime_set(W, j0)) {
      const SimplePartition p = simple_partition(W, w, j0);
      ++cases;
      if ((p.minus.mask == 0) != (w == W.identity()))
        witness(c, "J0=" + j0.to_string() + " w=" + W.word_string(w) + ": S- empty iff w = e fails");
      if ((p.plus.mask == 0) != (w == top))
        witness(c, "J0=" + j0.to_string() + " w=" + W.word_string(w) + ": S+ empty iff w = w'0 fails");
    }
  }
  c.payload = merged({{"type", label}, {"cases", cases}}, c.payload);
  return c;
}

Check strat_induction_check(const WeylGroup& W, const std::string& label)
{
  Check c{"stratified induction " + label,
          "the w = e stratum and every intermediate quotient have point homology; base case is cofinal", true, {}};
  json per = json::array();
  for (auto j0 : all_parabolics(W.rank(), true)) {
    const StratInductionReport r = strat_induction(W, j0);
    per.push_back({{"j0", j0.to_string()}, {"w_count", r.steps.size()}, {"w0_prime", W.word_string(r.w0_prime)},
                   {"base_case", r.base_case.passed()}, {"exhaustive", r.exhaustive}, {"status", r.passed() ? "pass" : "fail"}});
    if (!r.passed()) {
      std::string why = !r.base_case.passed() ? "base case: " + r.base_case.witness : "not exhaustive";
      for (const auto& s : r.steps)
        if (!s.passed) {
          why = "w=" + W.word_string(s.w) + " expected " + s.expectation;
          break;
        }
      witness(c, "J0=" + j0.to_string() + ": " + why);
    }
  }
  c.payload = merged({{"type", label}, {"j0", per}}, c.payload);
  return c;
}

Check weyl_ff_check(const WeylGroup& W, const std::string& label)
{
  Check c{"weyl contractibility " + label,
          "the glued coset diagram is not contractible, so pullback is not fully faithful; the defect is the sign line", true, {}};
  const FFVerdict v = ff_verdict(weyl_glued_diagram(W));
  const int top = static_cast<int>(W.rank()) - 1;
  c.payload = {{"type", label},
               {"hocolim_betti", v.hocolim_betti},
               {"hocolim_is_point", v.hocolim_is_point},
               {"counit_is_iso", v.counit_is_iso},
               {"defect", betti_json(v.defect)}};
  if (!v.agree())
    witness(c, "hocolim test and counit test disagree");
  if (v.fully_faithful())
    witness(c, "certified fully faithful");
  if (v.defect != std::map<int, std::size_t>{{top, 1}})
    witness(c, "defect is not one-dimensional in degree " + std::to_string(top));
  auto it = v.defect_characters.find(top);
  const bool is_sign = it != v.defect_characters.end() && it->second == ClassFunction::sign(W);
  c.payload["defect_is_sign"] = is_sign;
  if (!is_sign)
    witness(c, "defect character is not the sign character");
  return c;
}

Check string_adjoint_check(std::uint64_t seed, std::size_t count)
{
  Check c{"string left adjoint", "the string complex computes the left adjoint of the unit functor", true, {}};
  std::mt19937_64 rng(seed);
  const ChainComplex k = ChainComplex::concentrated(0, 1, "k");
  std::size_t adjunctions = 0, hocolims = 0, max_dim = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const SetDiagram d = random_set_diagram(rng, 4, 5);
    const LaxObject x = random_lax_object(rng, d);
    const ChainComplex target = random_complex(rng);
    max_dim = std::max(max_dim, x.total_dimension());
    const AdjunctionVerdict a = adjunction_check(x, target);
    if (a.passed())
      ++adjunctions;
    else
      witness(c, "instance " + std::to_string(i) + ": adjunction fails, diagram " + to_json(d).dump());
    const auto left = betti_profile(string_left_adjoint(unit_object(d, k)).cx);
    const auto hc = betti_profile(hocolim_complex(d).cx);
    if (left == hc)
      ++hocolims;
    else
      witness(c, "instance " + std::to_string(i) + ": string complex of k differs from hocolim, diagram " + to_json(d).dump());
  }
  c.payload = merged({{"seed", seed}, {"instances", count}, {"adjunction_pass", adjunctions}, {"hocolim_pass", hocolims},
                   {"max_lax_dimension", max_dim}}, c.payload);
  return c;
}

Check contractibility_corpus_check(std::uint64_t seed, std::size_t count)
{
  Check c{"contractibility criterion", "the hocolim is a point iff the unit pullback is fully faithful", true, {}};
  std::mt19937_64 rng(seed);
  std::size_t agree = 0, contractible = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const SetDiagram d = random_set_diagram(rng, 4, 5);
    // Same stream as the string adjoint corpus.
    random_lax_object(rng, d);
    random_complex(rng);
    const FFVerdict v = ff_verdict(d);
    contractible += v.hocolim_is_point;
    if (v.agree())
      ++agree;
    else
      witness(c, "instance " + std::to_string(i) + ": verdicts disagree, diagram " + to_json(d).dump());
  }
  c.payload = merged({{"seed", seed}, {"instances", count}, {"agree", agree}, {"contractible", contractible}}, c.payload);
  return c;
}

Check recollement_check(std::uint64_t seed, std::size_t count)
{
  Check c{"recollement round trip", "a sheaf is recovered from its open part, closed part and gluing map", true, {}};
  std::mt19937_64 rng(seed);
  std::size_t fixed_cases = 0, random_cases = 0, max_dim = 0;
  auto run = [&](const PosetSheaf& f, const std::vector<char>& open, const std::string& name) {
    const RecollementVerdict v = recollement_round_trip(f, open);
    if (!v.passed())
      witness(c, name + " open=" + open_string(f.poset, open) + ": " + v.witness);
  };
  const FinitePoset sierpinski({"z", "u"}, {{0, 1}});
  const FinitePoset chain3({"a", "b", "c"}, {{0, 1}, {1, 2}});
  for (const FinitePoset* p : {&sierpinski, &chain3})
    for (const auto& open : all_up_closed(*p)) {
      const std::string name = p->size() == 2 ? "sierpinski" : "chain3";
      run(constant_sheaf(*p), open, name + " constant");
      run(random_sheaf(rng, *p), open, name + " random");
      fixed_cases += 2;
    }
  for (std::size_t i = 0; i < count; ++i) {
    const FinitePoset p = random_poset(rng, 2 + rng() % 3);
    const PosetSheaf f = random_sheaf(rng, p, 8);
    max_dim = std::max(max_dim, f.total_dimension());
    run(f, random_open(rng, p), "random sheaf " + std::to_string(i));
    ++random_cases;
  }
  c.payload = merged({{"seed", seed}, {"fixed_cases", fixed_cases}, {"random_sheaves", random_cases},
                   {"max_total_dimension", max_dim}}, c.payload);
  return c;
}

} // namespace weylglue
