#pragma once

#include "weylglue/coxeter.hpp"
#include "weylglue/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace weylglue {

/// One verification record. A failing check carries a witness in its payload.
struct Check {
  std::string name;
  std::string anchor; // the statement being checked
  bool passed = false;
  json payload = json::object();
};

struct Report {
  std::string command;
  json summary = json::object(); // command-specific top-level fields
  std::vector<Check> checks;

  bool passed() const;
  json to_json() const;
};

// Per-type suites.
Check sphere_check(const WeylGroup& W, const std::string& label);
Check permutohedron_check(const WeylGroup& W, const std::string& label, bool faces = true, bool homology = true,
                         bool allow_high_rank = false);
/// Emptiness and the J -> J \ S+ invariance over every (J0, J, w).
Check schubert_exhaustive_check(const WeylGroup& W, const std::string& label);
/// Stratum polynomials over double-coset representatives sum to the Poincaré polynomial of W/W_J.
Check strata_partition_check(const WeylGroup& W, const std::string& label);
/// S- empty iff w = e and S+ empty iff w = w'0, for every J0 and w in W'.
Check simple_partition_check(const WeylGroup& W, const std::string& label);
/// strat_induction for every proper J0.
Check strat_induction_check(const WeylGroup& W, const std::string& label);
/// The Weyl glued diagram is not fully faithful and its defect is the sign line in degree rank-1.
Check weyl_ff_check(const WeylGroup& W, const std::string& label);

// Randomized corpora; identical seeds give identical payloads.
Check string_adjoint_check(std::uint64_t seed, std::size_t count);
Check contractibility_corpus_check(std::uint64_t seed, std::size_t count);
/// Sierpiński poset and the 3-chain over every open set, then `count` random sheaves.
Check recollement_check(std::uint64_t seed, std::size_t count);

} // namespace weylglue
