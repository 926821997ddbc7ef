#pragma once

#include "weylglue/chainalg.hpp"
#include "weylglue/glue.hpp"
#include "weylglue/hocolim.hpp"
#include "weylglue/parabolic.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace weylglue {

using json = nlohmann::ordered_json;

// All readers throw Error(kMalformedInput) with the offending key in the message.

json to_json(const Polynomial& p);

/// {nodes: [label], leq_pairs: [[a, b]]} with cover pairs only.
json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const json& j);

/// {poset, sets: {node: [labels]}, maps: {"(a,b)": {x: y}}} for every a < b.
json to_json(const SetDiagram& d);
/// Requires maps on cover pairs; maps given on other pairs must agree with the composites.
SetDiagram diagram_from_json(const json& j);

/// {min_degree, bases: [[label]], differentials: [row-major "p/q" matrix per degree]}.
json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const json& j);

/// {poset, complexes: {node: complex}, maps: {"(x,y)": {degree: matrix}}} for every x < y.
json to_json(const PosetSheaf& f);
PosetSheaf sheaf_from_json(const json& j);

json matrix_to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

/// Reads and parses a file; missing files and parse errors are kMalformedInput.
json read_json_file(const std::string& path);

} // namespace weylglue
