#include "weylglue/serialize.hpp"

#include "weylglue/error.hpp"

#include <fstream>
#include <sstream>

namespace weylglue {

namespace {

[[noreturn]] void malformed(const std::string& what)
{
  throw Error(ErrorKind::kMalformedInput, what);
}

const json& field(const json& j, const char* key)
{
  if (!j.is_object() || !j.contains(key))
    malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string pair_key(const FinitePoset& p, std::size_t a, std::size_t b)
{
  return "(" + p.label(a) + "," + p.label(b) + ")";
}

// Labels may contain commas ("{1,2}"), so try every split against the known nodes.
std::pair<std::size_t, std::size_t> parse_pair_key(const FinitePoset& p, const std::string& key)
{
  if (key.size() < 3 || key.front() != '(' || key.back() != ')')
    malformed("map key '" + key + "' is not of the form (a,b)");
  const std::string inner = key.substr(1, key.size() - 2);
  for (std::size_t pos = inner.find(','); pos != std::string::npos; pos = inner.find(',', pos + 1)) {
    auto a = p.index_of(inner.substr(0, pos));
    auto b = p.index_of(inner.substr(pos + 1));
    if (a && b)
      return {*a, *b};
  }
  malformed("map key '" + key + "' does not name two nodes");
}

std::size_t node_of(const FinitePoset& p, const std::string& label)
{
  auto i = p.index_of(label);
  if (!i)
    malformed("unknown node '" + label + "'");
  return *i;
}

template <class F>
auto guarded(const std::string& what, F&& f)
{
  try {
    return f();
  } catch (const json::exception& e) {
    malformed(what + ": " + e.what());
  }
}

} // namespace

json to_json(const Polynomial& p)
{
  return json(p.coeffs);
}

json to_json(const FinitePoset& p)
{
  json pairs = json::array();
  for (auto [a, b] : p.cover_pairs())
    pairs.push_back({p.label(a), p.label(b)});
  return {{"nodes", p.nodes()}, {"leq_pairs", pairs}};
}

FinitePoset poset_from_json(const json& j)
{
  return guarded("poset", [&] {
    const auto nodes = field(j, "nodes").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!index.emplace(nodes[i], i).second)
        malformed("duplicate node '" + nodes[i] + "'");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (j.contains("leq_pairs"))
      for (const auto& pr : j.at("leq_pairs")) {
        if (!pr.is_array() || pr.size() != 2)
          malformed("leq_pairs entries must be [a, b]");
        const auto a = index.find(pr[0].get<std::string>()), b = index.find(pr[1].get<std::string>());
        if (a == index.end() || b == index.end())
          malformed("leq_pairs names an unknown node");
        pairs.emplace_back(a->second, b->second);
      }
    try {
      return FinitePoset(nodes, pairs);
    } catch (const Error& e) {
      malformed(std::string("poset: ") + e.what());
    }
  });
}

json to_json(const SetDiagram& d)
{
  json sets = json::object();
  for (std::size_t a = 0; a < d.poset.size(); ++a)
    sets[d.poset.label(a)] = d.sets[a];
  json maps = json::object();
  for (auto [a, b] : d.poset.strict_pairs()) {
    json m = json::object();
    for (std::uint32_t x = 0; x < d.size(a); ++x)
      m[d.sets[a][x]] = d.sets[b][d.push(a, b, x)];
    maps[pair_key(d.poset, a, b)] = m;
  }
  return {{"poset", to_json(d.poset)}, {"sets", sets}, {"maps", maps}};
}

SetDiagram diagram_from_json(const json& j)
{
  return guarded("diagram", [&] {
    FinitePoset p = poset_from_json(field(j, "poset"));
    std::vector<std::vector<std::string>> sets(p.size());
    const json& js = field(j, "sets");
    for (std::size_t a = 0; a < p.size(); ++a)
      if (js.contains(p.label(a)))
        sets[a] = js.at(p.label(a)).get<std::vector<std::string>>();
    for (const auto& [k, v] : js.items())
      node_of(p, k);
    auto element = [&](std::size_t node, const std::string& label) -> std::uint32_t {
      auto it = std::find(sets[node].begin(), sets[node].end(), label);
      if (it == sets[node].end())
        malformed("'" + label + "' is not an element at node '" + p.label(node) + "'");
      return static_cast<std::uint32_t>(it - sets[node].begin());
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> given;
    const json jm = j.contains("maps") ? j.at("maps") : json::object();
    for (const auto& [key, m] : jm.items()) {
      const auto [a, b] = parse_pair_key(p, key);
      if (!p.less(a, b))
        malformed("map " + key + " is not along a strict relation");
      std::vector<std::uint32_t> images(sets[a].size(), UINT32_MAX);
      for (const auto& [x, y] : m.items())
        images[element(a, x)] = element(b, y.get<std::string>());
      for (auto im : images)
        if (im == UINT32_MAX)
          malformed("map " + key + " is not total");
      given[{a, b}] = std::move(images);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> covers;
    for (auto pr : p.cover_pairs()) {
      auto it = given.find(pr);
      if (it == given.end())
        malformed("missing map on cover pair " + pair_key(p, pr.first, pr.second));
      covers[pr] = it->second;
    }
    SetDiagram d;
    try {
      d = SetDiagram::from_cover_maps(p, sets, covers);
    } catch (const Error& e) {
      malformed(std::string("diagram: ") + e.what());
    }
    for (const auto& [pr, images] : given)
      if (d.maps.at(pr) != images)
        malformed("map " + pair_key(p, pr.first, pr.second) + " disagrees with the composite of cover maps");
    return d;
  });
}

json matrix_to_json(const SparseMatrix& m)
{
  const QMatrix dense = m.to_dense();
  json rows = json::array();
  for (const auto& row : dense) {
    json r = json::array();
    for (const auto& x : row)
      r.push_back(to_string(x));
    rows.push_back(r);
  }
  return rows;
}

SparseMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols)
{
  if (!j.is_array())
    malformed("matrix must be an array of rows");
  if (rows == 0 || cols == 0) {
    for (const auto& r : j)
      if (!r.is_array() || !r.empty())
        malformed("matrix with an empty side must have no entries");
    return SparseMatrix::zero(rows, cols);
  }
  if (j.size() != rows)
    malformed("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  QMatrix dense(rows, QVector(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      malformed("matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (e.is_string())
        dense[i][k] = parse_rational(e.get<std::string>());
      else if (e.is_number_integer())
        dense[i][k] = Q(e.get<long>());
      else
        malformed("matrix entries must be \"p/q\" strings or integers");
    }
  }
  return SparseMatrix::from_dense(dense, cols);
}

json to_json(const ChainComplex& c)
{
  json bases = json::array(), diffs = json::array();
  if (!c.empty())
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
      bases.push_back(c.basis(n));
      diffs.push_back(matrix_to_json(c.boundary(n)));
    }
  return {{"min_degree", c.empty() ? 0 : c.min_degree()}, {"bases", bases}, {"differentials", diffs}};
}

ChainComplex complex_from_json(const json& j)
{
  return guarded("complex", [&] {
    const int lo = field(j, "min_degree").get<int>();
    const auto bases = field(j, "bases").get<std::vector<std::vector<std::string>>>();
    std::vector<SparseMatrix> bds;
    const json diffs = j.contains("differentials") ? j.at("differentials") : json::array();
    if (diffs.size() > bases.size())
      malformed("more differentials than degrees");
    for (std::size_t k = 0; k < diffs.size(); ++k)
      bds.push_back(matrix_from_json(diffs[k], k == 0 ? 0 : bases[k - 1].size(), bases[k].size()));
    if (!bds.empty() && bds[0].rows != 0)
      malformed("the lowest differential must map to zero");
    ChainComplex c(lo, bases, bds);
    try {
      c.validate();
    } catch (const Error& e) {
      malformed(std::string("complex: ") + e.what());
    }
    return c;
  });
}

json to_json(const PosetSheaf& f)
{
  json cx = json::object(), maps = json::object();
  for (std::size_t x = 0; x < f.poset.size(); ++x)
    cx[f.poset.label(x)] = to_json(f.values[x]);
  for (auto [x, y] : f.poset.strict_pairs()) {
    json per = json::object();
    const auto& a = f.values[x];
    const auto& b = f.values[y];
    for (const auto& [n, m] : f.maps.at({x, y}).parts)
      if (!m.is_zero() && a.dim(n) > 0 && b.dim(n) > 0)
        per[std::to_string(n)] = matrix_to_json(m);
    maps[pair_key(f.poset, x, y)] = per;
  }
  return {{"poset", to_json(f.poset)}, {"complexes", cx}, {"maps", maps}};
}

PosetSheaf sheaf_from_json(const json& j)
{
  return guarded("sheaf", [&] {
    PosetSheaf f;
    f.poset = poset_from_json(field(j, "poset"));
    const json& cx = field(j, "complexes");
    for (std::size_t x = 0; x < f.poset.size(); ++x)
      f.values.push_back(cx.contains(f.poset.label(x)) ? complex_from_json(cx.at(f.poset.label(x))) : ChainComplex());
    const json jm = j.contains("maps") ? j.at("maps") : json::object();
    for (auto pr : f.poset.strict_pairs())
      f.maps[pr] = ChainMap::zero();
    for (const auto& [key, per] : jm.items()) {
      const auto [x, y] = parse_pair_key(f.poset, key);
      if (!f.poset.less(x, y))
        malformed("map " + key + " is not along a strict relation");
      ChainMap m;
      for (const auto& [deg, mat] : per.items()) {
        int n = 0;
        try {
          n = std::stoi(deg);
        } catch (const std::exception&) {
          malformed("degree key '" + deg + "' is not an integer");
        }
        m.parts[n] = matrix_from_json(mat, f.values[y].dim(n), f.values[x].dim(n));
      }
      f.maps[{x, y}] = std::move(m);
    }
    try {
      f.validate();
    } catch (const Error& e) {
      malformed(std::string("sheaf: ") + e.what());
    }
    return f;
  });
}

json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    malformed("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    malformed("'" + path + "' is not valid JSON: " + e.what());
  }
}

} // namespace weylglue
