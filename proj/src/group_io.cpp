#include "schottky/group_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "schottky/error.hpp"

namespace schottky {

using nlohmann::json;

namespace {

mpq_class parse_scalar(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(std::to_string(v.get<long long>()));
  if (v.is_number_unsigned()) return mpq_class(std::to_string(v.get<unsigned long long>()));
  fail(ErrorCode::ParseError, "numbers must be decimal strings or integers, got " + v.dump());
}

}  // namespace

GaussianRational parse_complex(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2) fail(ErrorCode::ParseError, "complex entries are [re, im] pairs, got " + v.dump());
    return GaussianRational(parse_scalar(v[0]), parse_scalar(v[1]));
  }
  return GaussianRational(parse_scalar(v));
}

GroupSpec parse_group_spec(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::ParseError, "group spec must be a JSON object");
  if (!doc.contains("rank") || !doc["rank"].is_number_integer())
    fail(ErrorCode::ParseError, "missing integer field 'rank'");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    fail(ErrorCode::ParseError, "missing array field 'generators'");
  GroupSpec spec;
  spec.rank = doc["rank"].get<int>();
  if (spec.rank < 1) fail(ErrorCode::ParseError, "rank must be positive");
  const json& gens = doc["generators"];
  if (static_cast<int>(gens.size()) != spec.rank)
    fail(ErrorCode::RankMismatch, "rank " + std::to_string(spec.rank) + " but " + std::to_string(gens.size()) +
                                      " generators");
  for (const json& g : gens) {
    if (!g.is_array() || g.size() != 4) fail(ErrorCode::ParseError, "generators are [a, b, c, d] lists");
    ExactMoebiusMap m{parse_complex(g[0]), parse_complex(g[1]), parse_complex(g[2]), parse_complex(g[3])};
    if (m.det() == GaussianRational()) fail(ErrorCode::ParseError, "singular generator matrix");
    spec.generators.push_back(std::move(m));
  }
  if (doc.contains("circles") && !doc["circles"].is_null()) {
    const json& cs = doc["circles"];
    if (!cs.is_array()) fail(ErrorCode::ParseError, "'circles' must be a list");
    if (static_cast<int>(cs.size()) != 2 * spec.rank) fail(ErrorCode::RankMismatch, "expected 2g circles");
    std::vector<ExactDisk> disks;
    std::set<int> seen;
    for (const json& c : cs) {
      if (!c.is_object() || !c.contains("index") || !c.contains("center") || !c.contains("radius"))
        fail(ErrorCode::ParseError, "circles need 'index', 'center' and 'radius'");
      ExactDisk d;
      d.letter = c["index"].get<int>();
      if (d.letter == 0 || d.letter > spec.rank || d.letter < -spec.rank || !seen.insert(d.letter).second)
        fail(ErrorCode::ParseError, "bad circle index " + c["index"].dump());
      d.center = parse_complex(c["center"]);
      d.radius = parse_scalar(c["radius"]);
      if (d.radius <= 0) fail(ErrorCode::ParseError, "circle radius must be positive");
      d.exterior = c.value("exterior", false);
      disks.push_back(std::move(d));
    }
    spec.circles = std::move(disks);
  }
  if (doc.contains("precision_bits")) {
    int bits = doc["precision_bits"].get<int>();
    if (bits < 24) fail(ErrorCode::ParseError, "precision_bits too small");
    spec.precision_bits = static_cast<unsigned>(bits);
  }
  return spec;
}

GroupSpec parse_group_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_group_spec(doc);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad group spec: ") + e.what());
  }
}

GroupSpec load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec_text(ss.str());
}

MarkedSchottkyGroup GroupSpec::build() const {
  std::vector<MoebiusMap> gens;
  for (const auto& m : generators) gens.push_back(m.to_floating());
  std::optional<std::vector<Disk>> disks;
  if (circles) {
    disks.emplace(2 * rank);
    for (const auto& c : *circles) (*disks)[disk_index(c.letter)] = Disk{c.center.to_complex(), to_real(c.radius), c.exterior};
  }
  return make_group(std::move(gens), std::move(disks), working_precision_bits());
}

json complex_to_json(const Complex& z, int digits) {
  return json::array({to_string(z.re, digits), to_string(z.im, digits)});
}

json point_to_json(const ExtPoint& p, int digits) {
  if (p.infinite) return "inf";
  return complex_to_json(p.z, digits);
}

json group_summary(const MarkedSchottkyGroup& g, int digits) {
  json out;
  out["rank"] = g.rank;
  json gens = json::array();
  for (int i = 0; i < g.rank; ++i) {
    json e;
    e["attractive"] = point_to_json(g.fixed[i].attractive, digits);
    e["repulsive"] = point_to_json(g.fixed[i].repulsive, digits);
    e["multiplier"] = complex_to_json(g.fixed[i].multiplier, digits);
    gens.push_back(e);
  }
  out["generators"] = gens;
  return out;
}

}  // namespace schottky
