#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schottky/moebius.hpp"

namespace schottky {

inline constexpr const char* kSchema = "schottky-zeta/1";

struct ExactDisk {
  int letter = 0;  // ±i
  GaussianRational center;
  mpq_class radius;
  bool exterior = false;
};

// Parsed group file. Entries are kept as exact rationals; build()
// rounds them once at the working precision.
struct GroupSpec {
  int rank = 0;
  std::vector<ExactMoebiusMap> generators;
  std::optional<std::vector<ExactDisk>> circles;
  std::optional<unsigned> precision_bits;

  MarkedSchottkyGroup build() const;
};

// {"rank": g, "generators": [[a,b,c,d], ...], "circles": [...], "precision_bits": P}
// with complex entries written as [re, im] decimal strings.
GroupSpec parse_group_spec(const nlohmann::json& doc);
GroupSpec parse_group_spec_text(const std::string& text);
GroupSpec load_group_spec(const std::string& path);

GaussianRational parse_complex(const nlohmann::json& v);
nlohmann::json complex_to_json(const Complex& z, int digits = 0);
nlohmann::json point_to_json(const ExtPoint& p, int digits = 0);
nlohmann::json group_summary(const MarkedSchottkyGroup& g, int digits = 40);

}  // namespace schottky
