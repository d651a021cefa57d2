#include "schottky/bundled.hpp"

#include <map>

#include "schottky/error.hpp"

namespace schottky {

namespace {

// Generated from data/groups/*.json at configure time.
#include "bundled_groups.inc"

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> t = bundled_group_sources();
  return t;
}

}  // namespace

std::vector<std::string> bundled_group_names() {
  std::vector<std::string> out;
  for (const auto& kv : table()) out.push_back(kv.first);
  return out;
}

const std::string& bundled_group_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) fail(ErrorCode::InvalidParameter, "no bundled group named '" + name + "'");
  return it->second;
}

GroupSpec bundled_group_spec(const std::string& name) { return parse_group_spec_text(bundled_group_text(name)); }

GroupSpec resolve_group_spec(const std::string& ref) {
  const std::string prefix = "bundled:";
  if (ref.rfind(prefix, 0) == 0) return bundled_group_spec(ref.substr(prefix.size()));
  return load_group_spec(ref);
}

}  // namespace schottky
