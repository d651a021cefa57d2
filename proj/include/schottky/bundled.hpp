#pragma once

#include <string>
#include <vector>

#include "schottky/group_io.hpp"

namespace schottky {

// Groups shipped in data/groups, compiled in: A1, A2 (real), B (complex), R1 (rank one).
std::vector<std::string> bundled_group_names();
// Throws InvalidParameter for an unknown name.
const std::string& bundled_group_text(const std::string& name);
GroupSpec bundled_group_spec(const std::string& name);

// "bundled:NAME" or a path to a JSON file.
GroupSpec resolve_group_spec(const std::string& ref);

}  // namespace schottky
