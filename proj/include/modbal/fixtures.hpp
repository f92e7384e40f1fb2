#pragma once

// Bundled example instances.

#include <string>
#include <string_view>
#include <vector>

#include "modbal/instance_file.hpp"

namespace modbal {

struct FixtureInfo {
  std::string name;
  std::string summary;
};

std::vector<FixtureInfo> fixture_catalog();

/// Throws std::invalid_argument for an unknown name.
InstanceFile fixture(std::string_view name);

}  // namespace modbal
