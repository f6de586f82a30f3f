#pragma once

#include <map>
#include <string>

#include "fftseso/sim.hpp"

namespace fftseso {

/// Build a SimConfig from flat `key = value` overrides on top of the
/// simulation defaults. Unknown keys throw DomainError.
SimConfig config_from_overrides(const std::map<std::string, std::string>& overrides);

/// Parse a flat key-value config file (# starts a comment).
SimConfig load_config(const std::string& path);

/// Render a config with every default spelled out, suitable for editing.
std::string config_to_string(const SimConfig& cfg);

} // namespace fftseso
