#pragma once

#include <filesystem>
#include <string>

#include "unigad/train.hpp"

namespace unigad {

/// Applies one `key=value` config entry to the training config. Unknown keys
/// and unparsable values raise invalid_argument.
void apply_config_entry(TrainConfig& config, const std::string& key, const std::string& value);

/// Line-based `key=value` config file; blank lines and `#` comments allowed.
void apply_config_file(TrainConfig& config, const std::filesystem::path& path);

/// Comma-separated level names ("node,graph" or "n,g"); empty string = none.
std::set<Level> parse_level_set(const std::string& text);

}  // namespace unigad
