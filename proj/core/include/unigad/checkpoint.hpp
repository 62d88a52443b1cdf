#pragma once

#include <filesystem>
#include <string>

#include "unigad/train.hpp"

namespace unigad {

inline constexpr const char* kCheckpointFormat = "unigad-checkpoint-v1";

/// Serializes the config and every named parameter as a flat array into one
/// JSON document tagged with kCheckpointFormat.
std::string checkpoint_to_json(GraphStitchModel& model, const TrainConfig& config);
void save_checkpoint(GraphStitchModel& model, const TrainConfig& config,
                     const std::filesystem::path& path);

/// Rebuilds the model from the embedded config and restores all parameters.
/// Rejects unknown format tags and shape mismatches.
TrainResult load_checkpoint_json(const std::string& text);
TrainResult load_checkpoint(const std::filesystem::path& path);

/// Config <-> JSON (embedded in checkpoints; also reused by reports).
std::string train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const std::string& text);

std::string metrics_report_to_json(const MetricsReport& report);
MetricsReport metrics_report_from_json(const std::string& text);

std::string history_to_json(const TrainHistory& history);

}  // namespace unigad
