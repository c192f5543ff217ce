#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "clonescope/classifier/gbdt.hpp"

namespace clonescope::gbdt {

/// {schema_version, hyper, base_score, num_features, trees:[{nodes:[...]}], split_counts}
nlohmann::ordered_json model_to_json(const GbdtModel& m);
GbdtModel model_from_json(const nlohmann::ordered_json& j);

void save_model(const GbdtModel& m, const std::filesystem::path& path);
GbdtModel load_model(const std::filesystem::path& path);

/// Short content hash of the serialized model, used to tag reports.
std::string model_id(const GbdtModel& m);

}  // namespace clonescope::gbdt
