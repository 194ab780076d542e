#pragma once

#include <string>

#include <json.hpp>

#include "sparsetrace/analysis.hpp"
#include "sparsetrace/codes.hpp"
#include "sparsetrace/mat.hpp"
#include "sparsetrace/params.hpp"
#include "sparsetrace/surface.hpp"
#include "sparsetrace/wang.hpp"

namespace sparsetrace {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const ParamReport& r);

json to_json(const Pattern2D& p);
Pattern2D pattern_from_json(const json& j);

// Configurations carry an alphabet tag: "tile", "delta" or "bit".
json to_json(const TileConfig& c);
json to_json(const DeltaConfig& c);
json to_json(const BitConfig& c);
enum class ConfigKind { Tile, Delta, Bit };
ConfigKind config_kind(const json& j);
TileConfig tile_config_from_json(const json& j);
DeltaConfig delta_config_from_json(const json& j);
BitConfig bit_config_from_json(const json& j);

json to_json(const Mat& m);
Mat mat_from_json(const json& j);

json to_json(const UnborderedCode& c);
UnborderedCode code_from_json(const json& j);

json to_json(const OverlayWitness& w, const std::vector<Patch>& patches);

json to_json(const wang::CubePatch& p);
wang::CubePatch cube_patch_from_json(const json& j);

// Wavefront OBJ with one quad per surface cell, shared vertices deduplicated,
// sloped cells tilted across their y-extent. Decimal coordinates.
std::string export_obj(const Surface& s, int precision = 9);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace sparsetrace
