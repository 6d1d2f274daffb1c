#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "hotlat/state_grid.hpp"

namespace hotlat {

using Json = nlohmann::json;

// Fixed-width float formatting keeps CSV output byte-stable across runs.
std::string format_sig(double v, int digits);
std::string csv_double(double v);  // 9 significant digits

void write_text_file(const std::filesystem::path& path, const std::string& content);

// JSON text with sorted keys and a trailing newline.
std::string json_text(const Json& j);

// P2 grayscale rendering of a 2D probability grid, axis 0 as rows, scaled so
// the brightest site maps to 255.
std::string pgm_image(const StateGrid& state);

}  // namespace hotlat
