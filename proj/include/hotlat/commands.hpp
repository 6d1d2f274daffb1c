#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hotlat/config.hpp"

namespace hotlat {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};
    unsigned workers = 0;
};

// Each command runs one experiment, writes its output files plus
// manifest.json into out_dir, and returns the manifest. A missing config
// section or an unusable format list raises ConfigError.
Json run_spectrum(const RunConfig& cfg, const RunOptions& opts);
Json run_dos(const RunConfig& cfg, const RunOptions& opts);
Json run_chern(const RunConfig& cfg, const RunOptions& opts);
Json run_assemble(const RunConfig& cfg, const RunOptions& opts);
Json run_evolve(const RunConfig& cfg, const RunOptions& opts);

}  // namespace hotlat
