#include "hotlat/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hotlat {

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string csv_double(double v) {
    return format_sig(v, 9);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string json_text(const Json& j) {
    return j.dump(2) + "\n";
}

std::string pgm_image(const StateGrid& state) {
    if (state.dimension() != 2)
        throw std::invalid_argument("pgm_image: needs a 2D grid");
    long rows = state.dims[0];
    long cols = state.dims[1];

    std::vector<double> p = state.probabilities();
    double peak = 0.0;
    for (double v : p) peak = std::max(peak, v);

    std::string out = "P2\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            long gray = 0;
            if (peak > 0.0)
                gray = std::lround(p[static_cast<std::size_t>(i * cols + j)] / peak * 255.0);
            if (j > 0) out += ' ';
            out += std::to_string(gray);
        }
        out += '\n';
    }
    return out;
}

}  // namespace hotlat
