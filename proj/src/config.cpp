#include "hotlat/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <stdexcept>

#include "hotlat/errors.hpp"
#include "hotlat/version.hpp"

namespace hotlat {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_object(const Json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
}

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path, "unknown key '" + it.key() + "'");
    }
}

const Json& require_key(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required key '") + key + "'");
    return *it;
}

double get_double(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

int get_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

bool get_bool(const Json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

const char* axis_letter(std::size_t axis) {
    constexpr const char* names[] = {"x", "y", "z"};
    return names[axis];
}

int parse_axis_name(const Json& v, const std::string& path, int dimension) {
    std::string s = get_string(v, path);
    int idx = s == "x" ? 0 : s == "y" ? 1 : s == "z" ? 2 : -1;
    if (idx < 0 || idx >= dimension)
        fail(path, "'" + s + "' is not an axis of this lattice");
    return idx;
}

EdgeSide parse_side(const Json& v, const std::string& path) {
    std::string s = get_string(v, path);
    if (s == "any") return EdgeSide::Any;
    if (s == "left") return EdgeSide::Left;
    if (s == "right") return EdgeSide::Right;
    fail(path, "side must be 'any', 'left', or 'right'");
}

const char* side_name(EdgeSide side) {
    switch (side) {
        case EdgeSide::Any: return "any";
        case EdgeSide::Left: return "left";
        case EdgeSide::Right: return "right";
    }
    return "?";
}

// Array of values, or {"start", "stop", "count"} for an inclusive ramp.
std::vector<double> parse_value_list(const Json& v, const std::string& path, bool as_angle) {
    auto one = [&](const Json& item, const std::string& p) {
        return as_angle ? parse_angle(item, p) : get_double(item, p);
    };
    std::vector<double> out;
    if (v.is_array()) {
        if (v.empty()) fail(path, "empty list");
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(one(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }
    if (v.is_object()) {
        check_keys(v, path, {"start", "stop", "count"});
        double start = one(require_key(v, "start", path), path + ".start");
        double stop = one(require_key(v, "stop", path), path + ".stop");
        int count = get_int(require_key(v, "count", path), path + ".count");
        if (count < 1) fail(path + ".count", "must be at least 1");
        if (count == 1) return {start};
        double step = (stop - start) / static_cast<double>(count - 1);
        for (int i = 0; i < count; ++i) out.push_back(start + step * i);
        return out;
    }
    fail(path, "expected a list or a {start, stop, count} ramp");
}

Json frequency_json(const Frequency& b) {
    if (b.is_rational())
        return std::to_string(b.num) + "/" + std::to_string(b.den);
    return b.value;
}

AxisModulation parse_axis(const Json& v, const std::string& path, Json& norm) {
    check_object(v, path);
    check_keys(v, path, {"t", "lambda", "b", "phi", "sites", "bond_origin", "boundary", "theta"});

    AxisModulation axis;
    axis.t = get_double(require_key(v, "t", path), path + ".t");
    axis.lambda = get_double(require_key(v, "lambda", path), path + ".lambda");
    axis.b = parse_frequency(require_key(v, "b", path), path + ".b");
    axis.n_sites = get_int(require_key(v, "sites", path), path + ".sites");
    if (v.contains("phi")) axis.phi = parse_angle(v["phi"], path + ".phi");
    if (v.contains("bond_origin"))
        axis.bond_origin = get_int(v["bond_origin"], path + ".bond_origin");
    if (v.contains("theta")) axis.theta = parse_angle(v["theta"], path + ".theta");
    if (v.contains("boundary")) {
        std::string s = get_string(v["boundary"], path + ".boundary");
        if (s == "open")
            axis.boundary = Boundary::Open;
        else if (s == "twisted")
            axis.boundary = Boundary::Twisted;
        else
            fail(path + ".boundary", "must be 'open' or 'twisted'");
    }
    try {
        axis.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }

    norm = Json{{"t", axis.t},
                {"lambda", axis.lambda},
                {"b", frequency_json(axis.b)},
                {"phi", axis.phi},
                {"sites", axis.n_sites},
                {"bond_origin", axis.bond_origin},
                {"boundary", axis.boundary == Boundary::Open ? "open" : "twisted"},
                {"theta", axis.theta}};
    return axis;
}

ClassifyOptions parse_classify(const Json& v, const std::string& path) {
    check_object(v, path);
    check_keys(v, path, {"edge_width", "weight_threshold", "ipr_factor"});
    ClassifyOptions opts;
    if (v.contains("edge_width")) opts.edge_width = get_int(v["edge_width"], path + ".edge_width");
    if (v.contains("weight_threshold"))
        opts.weight_threshold = get_double(v["weight_threshold"], path + ".weight_threshold");
    if (v.contains("ipr_factor")) opts.ipr_factor = get_double(v["ipr_factor"], path + ".ipr_factor");
    if (opts.edge_width < 1) fail(path + ".edge_width", "must be at least 1");
    if (!(opts.weight_threshold > 0.0) || opts.weight_threshold > 1.0)
        fail(path + ".weight_threshold", "must be in (0, 1]");
    if (!(opts.ipr_factor >= 0.0)) fail(path + ".ipr_factor", "must be non-negative");
    return opts;
}

Json classify_json(const ClassifyOptions& opts) {
    return Json{{"edge_width", opts.edge_width},
                {"weight_threshold", opts.weight_threshold},
                {"ipr_factor", opts.ipr_factor}};
}

SpectrumSection parse_spectrum(const Json& v, const std::string& path, Json& norm) {
    check_object(v, path);
    check_keys(v, path, {"phi", "symmetrize", "classify"});
    SpectrumSection section;
    section.phi_values = parse_value_list(require_key(v, "phi", path), path + ".phi", true);
    if (v.contains("symmetrize"))
        section.symmetrize = get_bool(v["symmetrize"], path + ".symmetrize");
    if (v.contains("classify"))
        section.classify = parse_classify(v["classify"], path + ".classify");

    norm = Json{{"phi", section.phi_values},
                {"symmetrize", section.symmetrize},
                {"classify", classify_json(section.classify)}};
    return section;
}

DosSection parse_dos(const Json& v, const std::string& path, Json& norm) {
    check_object(v, path);
    check_keys(v, path, {"eta", "kernel", "grid_points", "pad"});
    DosSection section;
    if (v.contains("eta")) {
        const Json& eta = v["eta"];
        if (eta.is_string()) {
            if (eta.get<std::string>() != "auto")
                fail(path + ".eta", "must be a positive number or 'auto'");
        } else {
            double value = get_double(eta, path + ".eta");
            if (!(value > 0.0)) fail(path + ".eta", "must be positive");
            section.eta = value;
        }
    }
    if (v.contains("kernel")) {
        std::string s = get_string(v["kernel"], path + ".kernel");
        if (s == "lorentzian")
            section.kernel = DosKernel::Lorentzian;
        else if (s == "gaussian")
            section.kernel = DosKernel::Gaussian;
        else
            fail(path + ".kernel", "must be 'lorentzian' or 'gaussian'");
    }
    if (v.contains("grid_points"))
        section.grid_points = get_int(v["grid_points"], path + ".grid_points");
    if (section.grid_points < 2) fail(path + ".grid_points", "must be at least 2");
    if (v.contains("pad")) section.pad = get_double(v["pad"], path + ".pad");
    if (!(section.pad > 0.0)) fail(path + ".pad", "must be positive");

    norm = Json{{"eta", section.eta ? Json(*section.eta) : Json("auto")},
                {"kernel", section.kernel == DosKernel::Lorentzian ? "lorentzian" : "gaussian"},
                {"grid_points", section.grid_points},
                {"pad", section.pad}};
    return section;
}

ChernSection parse_chern(const Json& v, const std::string& path, int dimension, Json& norm) {
    check_object(v, path);
    check_keys(v, path,
               {"method", "bands", "subsets", "target_subsets", "grid", "max_grid",
                "auto_refine", "dump_flux"});
    ChernSection section;
    std::string method = get_string(require_key(v, "method", path), path + ".method");
    if (method == "abelian")
        section.method = ChernMethod::Abelian;
    else if (method == "vector")
        section.method = ChernMethod::Vector;
    else
        fail(path + ".method", "must be 'abelian' or 'vector'");

    if (v.contains("bands")) {
        if (section.method != ChernMethod::Abelian)
            fail(path + ".bands", "only applies to the abelian method");
        const Json& bands = v["bands"];
        if (!bands.is_array() || bands.empty()) fail(path + ".bands", "expected a non-empty list");
        for (std::size_t i = 0; i < bands.size(); ++i) {
            int band = get_int(bands[i], path + ".bands[" + std::to_string(i) + "]");
            if (band < 0) fail(path + ".bands[" + std::to_string(i) + "]", "must be >= 0");
            section.bands.push_back(band);
        }
    }

    if (v.contains("subsets")) {
        if (section.method != ChernMethod::Vector)
            fail(path + ".subsets", "only applies to the vector method");
        const Json& subsets = v["subsets"];
        if (!subsets.is_array() || subsets.size() != static_cast<std::size_t>(dimension))
            fail(path + ".subsets", "expected one subset list per axis");
        for (std::size_t a = 0; a < subsets.size(); ++a) {
            std::string apath = path + ".subsets[" + std::to_string(a) + "]";
            const Json& list = subsets[a];
            if (!list.is_array() || list.empty()) fail(apath, "expected a non-empty list");
            std::vector<BandRange> ranges;
            for (std::size_t r = 0; r < list.size(); ++r) {
                std::string rpath = apath + "[" + std::to_string(r) + "]";
                const Json& pair = list[r];
                if (!pair.is_array() || pair.size() != 2)
                    fail(rpath, "expected a [lo, hi] index pair");
                ranges.push_back({get_int(pair[0], rpath + "[0]"), get_int(pair[1], rpath + "[1]")});
            }
            section.subsets.push_back(std::move(ranges));
        }
    }

    if (v.contains("target_subsets")) {
        if (section.method != ChernMethod::Vector)
            fail(path + ".target_subsets", "only applies to the vector method");
        section.target_subsets = get_int(v["target_subsets"], path + ".target_subsets");
        if (section.target_subsets < 1) fail(path + ".target_subsets", "must be at least 1");
    }

    if (v.contains("grid")) {
        const Json& grid = v["grid"];
        if (!grid.is_array() || grid.size() != 2) fail(path + ".grid", "expected [n1, n2]");
        section.options.grid_n1 = get_int(grid[0], path + ".grid[0]");
        section.options.grid_n2 = get_int(grid[1], path + ".grid[1]");
        if (section.options.grid_n1 < 2 || section.options.grid_n2 < 2)
            fail(path + ".grid", "grid must be at least 2x2");
    }
    if (v.contains("max_grid")) {
        section.options.max_grid = get_int(v["max_grid"], path + ".max_grid");
        if (section.options.max_grid < std::max(section.options.grid_n1, section.options.grid_n2))
            fail(path + ".max_grid", "must be at least the starting grid");
    }
    if (v.contains("auto_refine"))
        section.options.auto_refine = get_bool(v["auto_refine"], path + ".auto_refine");
    if (v.contains("dump_flux")) section.dump_flux = get_bool(v["dump_flux"], path + ".dump_flux");

    norm = Json{{"method", method},
                {"grid", Json::array({section.options.grid_n1, section.options.grid_n2})},
                {"max_grid", section.options.max_grid},
                {"auto_refine", section.options.auto_refine},
                {"dump_flux", section.dump_flux}};
    if (section.method == ChernMethod::Abelian) {
        if (!section.bands.empty()) norm["bands"] = section.bands;
    } else {
        norm["target_subsets"] = section.target_subsets;
        if (!section.subsets.empty()) {
            Json subsets = Json::array();
            for (const auto& ranges : section.subsets) {
                Json list = Json::array();
                for (const auto& r : ranges) list.push_back(Json::array({r.lo, r.hi}));
                subsets.push_back(std::move(list));
            }
            norm["subsets"] = std::move(subsets);
        }
    }
    return section;
}

StateRequest parse_state_request(const Json& v, const std::string& path, int dimension,
                                 Json& norm) {
    check_object(v, path);
    std::string kind = get_string(require_key(v, "kind", path), path + ".kind");
    StateRequest request;

    auto parse_gap = [&]() {
        int gap = 1;
        if (v.contains("gap")) gap = get_int(v["gap"], path + ".gap");
        if (gap < 1) fail(path + ".gap", "must be at least 1");
        return gap;
    };
    auto parse_sides = [&](std::size_t expected) {
        std::vector<EdgeSide> sides;
        if (!v.contains("sides")) return sides;
        const Json& list = v["sides"];
        if (!list.is_array() || list.size() != expected)
            fail(path + ".sides", "expected " + std::to_string(expected) + " sides");
        for (std::size_t i = 0; i < list.size(); ++i)
            sides.push_back(parse_side(list[i], path + ".sides[" + std::to_string(i) + "]"));
        return sides;
    };
    auto apply_gap = [](std::vector<AxisRole>& roles, int gap) {
        for (auto& role : roles)
            if (role.edge) role.gap = gap;
    };
    auto sides_json = [&](const std::vector<AxisRole>& roles, bool skip_extended) {
        Json list = Json::array();
        for (const auto& role : roles)
            if (role.edge || !skip_extended) list.push_back(side_name(role.side));
        return list;
    };

    try {
        if (kind == "corner") {
            check_keys(v, path, {"kind", "sides", "gap"});
            int gap = parse_gap();
            request.roles = corner_roles(dimension, parse_sides(static_cast<std::size_t>(dimension)));
            apply_gap(request.roles, gap);
            request.name = "corner";
            norm = Json{{"kind", "corner"},
                        {"sides", sides_json(request.roles, false)},
                        {"gap", gap}};
        } else if (kind == "hinge") {
            check_keys(v, path, {"kind", "along", "sides", "gap"});
            int gap = parse_gap();
            int along = parse_axis_name(require_key(v, "along", path), path + ".along", dimension);
            request.roles = hinge_roles(dimension, along, parse_sides(2));
            apply_gap(request.roles, gap);
            request.name = std::string("hinge_") + axis_letter(static_cast<std::size_t>(along));
            norm = Json{{"kind", "hinge"},
                        {"along", axis_letter(static_cast<std::size_t>(along))},
                        {"sides", sides_json(request.roles, true)},
                        {"gap", gap}};
        } else if (kind == "surface" || kind == "edge") {
            check_keys(v, path, {"kind", "normal", "side", "gap"});
            int gap = parse_gap();
            int normal =
                parse_axis_name(require_key(v, "normal", path), path + ".normal", dimension);
            EdgeSide side =
                v.contains("side") ? parse_side(v["side"], path + ".side") : EdgeSide::Any;
            request.roles = surface_roles(dimension, normal, side);
            apply_gap(request.roles, gap);
            request.name = kind + "_" + axis_letter(static_cast<std::size_t>(normal));
            norm = Json{{"kind", kind},
                        {"normal", axis_letter(static_cast<std::size_t>(normal))},
                        {"side", side_name(side)},
                        {"gap", gap}};
        } else if (kind == "custom") {
            check_keys(v, path, {"kind", "roles"});
            const Json& roles = require_key(v, "roles", path);
            if (!roles.is_array() || roles.size() != static_cast<std::size_t>(dimension))
                fail(path + ".roles", "expected one role per axis");
            Json norm_roles = Json::array();
            for (std::size_t a = 0; a < roles.size(); ++a) {
                std::string rpath = path + ".roles[" + std::to_string(a) + "]";
                const Json& rv = roles[a];
                check_object(rv, rpath);
                AxisRole role;
                role.edge = get_bool(require_key(rv, "edge", rpath), rpath + ".edge");
                Json rnorm;
                rnorm["edge"] = role.edge;
                if (role.edge) {
                    check_keys(rv, rpath, {"edge", "side", "gap"});
                    if (rv.contains("side")) role.side = parse_side(rv["side"], rpath + ".side");
                    if (rv.contains("gap")) {
                        role.gap = get_int(rv["gap"], rpath + ".gap");
                        if (role.gap < 1) fail(rpath + ".gap", "must be at least 1");
                    }
                    rnorm["side"] = side_name(role.side);
                    rnorm["gap"] = role.gap;
                } else {
                    check_keys(rv, rpath, {"edge", "index"});
                    if (rv.contains("index")) {
                        int index = get_int(rv["index"], rpath + ".index");
                        if (index < 0) fail(rpath + ".index", "must be >= 0");
                        role.extended_index = index;
                        rnorm["index"] = index;
                    }
                }
                request.roles.push_back(role);
                norm_roles.push_back(std::move(rnorm));
            }
            request.name = "custom";
            norm = Json{{"kind", "custom"}, {"roles", std::move(norm_roles)}};
        } else {
            fail(path + ".kind", "unknown state kind '" + kind + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return request;
}

AssembleSection parse_assemble(const Json& v, const std::string& path, int dimension,
                               Json& norm) {
    check_object(v, path);
    check_keys(v, path, {"states", "classify", "verify"});
    AssembleSection section;
    const Json& states = require_key(v, "states", path);
    if (!states.is_array() || states.empty())
        fail(path + ".states", "expected a non-empty list of state requests");

    Json norm_states = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        Json snorm;
        section.states.push_back(parse_state_request(
            states[i], path + ".states[" + std::to_string(i) + "]", dimension, snorm));
        norm_states.push_back(std::move(snorm));
    }
    // Keep generated file names unique.
    for (std::size_t i = 0; i < section.states.size(); ++i) {
        int repeat = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (section.states[j].name == section.states[i].name ||
                section.states[j].name.starts_with(section.states[i].name + "_"))
                ++repeat;
        if (repeat > 0) section.states[i].name += "_" + std::to_string(repeat + 1);
    }

    if (v.contains("classify"))
        section.classify = parse_classify(v["classify"], path + ".classify");
    if (v.contains("verify")) section.verify = get_bool(v["verify"], path + ".verify");

    norm = Json{{"states", std::move(norm_states)},
                {"classify", classify_json(section.classify)},
                {"verify", section.verify}};
    return section;
}

EvolveSection parse_evolve(const Json& v, const std::string& path, const LatticeSpec& lattice,
                           Json& norm) {
    check_object(v, path);
    check_keys(v, path, {"injections", "z", "half_width", "grids"});
    EvolveSection section;

    std::vector<long> dims = lattice.site_dims();
    const Json& injections = require_key(v, "injections", path);
    if (!injections.is_array() || injections.empty())
        fail(path + ".injections", "expected a non-empty list of sites");
    Json norm_injections = Json::array();
    for (std::size_t i = 0; i < injections.size(); ++i) {
        std::string ipath = path + ".injections[" + std::to_string(i) + "]";
        const Json& site = injections[i];
        if (!site.is_array() || site.size() != dims.size())
            fail(ipath, "expected a site tuple with one 1-based coordinate per axis");
        std::vector<long> zero_based;
        Json norm_site = Json::array();
        for (std::size_t a = 0; a < site.size(); ++a) {
            int coord = get_int(site[a], ipath + "[" + std::to_string(a) + "]");
            if (coord < 1 || coord > dims[a])
                fail(ipath + "[" + std::to_string(a) + "]",
                     "site coordinate out of range 1.." + std::to_string(dims[a]));
            zero_based.push_back(coord - 1);
            norm_site.push_back(coord);
        }
        section.injections.push_back(std::move(zero_based));
        norm_injections.push_back(std::move(norm_site));
    }

    section.distances = parse_value_list(require_key(v, "z", path), path + ".z", false);
    for (double z : section.distances)
        if (!(z >= 0.0)) fail(path + ".z", "distances must be non-negative");

    if (v.contains("half_width")) {
        section.half_width = get_int(v["half_width"], path + ".half_width");
        if (section.half_width < 0) fail(path + ".half_width", "must be non-negative");
    }
    std::string grids = "all";
    if (v.contains("grids")) {
        grids = get_string(v["grids"], path + ".grids");
        if (grids == "none")
            section.grids = GridEmission::None;
        else if (grids == "last")
            section.grids = GridEmission::Last;
        else if (grids == "all")
            section.grids = GridEmission::All;
        else
            fail(path + ".grids", "must be 'none', 'last', or 'all'");
    }

    norm = Json{{"injections", std::move(norm_injections)},
                {"z", section.distances},
                {"half_width", section.half_width},
                {"grids", grids}};
    return section;
}

}  // namespace

double parse_angle(const Json& value, const std::string& path) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        static const std::regex form(
            R"(^\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*$)");
        std::string s = value.get<std::string>();
        std::smatch m;
        if (std::regex_match(s, m, form)) {
            double coeff = m[2].matched && m[2].length() ? std::stod(m[2]) : 1.0;
            if (m[1].matched && m[1].str() == "-") coeff = -coeff;
            return coeff * std::numbers::pi;
        }
        fail(path, "cannot parse angle '" + s + "' (use radians or a string like '0.14pi')");
    }
    fail(path, "expected a number or an angle string");
}

Frequency parse_frequency(const Json& value, const std::string& path) {
    if (value.is_number()) {
        double b = value.get<double>();
        if (!(b >= 0.0)) fail(path, "frequency must be non-negative");
        return Frequency(b);
    }
    if (value.is_string()) {
        std::string s = value.get<std::string>();
        if (s == "golden") return Frequency::golden();
        static const std::regex frac(R"(^\s*(\d+)\s*/\s*(\d+)\s*$)");
        std::smatch m;
        if (std::regex_match(s, m, frac)) {
            try {
                return Frequency::rational(std::stol(m[1]), std::stol(m[2]));
            } catch (const std::exception& e) {
                fail(path, e.what());
            }
        }
        fail(path, "cannot parse frequency '" + s + "' (use a number, 'mu/nu', or 'golden')");
    }
    fail(path, "expected a number or a frequency string");
}

RunConfig parse_config(const Json& input) {
    check_object(input, "config");
    check_keys(input, "config",
               {"version", "lattice", "spectrum", "dos", "chern", "assemble", "evolve"});

    RunConfig cfg;
    cfg.version = get_int(require_key(input, "version", "config"), "config.version");
    if (cfg.version != kConfigSchemaVersion)
        fail("config.version", "unsupported schema version " + std::to_string(cfg.version) +
                                   " (this build reads version " +
                                   std::to_string(kConfigSchemaVersion) + ")");

    Json norm;
    norm["version"] = cfg.version;

    const Json& lattice = require_key(input, "lattice", "config");
    check_object(lattice, "config.lattice");
    check_keys(lattice, "config.lattice", {"axes"});
    const Json& axes = require_key(lattice, "axes", "config.lattice");
    if (!axes.is_array() || axes.empty() || axes.size() > 3)
        fail("config.lattice.axes", "expected a list of 1 to 3 axes");
    Json norm_axes = Json::array();
    for (std::size_t a = 0; a < axes.size(); ++a) {
        Json anorm;
        cfg.lattice.axes.push_back(
            parse_axis(axes[a], "config.lattice.axes[" + std::to_string(a) + "]", anorm));
        norm_axes.push_back(std::move(anorm));
    }
    norm["lattice"] = Json{{"axes", std::move(norm_axes)}};

    if (input.contains("spectrum")) {
        Json snorm;
        cfg.spectrum = parse_spectrum(input["spectrum"], "config.spectrum", snorm);
        norm["spectrum"] = std::move(snorm);
    }
    if (input.contains("dos")) {
        Json dnorm;
        cfg.dos = parse_dos(input["dos"], "config.dos", dnorm);
        norm["dos"] = std::move(dnorm);
    }
    if (input.contains("chern")) {
        Json cnorm;
        cfg.chern = parse_chern(input["chern"], "config.chern", cfg.lattice.dimension(), cnorm);
        norm["chern"] = std::move(cnorm);
    }
    if (input.contains("assemble")) {
        Json anorm;
        cfg.assemble =
            parse_assemble(input["assemble"], "config.assemble", cfg.lattice.dimension(), anorm);
        norm["assemble"] = std::move(anorm);
    }
    if (input.contains("evolve")) {
        Json enorm;
        cfg.evolve = parse_evolve(input["evolve"], "config.evolve", cfg.lattice, enorm);
        norm["evolve"] = std::move(enorm);
    }

    cfg.normalized = std::move(norm);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file '" + path + "': cannot open");
    Json parsed;
    try {
        parsed = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return parse_config(parsed);
}

}  // namespace hotlat
