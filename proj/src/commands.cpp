#include "hotlat/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "hotlat/assembly.hpp"
#include "hotlat/dynamics.hpp"
#include "hotlat/emit.hpp"
#include "hotlat/errors.hpp"
#include "hotlat/topology.hpp"
#include "hotlat/version.hpp"

namespace hotlat {

namespace {

const char* axis_letter(std::size_t axis) {
    constexpr const char* names[] = {"x", "y", "z"};
    return names[axis];
}

class Emitter {
public:
    Emitter(const RunConfig& cfg, const RunOptions& opts, const char* command)
        : cfg_(cfg), opts_(opts), command_(command) {
        if (opts.formats.empty()) throw ConfigError("output: no formats selected");
        for (const auto& f : opts.formats)
            if (f != "csv" && f != "json" && f != "pgm")
                throw ConfigError("output: unknown format '" + f + "'");
        std::filesystem::create_directories(opts.out_dir);
        for (std::size_t a = 0; a < cfg.lattice.axes.size(); ++a) {
            int negatives = negative_bond_count(cfg.lattice.axes[a]);
            if (negatives > 0)
                warn(std::string("axis ") + axis_letter(a) + ": " + std::to_string(negatives) +
                     " bonds have negative coupling (|lambda| > 1)");
        }
    }

    bool wants(const std::string& format) const {
        return std::find(opts_.formats.begin(), opts_.formats.end(), format) !=
               opts_.formats.end();
    }

    void emit(const std::string& name, const std::string& kind, const std::string& format,
              const std::string& content) {
        write_text_file(opts_.out_dir / name, content);
        files_.push_back(Json{{"name", name}, {"kind", kind}, {"format", format}});
    }

    void warn(const std::string& message) { warnings_.push_back(message); }

    Json finish() {
        Json manifest{{"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
                      {"command", command_},
                      {"config", cfg_.normalized},
                      {"files", files_},
                      {"warnings", warnings_}};
        write_text_file(opts_.out_dir / "manifest.json", json_text(manifest));
        return manifest;
    }

private:
    const RunConfig& cfg_;
    const RunOptions& opts_;
    const char* command_;
    Json files_ = Json::array();
    std::vector<std::string> warnings_;
};

std::string coord_header(int dimension) {
    return dimension == 1 ? "i" : dimension == 2 ? "i,j" : "i,j,k";
}

// Site tuples leave the CLI 1-based.
std::string coord_row(const std::vector<long>& site) {
    std::string out;
    for (std::size_t a = 0; a < site.size(); ++a) {
        if (a) out += ',';
        out += std::to_string(site[a] + 1);
    }
    return out;
}

Json site_json(const std::vector<long>& site) {
    Json out = Json::array();
    for (long c : site) out.push_back(c + 1);
    return out;
}

std::string grid_csv(const StateGrid& state,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
    std::ostringstream out;
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
    out << coord_header(state.dimension()) << ",probability\n";
    std::vector<double> p = state.probabilities();
    for (long f = 0; f < state.size(); ++f)
        out << coord_row(state.site_of(f)) << ',' << csv_double(p[static_cast<std::size_t>(f)])
            << "\n";
    return out.str();
}

Json amplitudes_json(const StateGrid& state) {
    Json amps = Json::array();
    for (long i = 0; i < state.size(); ++i)
        amps.push_back(Json::array({state.amplitudes[i].real(), state.amplitudes[i].imag()}));
    return amps;
}

std::string curve_csv(const DosCurve& curve) {
    std::ostringstream out;
    out << "energy,density\n";
    for (long i = 0; i < curve.energy.size(); ++i)
        out << csv_double(curve.energy[i]) << ',' << csv_double(curve.density[i]) << "\n";
    return out.str();
}

std::string flux_csv(const FluxField& field) {
    std::ostringstream out;
    out << "i1,i2,flux\n";
    for (int i = 0; i < field.n1; ++i)
        for (int j = 0; j < field.n2; ++j)
            out << i << ',' << j << ','
                << csv_double(field.flux[static_cast<std::size_t>(i) *
                                             static_cast<std::size_t>(field.n2) +
                                         static_cast<std::size_t>(j)])
                << "\n";
    return out.str();
}

Json chern_json(const ChernResult& r) {
    return Json{{"chern", r.integer},
                {"raw_sum", r.raw_sum},
                {"max_plaquette_flux", r.max_plaquette_flux},
                {"grid", Json::array({r.grid_n1, r.grid_n2})}};
}

}  // namespace

Json run_spectrum(const RunConfig& cfg, const RunOptions& opts) {
    if (!cfg.spectrum) throw ConfigError("config.spectrum: required by the spectrum command");
    const SpectrumSection& section = *cfg.spectrum;
    Emitter emitter(cfg, opts, "spectrum");

    Json jaxes = Json::array();
    for (std::size_t a = 0; a < cfg.lattice.axes.size(); ++a) {
        SpectrumSweep sweep = spectrum_sweep(cfg.lattice.axes[a], section.phi_values,
                                             section.classify, section.symmetrize, opts.workers);
        if (emitter.wants("csv")) {
            std::ostringstream csv;
            csv << "phi,index,energy,kind,left_weight,right_weight,ipr\n";
            for (std::size_t p = 0; p < sweep.phi_values.size(); ++p)
                for (long s = 0; s < sweep.energies.rows(); ++s) {
                    const StateClassification& cls =
                        sweep.classifications[p][static_cast<std::size_t>(s)];
                    csv << csv_double(sweep.phi_values[p]) << ',' << s << ','
                        << csv_double(sweep.energies(s, static_cast<long>(p))) << ','
                        << to_string(cls.kind) << ',' << csv_double(cls.left_weight) << ','
                        << csv_double(cls.right_weight) << ',' << csv_double(cls.ipr) << "\n";
                }
            emitter.emit(std::string("spectrum_") + axis_letter(a) + ".csv", "spectrum", "csv",
                         csv.str());
        }
        if (emitter.wants("json")) {
            Json jsweep = Json::array();
            for (std::size_t p = 0; p < sweep.phi_values.size(); ++p) {
                Json states = Json::array();
                for (long s = 0; s < sweep.energies.rows(); ++s) {
                    const StateClassification& cls =
                        sweep.classifications[p][static_cast<std::size_t>(s)];
                    states.push_back(Json{{"energy", sweep.energies(s, static_cast<long>(p))},
                                          {"kind", to_string(cls.kind)},
                                          {"left_weight", cls.left_weight},
                                          {"right_weight", cls.right_weight},
                                          {"ipr", cls.ipr}});
                }
                jsweep.push_back(
                    Json{{"phi", sweep.phi_values[p]}, {"states", std::move(states)}});
            }
            jaxes.push_back(Json{{"axis", axis_letter(a)}, {"sweep", std::move(jsweep)}});
        }
    }
    if (emitter.wants("json"))
        emitter.emit("spectrum.json", "spectrum", "json", json_text(Json{{"axes", jaxes}}));
    if (emitter.wants("pgm")) emitter.warn("pgm: spectrum has no raster output");
    return emitter.finish();
}

Json run_dos(const RunConfig& cfg, const RunOptions& opts) {
    if (!cfg.dos) throw ConfigError("config.dos: required by the dos command");
    const DosSection& section = *cfg.dos;
    Emitter emitter(cfg, opts, "dos");

    double max_t = 0.0;
    for (const auto& axis : cfg.lattice.axes) max_t = std::max(max_t, axis.t);
    double eta = section.eta.value_or(0.05 * max_t);

    std::vector<std::vector<double>> axis_values;
    for (const auto& axis : cfg.lattice.axes) {
        EigenSolution sol = eigensolve(build_axis_hamiltonian(axis));
        axis_values.emplace_back(sol.values.data(), sol.values.data() + sol.values.size());
    }

    Json jcurves = Json::array();
    auto emit_curve = [&](const std::string& name, const std::vector<double>& values) {
        DosCurve curve = dos(values, eta, section.grid_points, section.pad, section.kernel);
        if (emitter.wants("csv"))
            emitter.emit("dos_" + name + ".csv", "dos", "csv", curve_csv(curve));
        if (emitter.wants("json")) {
            std::vector<double> energy(curve.energy.data(),
                                       curve.energy.data() + curve.energy.size());
            std::vector<double> density(curve.density.data(),
                                        curve.density.data() + curve.density.size());
            jcurves.push_back(Json{{"name", name},
                                   {"states", static_cast<long>(values.size())},
                                   {"energy", energy},
                                   {"density", density}});
        }
    };

    for (std::size_t a = 0; a < axis_values.size(); ++a)
        emit_curve(axis_letter(a), axis_values[a]);

    if (cfg.lattice.dimension() > 1) {
        // Kronecker-sum spectrum by eigenvalue additivity; no lattice solve.
        std::vector<double> lattice_values{0.0};
        for (const auto& values : axis_values) {
            std::vector<double> next;
            next.reserve(lattice_values.size() * values.size());
            for (double acc : lattice_values)
                for (double v : values) next.push_back(acc + v);
            lattice_values = std::move(next);
        }
        emit_curve("lattice", lattice_values);
    }

    if (emitter.wants("json"))
        emitter.emit("dos.json", "dos", "json",
                     json_text(Json{{"eta", eta},
                                    {"kernel", section.kernel == DosKernel::Lorentzian
                                                   ? "lorentzian"
                                                   : "gaussian"},
                                    {"curves", jcurves}}));
    if (emitter.wants("pgm")) emitter.warn("pgm: dos has no raster output");
    return emitter.finish();
}

Json run_chern(const RunConfig& cfg, const RunOptions& opts) {
    if (!cfg.chern) throw ConfigError("config.chern: required by the chern command");
    const ChernSection& section = *cfg.chern;
    Emitter emitter(cfg, opts, "chern");

    ChernOptions copts = section.options;
    copts.workers = opts.workers;

    Json result;
    Json jaxes = Json::array();
    std::ostringstream csv;
    csv << "axis,lo,hi,chern,raw_sum,max_plaquette_flux,grid_n1,grid_n2\n";
    auto csv_row = [&](std::size_t a, int lo, int hi, const ChernResult& r) {
        csv << axis_letter(a) << ',' << lo << ',' << hi << ',' << r.integer << ','
            << csv_double(r.raw_sum) << ',' << csv_double(r.max_plaquette_flux) << ','
            << r.grid_n1 << ',' << r.grid_n2 << "\n";
    };

    if (section.method == ChernMethod::Abelian) {
        result["method"] = "abelian";
        for (std::size_t a = 0; a < cfg.lattice.axes.size(); ++a) {
            const AxisModulation& axis = cfg.lattice.axes[a];
            if (!axis.b.is_rational())
                throw std::domain_error(std::string("chern: axis ") + axis_letter(a) +
                                        " has an irrational b; the abelian method needs mu/nu");
            std::vector<int> bands = section.bands;
            if (bands.empty())
                for (long band = 0; band < axis.b.den; ++band)
                    bands.push_back(static_cast<int>(band));

            Json jbands = Json::array();
            for (int band : bands) {
                FluxField flux;
                ChernResult r = abelian_chern(axis, band, copts,
                                              section.dump_flux ? &flux : nullptr);
                Json jband = chern_json(r);
                jband["band"] = band;
                jbands.push_back(std::move(jband));
                csv_row(a, band, band, r);
                if (section.dump_flux && emitter.wants("csv"))
                    emitter.emit(std::string("flux_") + axis_letter(a) + "_band" +
                                     std::to_string(band) + ".csv",
                                 "flux", "csv", flux_csv(flux));
            }
            jaxes.push_back(Json{{"axis", axis_letter(a)}, {"bands", std::move(jbands)}});
        }
    } else {
        VectorChern vc = vector_chern(cfg.lattice, section.subsets, section.target_subsets,
                                      copts);
        result["method"] = "vector";
        result["auto_partitioned"] = vc.auto_partitioned;
        Json summary = Json::array();
        for (std::size_t a = 0; a < vc.axes.size(); ++a) {
            const AxisChern& ac = vc.axes[a];
            Json jsubsets = Json::array();
            Json numbers = Json::array();
            for (std::size_t s = 0; s < ac.subsets.size(); ++s) {
                const BandRange& range = ac.partition.ranges[s];
                Json jsubset = chern_json(ac.subsets[s]);
                jsubset["range"] = Json::array({range.lo, range.hi});
                jsubsets.push_back(std::move(jsubset));
                numbers.push_back(ac.subsets[s].integer);
                csv_row(a, range.lo, range.hi, ac.subsets[s]);
                if (section.dump_flux && emitter.wants("csv")) {
                    FluxField flux;
                    nonabelian_chern(cfg.lattice.axes[a], range, copts, &flux);
                    emitter.emit(std::string("flux_") + axis_letter(a) + "_subset" +
                                     std::to_string(s) + ".csv",
                                 "flux", "csv", flux_csv(flux));
                }
            }
            jaxes.push_back(Json{{"axis", axis_letter(a)},
                                 {"subsets", std::move(jsubsets)},
                                 {"separations", ac.partition.separations}});
            summary.push_back(std::move(numbers));
        }
        result["chern_vector"] = std::move(summary);
    }
    result["axes"] = std::move(jaxes);

    if (emitter.wants("csv")) emitter.emit("chern.csv", "chern", "csv", csv.str());
    if (emitter.wants("json")) emitter.emit("chern.json", "chern", "json", json_text(result));
    if (emitter.wants("pgm")) emitter.warn("pgm: chern has no raster output");
    return emitter.finish();
}

Json run_assemble(const RunConfig& cfg, const RunOptions& opts) {
    if (!cfg.assemble) throw ConfigError("config.assemble: required by the assemble command");
    const AssembleSection& section = *cfg.assemble;
    Emitter emitter(cfg, opts, "assemble");

    std::vector<AxisSolution> axes;
    for (const auto& axis : cfg.lattice.axes)
        axes.push_back(solve_axis(axis, section.classify, true));
    KroneckerOperator op = kron_sum(cfg.lattice);

    bool want_pgm = emitter.wants("pgm");
    if (want_pgm && cfg.lattice.dimension() != 2) {
        emitter.warn("pgm: heatmaps are only rendered for 2D lattices");
        want_pgm = false;
    }

    Json jrequests = Json::array();
    std::ostringstream summary;
    summary << "request,label,energy,residual\n";
    for (const StateRequest& request : section.states) {
        std::vector<ProductState> states = construct_states(axes, request.roles);

        std::vector<std::string> bases, names;
        for (const ProductState& state : states) {
            std::string base = "state_" + request.name + "_" + state.label;
            int repeat = 0;
            for (const std::string& seen : bases)
                if (seen == base) ++repeat;
            bases.push_back(base);
            if (repeat > 0) base += "_" + std::to_string(repeat + 1);
            names.push_back(base);
        }

        Json jstates = Json::array();
        for (std::size_t s = 0; s < states.size(); ++s) {
            const ProductState& state = states[s];
            double residual = std::numeric_limits<double>::quiet_NaN();
            if (section.verify) residual = verify_eigenpair(op, state.grid, state.energy);

            Json jcomponents = Json::array();
            for (std::size_t a = 0; a < state.components.size(); ++a) {
                const AxisComponent& c = state.components[a];
                jcomponents.push_back(Json{{"axis", axis_letter(a)},
                                           {"index", c.index},
                                           {"energy", c.energy},
                                           {"kind", to_string(c.classification.kind)},
                                           {"tag", std::string(1, c.tag)},
                                           {"parity", c.parity},
                                           {"left_weight", c.classification.left_weight},
                                           {"right_weight", c.classification.right_weight},
                                           {"ipr", c.classification.ipr}});
            }
            Json jstate{{"request", request.name},
                        {"label", state.label},
                        {"energy", state.energy},
                        {"components", jcomponents}};
            if (section.verify) jstate["residual"] = residual;

            summary << request.name << ',' << state.label << ',' << csv_double(state.energy)
                    << ',' << (section.verify ? csv_double(residual) : "") << "\n";

            if (emitter.wants("csv")) {
                std::vector<std::pair<std::string, std::string>> meta{
                    {"request", request.name},
                    {"label", state.label},
                    {"energy", csv_double(state.energy)}};
                if (section.verify) meta.emplace_back("residual", csv_double(residual));
                emitter.emit(names[s] + ".csv", "state", "csv", grid_csv(state.grid, meta));
            }
            if (emitter.wants("json")) {
                Json full = jstate;
                full["dims"] = state.grid.dims;
                full["amplitudes"] = amplitudes_json(state.grid);
                emitter.emit(names[s] + ".json", "state", "json", json_text(full));
            }
            if (want_pgm) emitter.emit(names[s] + ".pgm", "state", "pgm", pgm_image(state.grid));

            jstate["file_base"] = names[s];
            jstates.push_back(std::move(jstate));
        }
        jrequests.push_back(Json{{"request", request.name}, {"states", std::move(jstates)}});
    }

    if (emitter.wants("csv")) emitter.emit("assembled.csv", "summary", "csv", summary.str());
    if (emitter.wants("json"))
        emitter.emit("assembled.json", "summary", "json",
                     json_text(Json{{"requests", jrequests}}));
    return emitter.finish();
}

Json run_evolve(const RunConfig& cfg, const RunOptions& opts) {
    if (!cfg.evolve) throw ConfigError("config.evolve: required by the evolve command");
    const EvolveSection& section = *cfg.evolve;
    Emitter emitter(cfg, opts, "evolve");

    int dim = cfg.lattice.dimension();
    bool want_pgm = emitter.wants("pgm");
    if (want_pgm && dim != 2) {
        emitter.warn("pgm: heatmaps are only rendered for 2D lattices");
        want_pgm = false;
    }

    // On a 2D lattice an injection on exactly one boundary gets the strip
    // window of that edge; corners and interior sites get the square window.
    auto edge_side = [&](const std::vector<long>& site) -> std::optional<BoundarySide> {
        if (dim != 2) return std::nullopt;
        std::vector<BoundarySide> hits;
        if (site[0] == 0) hits.push_back(BoundarySide::Left);
        if (site[0] == cfg.lattice.axes[0].n_sites - 1) hits.push_back(BoundarySide::Right);
        if (site[1] == 0) hits.push_back(BoundarySide::Bottom);
        if (site[1] == cfg.lattice.axes[1].n_sites - 1) hits.push_back(BoundarySide::Top);
        if (hits.size() == 1) return hits.front();
        return std::nullopt;
    };

    std::ostringstream xi_csv;
    xi_csv << "injection," << coord_header(dim) << ",z,xi,window,norm\n";
    Json jinjections = Json::array();

    for (std::size_t n = 0; n < section.injections.size(); ++n) {
        const std::vector<long>& site = section.injections[n];
        EvolutionResult evo = evolve(cfg.lattice, site, section.distances, opts.workers);
        std::optional<BoundarySide> side = edge_side(site);

        Json jsamples = Json::array();
        for (std::size_t zi = 0; zi < evo.distances.size(); ++zi) {
            const StateGrid& state = evo.states[zi];
            LocalizationReport report =
                side ? edge_metric(state, *side, site, section.half_width)
                     : corner_metric(state, site, section.half_width);

            xi_csv << (n + 1) << ',' << coord_row(site) << ','
                   << csv_double(evo.distances[zi]) << ',' << csv_double(report.xi) << ','
                   << report.window << ',' << csv_double(evo.norms[zi]) << "\n";
            jsamples.push_back(Json{{"z", evo.distances[zi]},
                                    {"xi", report.xi},
                                    {"window", report.window},
                                    {"norm", evo.norms[zi]}});

            bool keep = section.grids == GridEmission::All ||
                        (section.grids == GridEmission::Last &&
                         zi + 1 == evo.distances.size());
            if (!keep) continue;
            std::string base =
                "prob_inj" + std::to_string(n + 1) + "_z" + std::to_string(zi);
            if (emitter.wants("csv"))
                emitter.emit(base + ".csv", "probability", "csv",
                             grid_csv(state, {{"injection", coord_row(site)},
                                              {"z", csv_double(evo.distances[zi])}}));
            if (emitter.wants("json")) {
                std::vector<double> p = state.probabilities();
                emitter.emit(base + ".json", "probability", "json",
                             json_text(Json{{"injection", site_json(site)},
                                            {"z", evo.distances[zi]},
                                            {"dims", state.dims},
                                            {"probabilities", p}}));
            }
            if (want_pgm)
                emitter.emit(base + ".pgm", "probability", "pgm", pgm_image(state));
        }
        jinjections.push_back(Json{{"site", site_json(site)}, {"samples", std::move(jsamples)}});
    }

    if (emitter.wants("csv")) emitter.emit("xi.csv", "localization", "csv", xi_csv.str());
    if (emitter.wants("json"))
        emitter.emit("evolution.json", "localization", "json",
                     json_text(Json{{"half_width", section.half_width},
                                    {"injections", jinjections}}));
    return emitter.finish();
}

}  // namespace hotlat
