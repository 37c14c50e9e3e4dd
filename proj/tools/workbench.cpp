// Pseudo-spectral simulation and verification workbench for the 3D
// compressible Euler system in logarithmic-density variables.
//
// Subcommands: simulate | check | sample | geometry | report

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ewb/inequalities.hpp"
#include "ewb/io/foliation_file.hpp"
#include "ewb/io/reporting.hpp"
#include "ewb/io/run_config.hpp"
#include "ewb/io/snapshot_file.hpp"
#include "ewb/norms.hpp"
#include "ewb/parallel.hpp"
#include "ewb/vorticity_identities.hpp"
#include "ewb/wave_identities.hpp"

namespace fs = std::filesystem;
using namespace ewb;

namespace {

constexpr const char* kVersion = "euler-workbench 1.0.0";

constexpr int kExitConfig = 2;
constexpr int kExitHyperbolicity = 3;
constexpr int kExitBlowup = 4;
constexpr int kExitStencil = 5;
constexpr int kExitFold = 6;

std::string num(double v) { return CsvWriter::num(v); }

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

RunManifest start_manifest(const std::string& command, std::uint64_t seed,
                           const std::string& config_echo = "") {
    RunManifest m;
    m.command = command;
    m.seed = seed;
    m.config_echo = config_echo;
    m.code_version = kVersion;
    m.started_at = iso8601_now();
    return m;
}

void finish_manifest(RunManifest& m, const fs::path& dir,
                     const std::vector<fs::path>& artifacts) {
    m.finished_at = iso8601_now();
    for (const auto& a : artifacts) m.add_artifact(dir, a);
    m.write(dir / "manifest.json");
}

// ---------------------------------------------------------------- simulate

int run_simulate(const fs::path& config_path, const fs::path& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    SimConfig sim = cfg.to_sim_config();
    const double s = cfg.get_double_or("analysis.s", 2.4);
    const double s0 = cfg.get_double_or("analysis.s0", 2.2);

    fs::create_directories(out_dir);
    std::ifstream echo_in(config_path);
    std::stringstream echo;
    echo << echo_in.rdbuf();
    RunManifest manifest = start_manifest("simulate", sim.seed, echo.str());

    const fs::path snap_path = out_dir / "snapshots.eulr";
    const fs::path diag_path = out_dir / "diagnostics.csv";

    SnapshotWriter writer(snap_path, sim.grid_n, sim.grid_length, sim.eos.gamma);
    CsvWriter diag(diag_path,
                   {"time", "E", "E_l", "mass", "min_cs", "max_speed", "cfl"});

    simulate(sim, [&](const FluidState& state, const StepDiagnostics& d) {
        writer.append(state);
        const VectorField w = specific_vorticity(state, sim.eos);
        const double energy = sobolev_norm(state.rho_log(), s).value +
                              sobolev_norm_vec(state.velocity(), s) +
                              sobolev_norm_vec(w, s0);
        const double energy_low = sobolev_norm(state.rho_log(), 2.0).value +
                                  sobolev_norm_vec(state.velocity(), 2.0) +
                                  sobolev_norm_vec(w, 2.0);
        diag.row({num(d.time), num(energy), num(energy_low), num(d.mass),
                  num(d.min_cs), num(d.max_speed), num(d.cfl)});
    });
    writer.finalize();
    diag.close();
    finish_manifest(manifest, out_dir, {snap_path, diag_path});
    std::printf("simulate: wrote %s\n", snap_path.c_str());
    return 0;
}

// ------------------------------------------------------------------- check

ResidualReport run_identity(const std::string& id, const SnapshotStack& stack,
                            std::size_t t_index, int stride) {
    if (id == "div_law") return residual_divergence_law(stack.at(t_index), stack.eos());
    if (id == "w_transport") return residual_w_transport(stack, t_index, stride);
    if (id == "omega_transport") return residual_omega_transport(stack, t_index, stride);
    if (id == "curl_omega_transport") return residual_modified_curl_omega(stack, t_index, stride);
    if (id == "wave_velocity") return residual_wave_velocity(stack, t_index, stride);
    if (id == "wave_density") return residual_wave_density(stack, t_index, stride);
    if (id == "wave_vplus") return residual_wave_vplus(stack, t_index, stride);
    throw ConfigError("unknown identity: " + id);
}

const std::vector<std::string>& all_identities() {
    static const std::vector<std::string> ids = {
        "div_law",       "w_transport",  "omega_transport", "curl_omega_transport",
        "wave_velocity", "wave_density", "wave_vplus"};
    return ids;
}

int run_check(const std::string& snapshots_arg, const std::string& identities_arg,
              const fs::path& out_dir, int stride, const std::string& ratio_strides,
              int max_indices) {
    std::vector<std::string> files;
    {
        std::stringstream ss(snapshots_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) files.push_back(tok);
    }
    std::vector<std::string> ids;
    if (identities_arg == "all") {
        ids = all_identities();
    } else {
        std::stringstream ss(identities_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (std::find(all_identities().begin(), all_identities().end(), tok) ==
                all_identities().end())
                throw ConfigError("unknown identity: " + tok);
            ids.push_back(tok);
        }
    }

    fs::create_directories(out_dir);
    RunManifest manifest = start_manifest("check", 0);
    std::vector<fs::path> artifacts;

    std::vector<SnapshotStack> stacks;
    for (const auto& f : files) stacks.push_back(read_snapshot_file(f));
    if (stacks.empty()) throw ConfigError("check: no snapshot files given");
    if (stacks[0].size() < 5) throw ConfigError("check: need at least 5 snapshots");

    auto pick_indices = [&](const SnapshotStack& stack) {
        // interior indices with room for the widest stencil in use
        const int width = 8 * stride;
        std::vector<std::size_t> idx;
        const std::ptrdiff_t lo = width, hi = std::ptrdiff_t(stack.size()) - 1 - width;
        if (hi < lo) {
            idx.push_back(stack.size() / 2);
            return idx;
        }
        const int count = std::min<int>(max_indices, int(hi - lo + 1));
        if (count == 1) {
            idx.push_back(std::size_t((lo + hi) / 2));
            return idx;
        }
        for (int i = 0; i < count; ++i)
            idx.push_back(std::size_t(lo + (hi - lo) * std::int64_t(i) / (count - 1)));
        return idx;
    };

    const fs::path res_path = out_dir / "residuals.csv";
    CsvWriter res(res_path,
                  {"identity", "t_index", "t", "stride", "l2_residual",
                   "linf_residual", "reference_scale", "relative", "degenerate",
                   "term_main", "term_R1", "term_R2", "term_R3", "term_R4", "term_R5",
                   "term_R6"});

    int emitted = 0, stencil_failures = 0;

    for (const auto& id : ids) {
        const std::vector<std::size_t> indices = pick_indices(stacks[0]);
        for (std::size_t t_index : indices) {
            try {
                ResidualReport rep = run_identity(id, stacks[0], t_index, stride);
                std::map<std::string, double> terms(rep.per_term_norms.begin(),
                                                    rep.per_term_norms.end());
                auto term = [&](const char* k) {
                    return terms.count(k) ? num(terms.at(k)) : std::string();
                };
                res.row({id, std::to_string(t_index), num(rep.time),
                         std::to_string(stride), num(rep.l2_residual),
                         num(rep.linf_residual), num(rep.reference_scale),
                         num(rep.relative), rep.degenerate ? "1" : "0",
                         term("main_gradient"), term("R1"), term("R2"), term("R3"),
                         term("R4"), term("R5"), term("R6")});
                ++emitted;
            } catch (const StencilOutOfRange&) {
                ++stencil_failures;
            }
        }
    }
    res.close();
    artifacts.push_back(res_path);

    if (emitted == 0 && stencil_failures > 0) {
        std::fprintf(stderr, "check: stencil out of range for every requested index\n");
        return kExitStencil;
    }

    // companion convergence-ratio table: either a second (coarser dt_snap)
    // file, or a stride pair on the single stack
    if (!ratio_strides.empty() || stacks.size() > 1) {
        const fs::path ratio_path = out_dir / "convergence_ratios.csv";
        CsvWriter ratios(ratio_path,
                         {"identity", "t", "residual_coarse", "residual_fine", "ratio",
                          "relative_fine", "degenerate"});
        if (stacks.size() > 1) {
            const SnapshotStack& fine_stack = stacks[0];
            const SnapshotStack& coarse_stack = stacks[1];
            for (const auto& id : ids) {
                if (id == "div_law") continue;
                for (std::size_t ic : pick_indices(coarse_stack)) {
                    const double t = coarse_stack.at(ic).time();
                    std::size_t i_f = std::size_t(std::llround(
                        (t - fine_stack.at(0).time()) / fine_stack.dt_snap()));
                    if (i_f >= fine_stack.size() ||
                        std::abs(fine_stack.at(i_f).time() - t) >
                            1e-10 * std::max(1.0, std::abs(t)))
                        continue;
                    try {
                        ResidualReport rc = run_identity(id, coarse_stack, ic, stride);
                        ResidualReport rf = run_identity(id, fine_stack, i_f, stride);
                        ratios.row({id, num(t), num(rc.l2_residual),
                                    num(rf.l2_residual),
                                    num(rc.l2_residual /
                                        std::max(rf.l2_residual, 1e-300)),
                                    num(rf.relative),
                                    rc.degenerate || rf.degenerate ? "1" : "0"});
                    } catch (const StencilOutOfRange&) {
                    }
                }
            }
        } else {
            int fine = stride, coarse = 2 * stride;
            if (!ratio_strides.empty()) {
                if (std::sscanf(ratio_strides.c_str(), "%d,%d", &fine, &coarse) != 2)
                    throw ConfigError("--ratio-strides expects fine,coarse");
            }
            for (const auto& id : ids) {
                if (id == "div_law") continue;
                for (std::size_t t_index : pick_indices(stacks[0])) {
                    try {
                        ResidualReport rf = run_identity(id, stacks[0], t_index, fine);
                        ResidualReport rc = run_identity(id, stacks[0], t_index, coarse);
                        ratios.row({id, num(rf.time), num(rc.l2_residual),
                                    num(rf.l2_residual),
                                    num(rc.l2_residual /
                                        std::max(rf.l2_residual, 1e-300)),
                                    num(rf.relative),
                                    rc.degenerate || rf.degenerate ? "1" : "0"});
                    } catch (const StencilOutOfRange&) {
                    }
                }
            }
        }
        ratios.close();
        artifacts.push_back(ratio_path);
    }

    finish_manifest(manifest, out_dir, artifacts);
    std::printf("check: %d residual rows\n", emitted);
    return 0;
}

// ------------------------------------------------------------------ sample

int run_sample(const std::string& id, int n, std::uint64_t seed, int band,
               double amplitude, int grid_n, bool constant_v,
               const std::vector<std::string>& params, const fs::path& out_dir) {
    SampleParams sp;
    sp.n_samples = n;
    sp.seed = seed;
    sp.band = band;
    sp.amplitude = amplitude;
    sp.grid_n = grid_n;
    sp.constant_v = constant_v;
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--param expects key=value: " + kv);
        sp.lemma_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }

    const auto& known = inequality_ids();
    if (std::find(known.begin(), known.end(), id) == known.end())
        throw ConfigError("unknown inequality id: " + id);

    fs::create_directories(out_dir);
    RunManifest manifest = start_manifest("sample", seed);
    RatioReport rep = inequality_sample(id, sp);

    const fs::path sum_path = out_dir / ("ratio_" + id + ".csv");
    CsvWriter sum(sum_path, {"inequality", "samples", "seed", "band", "amplitude",
                             "grid_n", "max_ratio", "median_ratio",
                             "worst_sample_seed", "fail"});
    sum.row({id, std::to_string(rep.samples), std::to_string(seed),
             std::to_string(band), num(amplitude), std::to_string(grid_n),
             num(rep.max_ratio), num(rep.median_ratio),
             std::to_string(rep.worst_sample_seed), rep.fail ? "1" : "0"});
    sum.close();

    const fs::path raw_path = out_dir / ("ratio_" + id + "_samples.csv");
    CsvWriter raw(raw_path, {"sample_index", "ratio"});
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        raw.row({std::to_string(i), num(rep.ratios[i])});
    raw.close();

    finish_manifest(manifest, out_dir, {sum_path, raw_path});
    std::printf("sample %s: max_ratio %.6g median %.6g%s\n", id.c_str(), rep.max_ratio,
                rep.median_ratio, rep.fail ? " FAIL" : "");
    return rep.fail ? 1 : 0;
}

// --------------------------------------------------------------- stability

int run_stability(const fs::path& config_path, const std::string& perturb_kind,
                  int perturb_band, std::uint64_t perturb_seed, double delta,
                  double s, const fs::path& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    SimConfig sim = cfg.to_sim_config();
    fs::create_directories(out_dir);
    RunManifest manifest = start_manifest("stability", perturb_seed);

    InitialDataSpec pert{perturb_kind,
                         {{"amplitude", 1.0},
                          {"rho_amplitude", 1.0},
                          {"band", double(perturb_band)},
                          {"seed", double(perturb_seed)}}};
    StabilityResult r = stability_compare(sim, pert, delta, s);

    const fs::path csv_path = out_dir / "stability.csv";
    CsvWriter csv(csv_path, {"time", "distance", "normalized"});
    const double d0 = std::max(r.distances.front(), 1e-300);
    for (std::size_t i = 0; i < r.times.size(); ++i)
        csv.row({num(r.times[i]), num(r.distances[i]), num(r.distances[i] / d0)});
    csv.close();

    finish_manifest(manifest, out_dir, {csv_path});
    std::printf("stability: amplification %.6g over %zu samples\n", r.amplification,
                r.times.size());
    return 0;
}

// ---------------------------------------------------------------- geometry

std::vector<std::array<double, 3>> theta_lattice(const std::string& name) {
    std::vector<std::array<double, 3>> thetas;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0}) {
            std::array<double, 3> th{0.0, 0.0, 0.0};
            th[axis] = s;
            thetas.push_back(th);
        }
    if (name == "axes") return thetas;
    if (name == "axes+diagonals") {
        const double c = 1.0 / std::sqrt(3.0);
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0})
                for (double sz : {1.0, -1.0})
                    thetas.push_back({sx * c, sy * c, sz * c});
        return thetas;
    }
    throw ConfigError("unknown theta lattice: " + name);
}

int run_geometry(const fs::path& snapshots, const std::string& lattice, int r_count,
                 int rays, double s0, int time_stride, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    RunManifest manifest = start_manifest("geometry", 0);

    auto stack = std::make_shared<SnapshotStack>(read_snapshot_file(snapshots));
    if (time_stride <= 0)  // keep the spline coefficient cache bounded
        time_stride = std::max<int>(1, int((stack->size() + 32) / 33));
    if (time_stride > 1) {
        std::vector<FluidState> thin;
        for (std::size_t i = 0; i < stack->size(); i += time_stride)
            thin.push_back(stack->at(i));
        stack = std::make_shared<SnapshotStack>(std::move(thin), stack->eos());
    }
    SpacetimeMetric metric(stack);
    const double length = stack->at(0).grid().length();

    FoliationOptions opts;
    opts.rays_per_axis = rays;

    const fs::path g_path = out_dir / "g_values.csv";
    CsvWriter gcsv(g_path, {"theta_x", "theta_y", "theta_z", "r", "norm_s0",
                            "graph_residual", "null_drift"});
    const fs::path frame_path = out_dir / "frame_invariants.csv";
    CsvWriter fcsv(frame_path,
                   {"theta_x", "theta_y", "theta_z", "r", "t_index", "gram_error",
                    "cone_consistency", "max_chi", "max_mu0", "max_l_ln_sigma"});

    std::vector<FoliationGraph> graphs;
    double g_sup = 0.0;
    double worst_drift = 0.0;

    for (const auto& th : theta_lattice(lattice)) {
        const bool axis_dir =
            std::abs(std::abs(th[0]) + std::abs(th[1]) + std::abs(th[2]) - 1.0) < 1e-12;
        for (int ir = 0; ir < r_count; ++ir) {
            const double r = length * ir / r_count;
            if (!axis_dir) {
                // diagonal directions: ray and null-constraint diagnostics only
                // (graph reconstruction relies on the periodic transverse lattice
                // that axis directions provide)
                std::vector<double> times;
                for (std::size_t i = 0; i < stack->size(); ++i)
                    times.push_back(stack->at(i).time());
                GeodesicRay ray = trace_null_geodesic(
                    metric, times.front(),
                    {r * th[0] + 0.5, r * th[1] + 1.0, r * th[2]}, th, times,
                    opts.trace);
                worst_drift = std::max(worst_drift, ray.null_drift);
                gcsv.row({num(th[0]), num(th[1]), num(th[2]), num(r), "", "",
                          num(ray.null_drift)});
                continue;
            }
            try {
                FoliationGraph graph = build_foliation(metric, th, r, opts);
                const double gnorm =
                    graph.times.size() >= 5 ? foliation_norm(graph, s0) : 0.0;
                g_sup = std::max(g_sup, gnorm);
                worst_drift = std::max(worst_drift, graph.max_null_drift);
                gcsv.row({num(th[0]), num(th[1]), num(th[2]), num(r), num(gnorm),
                          num(graph.max_graph_residual), num(graph.max_null_drift)});

                if (graph.times.size() >= 5) {
                    const std::size_t mid = graph.times.size() / 2;
                    NullFrameSlice frame = build_null_frame(graph, metric, mid);
                    ConnectionCoefficients conn =
                        second_fundamental_form(graph, metric, mid);
                    fcsv.row({num(th[0]), num(th[1]), num(th[2]), num(r),
                              std::to_string(mid), num(frame.gram_error),
                              num(frame.cone_consistency), num(conn.max_chi),
                              num(conn.max_mu0), num(conn.max_l_ln_sigma)});
                }
                graphs.push_back(std::move(graph));
            } catch (const FoldDetected& e) {
                std::fprintf(stderr, "geometry: fold detected at t = %.6g\n", e.time);
                return kExitFold;
            }
        }
    }
    gcsv.close();
    fcsv.close();

    const fs::path fol_path = out_dir / "foliation.eulr";
    write_foliation_file(fol_path, graphs);

    finish_manifest(manifest, out_dir, {g_path, frame_path, fol_path});
    std::printf("geometry: G lower bound %.6g, worst null drift %.3g\n", g_sup,
                worst_drift);
    return 0;
}

// ------------------------------------------------------------------ report

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return int(i);
        return -1;
    }
};

Csv load_csv(const fs::path& path) {
    Csv out;
    std::ifstream in(path);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cells.push_back(tok);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            out.header = cells;
            first = false;
        } else {
            out.rows.push_back(cells);
        }
    }
    return out;
}

void svg_plot(const fs::path& path, const std::string& title,
              const std::vector<double>& x, const std::vector<std::vector<double>>& ys,
              const std::vector<std::string>& labels, bool log_y) {
    const int w = 640, h = 400, ml = 70, mb = 40, mt = 30, mr = 20;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
    for (const auto& y : ys)
        for (double v : y) {
            ymin = std::min(ymin, ty(v));
            ymax = std::max(ymax, ty(v));
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double v) {
        return h - mb - (ty(v) - ymin) / (ymax - ymin) * (h - mb - mt);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2"};

    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << w / 2 << "' y='18' text-anchor='middle' font-size='14'>"
        << title << (log_y ? " (log10 y)" : "") << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='"
        << h - mb << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
        << "' stroke='black'/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", xmin);
    out << "<text x='" << ml << "' y='" << h - 20 << "' font-size='11'>" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", xmax);
    out << "<text x='" << w - mr - 30 << "' y='" << h - 20 << "' font-size='11'>" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", log_y ? std::pow(10.0, ymin) : ymin);
    out << "<text x='4' y='" << h - mb << "' font-size='11'>" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", log_y ? std::pow(10.0, ymax) : ymax);
    out << "<text x='4' y='" << mt + 10 << "' font-size='11'>" << buf << "</text>\n";

    for (std::size_t s = 0; s < ys.size(); ++s) {
        out << "<polyline fill='none' stroke='" << colors[s % 7] << "' points='";
        for (std::size_t i = 0; i < x.size() && i < ys[s].size(); ++i)
            out << px(x[i]) << "," << py(ys[s][i]) << " ";
        out << "'/>\n";
        out << "<text x='" << w - mr - 150 << "' y='" << mt + 16 * (s + 1)
            << "' font-size='11' fill='" << colors[s % 7] << "'>" << labels[s]
            << "</text>\n";
    }
    out << "</svg>\n";
}

int run_report(const fs::path& dir) {
    if (!fs::exists(dir / "manifest.json")) {
        std::fprintf(stderr, "report: %s lacks a manifest\n", dir.c_str());
        return kExitConfig;
    }
    std::ofstream summary(dir / "summary.txt");
    summary << "run report for " << dir.string() << "\n";
    std::vector<std::string> verdicts;
    auto verdict = [&](bool pass, const std::string& what) {
        verdicts.push_back(std::string(pass ? "PASS  " : "FAIL  ") + what);
    };

    if (fs::exists(dir / "diagnostics.csv")) {
        Csv d = load_csv(dir / "diagnostics.csv");
        const int ct = d.col("time"), ce = d.col("E"), cl = d.col("E_l"),
                  cm = d.col("mass");
        std::vector<double> t, e, el, mass;
        for (const auto& r : d.rows) {
            t.push_back(std::stod(r[ct]));
            e.push_back(std::stod(r[ce]));
            el.push_back(std::stod(r[cl]));
            mass.push_back(std::stod(r[cm]));
        }
        if (!t.empty()) {
            double mass_drift = 0.0;
            bool finite = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                mass_drift = std::max(mass_drift,
                                      std::abs(mass[i] - mass[0]) / std::abs(mass[0]));
                finite = finite && std::isfinite(e[i]);
            }
            verdict(finite, "energy finite along the run");
            verdict(mass_drift < 1e-8,
                    "total mass conserved (drift " + short_num(mass_drift) + ")");
            svg_plot(dir / "energy.svg", "energy functionals", t, {e, el}, {"E", "E_l"},
                     false);
            summary << "snapshots: " << t.size() << ", final t = " << t.back() << "\n";
        }
    }

    if (fs::exists(dir / "residuals.csv")) {
        Csv d = load_csv(dir / "residuals.csv");
        const int cid = d.col("identity"), ct = d.col("t"), cr = d.col("relative"),
                  cdg = d.col("degenerate");
        std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
            by_id;
        double worst = 0.0;
        for (const auto& r : d.rows) {
            const double rel = std::stod(r[cr]);
            if (r[cdg] == "0") worst = std::max(worst, rel);
            by_id[r[cid]].first.push_back(std::stod(r[ct]));
            by_id[r[cid]].second.push_back(std::max(rel, 1e-18));
        }
        verdict(worst < 1e-5,
                "identity residuals below 1e-5 (worst " + short_num(worst) + ")");
        std::vector<std::vector<double>> series;
        std::vector<std::string> labels;
        std::vector<double> t0;
        for (auto& [id, tv] : by_id) {
            if (t0.empty()) t0 = tv.first;
            if (tv.second.size() == t0.size()) {
                series.push_back(tv.second);
                labels.push_back(id);
            }
        }
        if (!t0.empty() && !series.empty())
            svg_plot(dir / "residuals.svg", "relative residuals", t0, series, labels,
                     true);
    }

    if (fs::exists(dir / "convergence_ratios.csv")) {
        Csv d = load_csv(dir / "convergence_ratios.csv");
        const int cr = d.col("ratio"), cdg = d.col("degenerate");
        double worst = 1e300;
        int counted = 0;
        for (const auto& r : d.rows) {
            if (cdg >= 0 && r[cdg] == "1") continue;  // 0 = 0 pairs carry no signal
            worst = std::min(worst, std::stod(r[cr]));
            ++counted;
        }
        if (counted > 0)
            verdict(worst >= 12.0, "stencil convergence ratios >= 12 (worst " +
                                       short_num(worst) + ")");
    }

    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("ratio_", 0) == 0 &&
            name.find("_samples") == std::string::npos) {
            Csv d = load_csv(entry.path());
            const int cm = d.col("max_ratio"), cf = d.col("fail");
            for (const auto& r : d.rows)
                verdict(r[cf] == "0" && std::isfinite(std::stod(r[cm])),
                        name + ": max ratio finite (" + r[cm] + ")");
        }
    }

    if (fs::exists(dir / "g_values.csv")) {
        Csv d = load_csv(dir / "g_values.csv");
        const int cg = d.col("norm_s0"), cd = d.col("null_drift");
        double gmax = 0.0, drift = 0.0;
        for (const auto& r : d.rows) {
            if (!r[cg].empty()) gmax = std::max(gmax, std::stod(r[cg]));
            drift = std::max(drift, std::stod(r[cd]));
        }
        verdict(drift < 1e-8, "null constraint drift below 1e-8 (worst " +
                                  short_num(drift) + ")");
        summary << "G lower bound over the sampled lattice: " << gmax << "\n";
    }
    if (fs::exists(dir / "frame_invariants.csv")) {
        Csv d = load_csv(dir / "frame_invariants.csv");
        const int cg = d.col("gram_error");
        double worst = 0.0;
        for (const auto& r : d.rows) worst = std::max(worst, std::stod(r[cg]));
        if (!d.rows.empty())
            verdict(worst < 1e-10, "null frame Gram relations to 1e-10 (worst " +
                                       short_num(worst) + ")");
    }

    summary << "\n";
    for (const auto& v : verdicts) {
        summary << v << "\n";
        std::puts(v.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral compressible Euler verification workbench"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "integrate and write snapshots");
    std::string sim_config, sim_out;
    sim->add_option("--config", sim_config, "config file")->required();
    sim->add_option("--out", sim_out, "output directory")->required();

    auto* chk = app.add_subcommand("check", "verify identities on snapshots");
    std::string chk_snapshots, chk_ids = "all", chk_out, chk_ratio_strides;
    int chk_stride = 1, chk_max_indices = 8;
    chk->add_option("--snapshots", chk_snapshots, "snapshot file (or fine,coarse pair)")
        ->required();
    chk->add_option("--identities", chk_ids, "all or comma list");
    chk->add_option("--out", chk_out, "output directory")->required();
    chk->add_option("--stride", chk_stride, "stencil stride in snapshots");
    chk->add_option("--ratio-strides", chk_ratio_strides,
                    "fine,coarse stride pair for the convergence table");
    chk->add_option("--max-indices", chk_max_indices, "time indices to sample");

    auto* smp = app.add_subcommand("sample", "stress-test a product/commutator bound");
    std::string smp_id, smp_out;
    int smp_n = 100, smp_band = 4, smp_grid = 32;
    std::uint64_t smp_seed = 1;
    double smp_amp = 1.0;
    bool smp_const_v = false;
    std::vector<std::string> smp_params;
    smp->add_option("--inequality", smp_id, "lemma id")->required();
    smp->add_option("--n", smp_n, "sample count");
    smp->add_option("--seed", smp_seed, "base seed");
    smp->add_option("--band", smp_band, "spectral band of the samples");
    smp->add_option("--amplitude", smp_amp, "field amplitude");
    smp->add_option("--grid-n", smp_grid, "grid points per axis");
    smp->add_flag("--constant-v", smp_const_v, "constant advection field");
    smp->add_option("--param", smp_params, "lemma parameter key=value");
    smp->add_option("--out", smp_out, "output directory")->required();

    auto* stb = app.add_subcommand("stability", "perturbation growth of a base flow");
    std::string stb_config, stb_kind = "random_band_limited", stb_out;
    int stb_band = 2;
    std::uint64_t stb_seed = 4;
    double stb_delta = 1e-4, stb_s = 2.4;
    stb->add_option("--config", stb_config, "base flow config")->required();
    stb->add_option("--perturb-kind", stb_kind, "perturbation generator");
    stb->add_option("--perturb-band", stb_band, "perturbation band");
    stb->add_option("--perturb-seed", stb_seed, "perturbation seed");
    stb->add_option("--delta", stb_delta, "perturbation size");
    stb->add_option("--s", stb_s, "Sobolev exponent (distance in H^{s-1})");
    stb->add_option("--out", stb_out, "output directory")->required();

    auto* geo = app.add_subcommand("geometry", "foliations, frames, G functional");
    std::string geo_snapshots, geo_lattice = "axes", geo_out;
    int geo_r = 8, geo_rays = 17;
    double geo_s0 = 2.2;
    geo->add_option("--snapshots", geo_snapshots, "snapshot file")->required();
    geo->add_option("--theta-lattice", geo_lattice, "axes or axes+diagonals");
    geo->add_option("--r-count", geo_r, "offsets per direction");
    geo->add_option("--rays", geo_rays, "transverse rays per axis");
    geo->add_option("--s0", geo_s0, "Sobolev index of the graph norm");
    int geo_tstride = 0;
    geo->add_option("--time-stride", geo_tstride,
                    "snapshot thinning (0 = auto, keeps ~33 snapshots)");
    geo->add_option("--out", geo_out, "output directory")->required();

    auto* rep = app.add_subcommand("report", "aggregate a run directory");
    std::string rep_dir;
    rep->add_option("--dir", rep_dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sim) return run_simulate(sim_config, sim_out);
        if (*chk)
            return run_check(chk_snapshots, chk_ids, chk_out, chk_stride,
                             chk_ratio_strides, chk_max_indices);
        if (*smp)
            return run_sample(smp_id, smp_n, smp_seed, smp_band, smp_amp, smp_grid,
                              smp_const_v, smp_params, smp_out);
        if (*stb)
            return run_stability(stb_config, stb_kind, stb_band, stb_seed, stb_delta,
                                 stb_s, stb_out);
        if (*geo)
            return run_geometry(geo_snapshots, geo_lattice, geo_r, geo_rays, geo_s0,
                                geo_tstride, geo_out);
        if (*rep) return run_report(rep_dir);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const HyperbolicityLost& e) {
        std::fprintf(stderr, "hyperbolicity lost at t = %.6g (min c_s = %.6g)\n", e.time,
                     e.offending_norm);
        return kExitHyperbolicity;
    } catch (const BlowupDetected& e) {
        std::fprintf(stderr, "blowup detected at t = %.6g (norm %.6g)\n", e.time,
                     e.offending_norm);
        return kExitBlowup;
    } catch (const FoldDetected& e) {
        std::fprintf(stderr, "fold detected at t = %.6g\n", e.time);
        return kExitFold;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
