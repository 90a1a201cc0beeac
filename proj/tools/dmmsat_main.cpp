#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmmsat/analysis.hpp"
#include "dmmsat/bench.hpp"
#include "dmmsat/dimacs.hpp"
#include "dmmsat/generators.hpp"
#include "dmmsat/rng.hpp"
#include "dmmsat/solver.hpp"
#include "dmmsat/svg_plot.hpp"
#include "dmmsat/version.hpp"

namespace {

// Exit codes: 0 success, 2 usage/config error, 3 unsolved or incomplete,
// 4 fit failure, 5 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsolved = 3;
constexpr int kExitFitFailure = 4;
constexpr int kExitIo = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + path.string());
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

// Minimal CSV reader for the documented plot schemas (no quoting).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

std::optional<double> cell_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad numeric cell '" + s + "'");
    return value;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool quiet = false;
};

void add_dynamics_flags(CLI::App* cmd, dmmsat::DmmParams& params,
                        double& v_jump_mult) {
    cmd->add_option("--alpha", params.alpha, "Long-memory rate");
    cmd->add_option("--beta", params.beta, "Short-memory rate");
    cmd->add_option("--gamma", params.gamma, "Short-memory setpoint");
    cmd->add_option("--delta", params.delta, "Long-memory setpoint");
    cmd->add_option("--epsilon", params.epsilon, "Short-memory margin");
    cmd->add_option("--zeta", params.zeta, "Rigidity long-memory coupling");
    cmd->add_option("--dt", params.dt, "Euler time step");
    cmd->add_option("--v-thr", params.v_thr, "Jump threshold voltage");
    cmd->add_option("--v-jump", params.v_jump, "Jump voltage (absolute)");
    cmd->add_option("--v-jump-mult", v_jump_mult,
                    "Jump voltage as a multiple of --v-thr");
    cmd->add_option("--max-steps", params.max_steps, "Step cutoff");
}

dmmsat::FitFamily family_from_name(const std::string& name) {
    if (name == "exp") return dmmsat::FitFamily::Exponential;
    if (name == "invgauss") return dmmsat::FitFamily::InverseGaussian;
    if (name == "powerlaw") return dmmsat::FitFamily::PowerLaw;
    if (name == "expscaling") return dmmsat::FitFamily::ExpScaling;
    throw CLI::ValidationError("--family",
                               "expected exp|invgauss|powerlaw|expscaling");
}

int cmd_gen(const GlobalOpts& global, const dmmsat::GeneratorSpec& spec,
            std::string out_path) {
    const dmmsat::PlantedInstance inst = dmmsat::generate(spec);
    if (out_path.empty()) {
        std::ostringstream name;
        name << (spec.kind == dmmsat::GeneratorKind::Xorsat ? "xorsat" : "barthel")
             << "_n" << spec.n << "_s" << spec.seed << ".cnf";
        out_path = (std::filesystem::path(global.out_dir) / name.str()).string();
    }
    write_file(out_path, dmmsat::write_dimacs(inst.cnf, inst.planted,
                                              {dmmsat::generator_comment(spec)}));
    if (!global.quiet)
        std::cout << dmmsat::instance_digest_hex(inst.cnf) << ' ' << out_path
                  << '\n';
    return kExitOk;
}

int cmd_solve(const GlobalOpts& global, const std::string& cnf_path,
              dmmsat::SolveConfig config, const std::string& out_path,
              const std::string& traj_path) {
    dmmsat::DimacsFile file = dmmsat::parse_dimacs(read_file(cnf_path));
    const dmmsat::SolveOutput out = dmmsat::solve(file.cnf, config);
    const std::string json = dmmsat::solve_result_json(out.result);
    if (out_path.empty()) {
        if (!global.quiet) std::cout << json;
    } else {
        write_file(out_path, json);
    }
    if (!traj_path.empty() && out.trajectory)
        write_file(traj_path, dmmsat::trajectory_csv(*out.trajectory));
    return out.result.solved ? kExitOk : kExitUnsolved;
}

void print_campaign_summary(const dmmsat::CampaignResult& result) {
    for (std::size_t s = 0; s < result.sizes.size(); ++s) {
        for (std::size_t p = 0; p < result.cells[s].size(); ++p) {
            const auto& cell = result.cells[s][p];
            std::ostringstream line;
            line << "n=" << result.sizes[s]
                 << " v_thr=" << result.spec.sweep[p].v_thr
                 << " v_jump=" << result.spec.sweep[p].v_jump << " median=";
            if (cell.median)
                line << *cell.median;
            else
                line << "undefined";
            line << " nmtts=";
            if (cell.nmtts)
                line << *cell.nmtts;
            else
                line << "undefined";
            line << " censored=" << cell.censored;
            std::cout << line.str() << '\n';
        }
    }
    std::printf("wall clock: %.2f s\n", result.wall_clock_seconds);
}

int cmd_bench(const GlobalOpts& global, dmmsat::CampaignSpec spec,
              const std::vector<double>& thr_grid,
              const std::vector<double>& jump_grid, double v_jump_mult) {
    if (!thr_grid.empty() && !jump_grid.empty())
        throw CLI::ValidationError("--v-thr-grid",
                                   "give either a v_thr grid or a v_jump grid");
    if (spec.sweep.empty()) {
        if (!jump_grid.empty()) {
            for (double j : jump_grid) spec.sweep.push_back({0.0, j});
        } else {
            std::vector<double> grid = thr_grid;
            if (grid.empty()) grid = {0.2, 0.4, 0.6, 0.8, 0.98};
            for (double t : grid) spec.sweep.push_back({t, v_jump_mult * t});
        }
    }
    const dmmsat::CampaignResult result = dmmsat::run_campaign(spec, global.workers);
    dmmsat::export_campaign(result, global.out_dir);
    if (!global.quiet) print_campaign_summary(result);
    return dmmsat::campaign_complete(result) ? kExitOk : kExitUnsolved;
}

int cmd_fit(const GlobalOpts& global, const std::string& input,
            const std::string& family, double w, double origin, bool mle,
            const std::string& out_path, const std::string& curve_path) {
    const dmmsat::TtsSampleSet set = dmmsat::parse_tts_csv(read_file(input));
    const dmmsat::Histogram h = dmmsat::histogram(set, w, origin);
    const dmmsat::FitFamily fam = family_from_name(family);
    if (fam != dmmsat::FitFamily::Exponential &&
        fam != dmmsat::FitFamily::InverseGaussian)
        throw CLI::ValidationError("--family", "expected exp|invgauss");
    const bool exponential = fam == dmmsat::FitFamily::Exponential;
    const dmmsat::FitResult fit =
        mle ? (exponential ? dmmsat::fit_exponential_mle(set, w, origin)
                           : dmmsat::fit_inverse_gaussian_mle(set, w, origin))
            : (exponential ? dmmsat::fit_exponential(h)
                           : dmmsat::fit_inverse_gaussian(h));
    const std::string json = dmmsat::fit_report_json(fit);
    if (out_path.empty()) {
        if (!global.quiet) std::cout << json;
    } else {
        write_file(out_path, json);
    }
    if (!curve_path.empty()) write_file(curve_path, dmmsat::fit_curve_csv(h, fit));
    return kExitOk;
}

int cmd_scaling(const GlobalOpts& global, dmmsat::CampaignSpec spec,
                const std::string& family) {
    const dmmsat::FitFamily fam = family_from_name(family);
    if (fam != dmmsat::FitFamily::PowerLaw && fam != dmmsat::FitFamily::ExpScaling)
        throw CLI::ValidationError("--family", "expected powerlaw|expscaling");
    const dmmsat::CampaignResult result = dmmsat::run_campaign(spec, global.workers);
    dmmsat::export_campaign(result, global.out_dir);
    if (!global.quiet) print_campaign_summary(result);

    std::ostringstream csv;
    csv << "n,median_mod,median_base,nmtts\n";
    std::vector<dmmsat::ScalingPoint> mod_points, base_points;
    bool complete = true;
    for (std::size_t s = 0; s < result.sizes.size(); ++s) {
        const auto& cell = result.cells[s][0];
        const auto& base = result.baselines[s];
        csv << result.sizes[s] << ',';
        if (cell.median) csv << *cell.median;
        csv << ',';
        if (base.median) csv << *base.median;
        csv << ',';
        if (cell.nmtts) csv << *cell.nmtts;
        csv << '\n';
        if (cell.median)
            mod_points.push_back({static_cast<double>(result.sizes[s]), *cell.median});
        if (base.median)
            base_points.push_back({static_cast<double>(result.sizes[s]), *base.median});
        complete = complete && cell.median && base.median;
    }
    const auto out_dir = std::filesystem::path(global.out_dir);
    write_file(out_dir / "scaling.csv", csv.str());

    if (mod_points.size() < 3 || base_points.size() < 3) {
        std::cerr << "too many undefined medians for a scaling fit\n";
        return kExitUnsolved;
    }
    const dmmsat::FitResult fit_mod = dmmsat::fit_scaling(mod_points, fam);
    const dmmsat::FitResult fit_base = dmmsat::fit_scaling(base_points, fam);
    nlohmann::ordered_json j;
    j["schema_version"] = dmmsat::kSchemaVersion;
    j["family"] = dmmsat::fit_family_name(fam);
    j["jumps"] = nlohmann::ordered_json::parse(dmmsat::fit_report_json(fit_mod));
    j["baseline"] = nlohmann::ordered_json::parse(dmmsat::fit_report_json(fit_base));
    write_file(out_dir / "scaling_fit.json", j.dump(2) + "\n");
    if (!global.quiet)
        std::printf("exponent with jumps %.5f, baseline %.5f\n",
                    fit_mod.params[0], fit_base.params[0]);
    return complete ? kExitOk : kExitUnsolved;
}

int cmd_plot(const std::string& kind, const std::string& input,
             const std::string& out_path) {
    const CsvTable table = parse_csv(read_file(input));
    std::string svg;
    if (kind == "histogram") {
        const int c_center = table.column("bin_center");
        const int c_count = table.column("count");
        const int c_fit = table.column("fitted_value");
        if (c_center < 0 || c_count < 0)
            throw std::invalid_argument("histogram CSV needs bin_center,count");
        std::vector<dmmsat::HistogramPlotRow> rows;
        for (const auto& r : table.rows) {
            dmmsat::HistogramPlotRow row;
            row.bin_center = *cell_double(r.at(c_center));
            row.count = *cell_double(r.at(c_count));
            if (c_fit >= 0) row.fitted = cell_double(r.at(c_fit));
            rows.push_back(row);
        }
        svg = dmmsat::svg_histogram(rows);
    } else if (kind == "trajectory") {
        if (table.header.empty() || table.header[0] != "t")
            throw std::invalid_argument("trajectory CSV needs a leading t column");
        std::vector<double> times;
        std::vector<std::string> names(table.header.begin() + 1,
                                       table.header.end());
        std::vector<std::vector<double>> series(names.size());
        for (const auto& r : table.rows) {
            times.push_back(*cell_double(r.at(0)));
            for (std::size_t i = 0; i < names.size(); ++i)
                series[i].push_back(*cell_double(r.at(i + 1)));
        }
        svg = dmmsat::svg_trajectory(times, names, series);
    } else if (kind == "sweep") {
        const int c_thr = table.column("v_thr");
        const int c_jump = table.column("v_jump");
        const int c_nmtts = table.column("nmtts");
        if (c_thr < 0 || c_jump < 0 || c_nmtts < 0)
            throw std::invalid_argument("sweep CSV needs v_thr,v_jump,nmtts");
        std::vector<dmmsat::SweepPlotRow> rows;
        for (const auto& r : table.rows) {
            const auto nm = cell_double(r.at(c_nmtts));
            if (!nm) continue; // undefined cell
            rows.push_back({*cell_double(r.at(c_thr)), *cell_double(r.at(c_jump)),
                            *nm});
        }
        svg = dmmsat::svg_sweep(rows);
    } else if (kind == "scaling") {
        const int c_n = table.column("n");
        const int c_mod = table.column("median_mod");
        const int c_base = table.column("median_base");
        if (c_n < 0 || c_mod < 0 || c_base < 0)
            throw std::invalid_argument(
                "scaling CSV needs n,median_mod,median_base");
        std::vector<dmmsat::ScalingPlotRow> rows;
        for (const auto& r : table.rows)
            rows.push_back({*cell_double(r.at(c_n)), cell_double(r.at(c_mod)),
                            cell_double(r.at(c_base))});
        svg = dmmsat::svg_scaling(rows);
    } else {
        throw CLI::ValidationError("--kind",
                                   "expected histogram|trajectory|sweep|scaling");
    }
    write_file(out_path, svg);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dmmsat: memcomputing-style continuous-time 3-SAT solver "
                 "and benchmark toolkit",
                 "dmmsat"};
    app.set_version_flag("--version", std::string("dmmsat ") + dmmsat::kVersion);
    app.set_help_all_flag("--help-all", "Print help for all subcommands");
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--seed", global.seed, "Seed (gen/solve)")
        ->capture_default_str();
    app.add_option("--out-dir", global.out_dir, "Output directory")
        ->capture_default_str();
    app.add_option("--workers", global.workers,
                   "Worker threads (bench/scaling; default: hardware)");
    app.add_flag("--quiet", global.quiet, "Suppress non-essential output");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a planted 3-SAT instance");
    gen->fallthrough();
    std::string gen_kind;
    dmmsat::GeneratorSpec gen_spec;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "xorsat|barthel")->required();
    gen->add_option("--n", gen_spec.n, "Variable count")->required();
    gen->add_option("--ratio", gen_spec.ratio, "Clause/variable ratio (barthel)");
    gen->add_option("--p0", gen_spec.p0, "Satisfied-pattern probability (barthel)")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "Output path (default <kind>_n<N>_s<seed>.cnf)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Integrate the dynamics on a DIMACS instance");
    solve_cmd->fallthrough();
    std::string solve_path, solve_out, solve_traj, solve_init = "uniform";
    std::string traj_vars;
    dmmsat::SolveConfig solve_config;
    double solve_jump_mult = 0.0;
    std::uint32_t traj_stride = 1;
    solve_cmd->add_option("cnf", solve_path, "DIMACS CNF file")->required();
    add_dynamics_flags(solve_cmd, solve_config.params, solve_jump_mult);
    solve_cmd->add_option("--init", solve_init, "uniform|all-ones")
        ->capture_default_str();
    solve_cmd->add_option("--check-every", solve_config.check_every,
                          "Steps between satisfiability checks")
        ->capture_default_str();
    solve_cmd->add_option("--out", solve_out, "Result JSON path (default stdout)");
    solve_cmd->add_option("--trajectory", solve_traj, "Trajectory CSV path");
    solve_cmd->add_option("--traj-stride", traj_stride, "Trajectory sample stride")
        ->capture_default_str();
    solve_cmd->add_option("--traj-vars", traj_vars,
                          "Comma-separated 1-based variables (default all)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a sweep campaign and export CSV/JSON");
    bench->fallthrough();
    dmmsat::CampaignSpec bench_spec;
    std::string bench_kind, bench_thr_grid, bench_jump_grid, bench_sweep;
    std::string bench_sizes;
    double bench_jump_mult = 2.1;
    bench->add_option("--kind", bench_kind, "xorsat|barthel")->required();
    bench->add_option("--n", bench_spec.generator.n, "Variable count")->required();
    bench->add_option("--ratio", bench_spec.generator.ratio, "Clause/variable ratio");
    bench->add_option("--p0", bench_spec.generator.p0, "Barthel p0")
        ->capture_default_str();
    bench->add_option("--instances", bench_spec.instance_count, "Instances per point")
        ->capture_default_str();
    bench->add_option("--sweep", bench_sweep,
                      "Explicit points 'thr:jump[,thr:jump...]'");
    bench->add_option("--v-thr-grid", bench_thr_grid,
                      "Comma-separated v_thr grid (default 0.2,0.4,0.6,0.8,0.98)");
    bench->add_option("--v-jump-mult", bench_jump_mult,
                      "v_jump = mult * v_thr for grid points")
        ->capture_default_str();
    bench->add_option("--v-jump-grid", bench_jump_grid,
                      "Comma-separated v_jump grid at v_thr = 0");
    bench->add_option("--sizes", bench_sizes, "Comma-separated N list (scaling)");
    bench->add_option("--master-seed", bench_spec.master_seed, "Master seed")
        ->capture_default_str();
    bench->add_option("--max-steps", bench_spec.max_steps, "Step cutoff")
        ->capture_default_str();
    bench->add_option("--repeats", bench_spec.repeats,
                      "Solver seeds per instance (instance reuse)")
        ->capture_default_str();
    bench->add_flag("!--no-baseline", bench_spec.baseline,
                    "Skip the unmodified baseline runs");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a TTS histogram");
    fit->fallthrough();
    std::string fit_input, fit_family, fit_out, fit_curve;
    double fit_w = 0.0, fit_origin = 0.0;
    bool fit_mle = false;
    fit->add_option("--input", fit_input, "TTS CSV (tts,censored)")->required();
    fit->add_option("--family", fit_family, "exp|invgauss")->required();
    fit->add_option("--w", fit_w, "Bin width")->required();
    fit->add_option("--origin", fit_origin, "Histogram origin")
        ->capture_default_str();
    fit->add_flag("--mle", fit_mle,
                  "Maximum-likelihood parameters instead of least squares");
    fit->add_option("--out", fit_out, "Report JSON path (default stdout)");
    fit->add_option("--curve-out", fit_curve, "Fitted-curve CSV path");

    // scaling
    auto* scaling = app.add_subcommand(
        "scaling", "Median TTS vs N for one sweep point, plus scaling fits");
    scaling->fallthrough();
    dmmsat::CampaignSpec scal_spec;
    std::string scal_kind, scal_sizes, scal_family = "powerlaw";
    double scal_thr = 0.0, scal_jump = 0.0, scal_jump_mult = 0.0;
    scaling->add_option("--kind", scal_kind, "xorsat|barthel")->required();
    scaling->add_option("--sizes", scal_sizes, "Comma-separated N list")->required();
    scaling->add_option("--ratio", scal_spec.generator.ratio, "Clause/variable ratio");
    scaling->add_option("--p0", scal_spec.generator.p0, "Barthel p0")
        ->capture_default_str();
    scaling->add_option("--instances", scal_spec.instance_count,
                        "Instances per size")
        ->capture_default_str();
    scaling->add_option("--v-thr", scal_thr, "Jump threshold")->required();
    scaling->add_option("--v-jump", scal_jump, "Jump voltage (absolute)");
    scaling->add_option("--v-jump-mult", scal_jump_mult, "v_jump = mult * v_thr");
    scaling->add_option("--family", scal_family, "powerlaw|expscaling")
        ->capture_default_str();
    scaling->add_option("--master-seed", scal_spec.master_seed, "Master seed")
        ->capture_default_str();
    scaling->add_option("--max-steps", scal_spec.max_steps, "Step cutoff")
        ->capture_default_str();

    // plot
    auto* plot = app.add_subcommand("plot", "Render a CSV as a standalone SVG");
    plot->fallthrough();
    std::string plot_kind, plot_input, plot_out;
    plot->add_option("--kind", plot_kind, "histogram|trajectory|sweep|scaling")
        ->required();
    plot->add_option("--input", plot_input, "Input CSV")->required();
    plot->add_option("--out", plot_out, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            gen_spec.kind = gen_kind == "xorsat" ? dmmsat::GeneratorKind::Xorsat
                            : gen_kind == "barthel"
                                ? dmmsat::GeneratorKind::Barthel
                                : throw std::invalid_argument(
                                      "unknown --kind '" + gen_kind + "'");
            gen_spec.seed = global.seed;
            gen_spec.validate();
            return cmd_gen(global, gen_spec, gen_out);
        }
        if (solve_cmd->parsed()) {
            if (solve_jump_mult > 0.0)
                solve_config.params.v_jump =
                    solve_jump_mult * solve_config.params.v_thr;
            solve_config.seed = global.seed;
            if (solve_init == "uniform")
                solve_config.init = dmmsat::InitMode::UniformRandom;
            else if (solve_init == "all-ones")
                solve_config.init = dmmsat::InitMode::AllOnes;
            else
                throw std::invalid_argument("unknown --init '" + solve_init + "'");
            if (!solve_traj.empty()) {
                dmmsat::TrajectorySpec ts;
                ts.stride = traj_stride;
                if (!traj_vars.empty())
                    for (double v : parse_double_list(traj_vars))
                        ts.vars.push_back(static_cast<std::uint32_t>(v) - 1);
                solve_config.trajectory = ts;
            }
            return cmd_solve(global, solve_path, solve_config, solve_out,
                             solve_traj);
        }
        if (bench->parsed() || scaling->parsed()) {
            dmmsat::CampaignSpec& spec = bench->parsed() ? bench_spec : scal_spec;
            const std::string& kind = bench->parsed() ? bench_kind : scal_kind;
            spec.generator.kind = kind == "xorsat" ? dmmsat::GeneratorKind::Xorsat
                                  : kind == "barthel"
                                      ? dmmsat::GeneratorKind::Barthel
                                      : throw std::invalid_argument(
                                            "unknown --kind '" + kind + "'");
            const std::string& sizes_str =
                bench->parsed() ? bench_sizes : scal_sizes;
            if (!sizes_str.empty()) {
                for (double s : parse_double_list(sizes_str))
                    spec.sizes.push_back(static_cast<std::uint32_t>(s));
                if (spec.generator.n == 0 && !spec.sizes.empty())
                    spec.generator.n = spec.sizes.front();
            }
            if (bench->parsed()) {
                if (!bench_sweep.empty()) {
                    std::istringstream in(bench_sweep);
                    std::string tok;
                    while (std::getline(in, tok, ',')) {
                        const std::size_t colon = tok.find(':');
                        if (colon == std::string::npos)
                            throw std::invalid_argument(
                                "--sweep entries must look like thr:jump");
                        bench_spec.sweep.push_back(
                            {std::stod(tok.substr(0, colon)),
                             std::stod(tok.substr(colon + 1))});
                    }
                }
                return cmd_bench(global, bench_spec,
                                 parse_double_list(bench_thr_grid),
                                 parse_double_list(bench_jump_grid),
                                 bench_jump_mult);
            }
            if (scal_jump_mult > 0.0) scal_jump = scal_jump_mult * scal_thr;
            scal_spec.sweep = {{scal_thr, scal_jump}};
            return cmd_scaling(global, scal_spec, scal_family);
        }
        if (fit->parsed())
            return cmd_fit(global, fit_input, fit_family, fit_w, fit_origin,
                           fit_mle, fit_out, fit_curve);
        if (plot->parsed()) return cmd_plot(plot_kind, plot_input, plot_out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const dmmsat::FitError& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        if (!e.last_params().empty()) {
            std::cerr << "last iterate:";
            for (double p : e.last_params()) std::cerr << ' ' << p;
            std::cerr << '\n';
        }
        return kExitFitFailure;
    } catch (const dmmsat::DimacsError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
