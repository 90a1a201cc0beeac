#include "dmmsat/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dmmsat/rng.hpp"
#include "dmmsat/solver.hpp"
#include "dmmsat/version.hpp"

namespace dmmsat {

namespace {

std::string shortest(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace

void CampaignSpec::validate() const {
    generator.validate();
    if (instance_count < 1)
        throw std::invalid_argument("instance_count must be >= 1");
    if (sweep.empty()) throw std::invalid_argument("sweep must be nonempty");
    for (const SweepPoint& p : sweep) {
        DmmParams probe = base_params;
        probe.v_thr = p.v_thr;
        probe.v_jump = p.v_jump;
        probe.validate();
    }
    for (std::uint32_t s : sizes)
        if (s < 4) throw std::invalid_argument("sizes must all be >= 4");
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be >= 1");
    base_params.validate();
}

CampaignResult run_campaign(const CampaignSpec& spec, unsigned workers) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();

    CampaignResult result;
    result.spec = spec;
    result.sizes = spec.sizes.empty() ? std::vector<std::uint32_t>{spec.generator.n}
                                      : spec.sizes;

    const std::size_t n_sizes = result.sizes.size();
    const std::size_t n_points = spec.sweep.size();
    const std::size_t samples_per_cell =
        static_cast<std::size_t>(spec.instance_count) * spec.repeats;

    // tts_raw[size][point][sample]; point index n_points is the baseline.
    const std::size_t arms = n_points + (spec.baseline ? 1 : 0);
    std::vector<std::vector<std::vector<SolveResult>>> raw(n_sizes);
    for (auto& per_size : raw)
        per_size.assign(arms, std::vector<SolveResult>(samples_per_cell));

    const std::size_t n_tasks = n_sizes * spec.instance_count;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_tasks || failed.load()) return;
            const std::size_t size_idx = task / spec.instance_count;
            const std::size_t inst_idx = task % spec.instance_count;
            const std::uint64_t g =
                static_cast<std::uint64_t>(size_idx) * spec.instance_count +
                inst_idx;
            try {
                GeneratorSpec gen = spec.generator;
                gen.n = result.sizes[size_idx];
                gen.seed = run_seed(spec.master_seed, g, 0);
                const PlantedInstance inst = generate(gen);
                const ClauseTopology topo(inst.cnf);

                for (std::uint32_t r = 0; r < spec.repeats; ++r) {
                    SolveConfig config;
                    config.params = spec.base_params;
                    config.params.max_steps = spec.max_steps;
                    config.seed = run_seed(spec.master_seed, g, 1 + r);
                    const std::size_t sample = inst_idx * spec.repeats + r;

                    for (std::size_t p = 0; p < n_points; ++p) {
                        config.params.v_thr = spec.sweep[p].v_thr;
                        config.params.v_jump = spec.sweep[p].v_jump;
                        raw[size_idx][p][sample] =
                            solve(inst.cnf, topo, config).result;
                    }
                    if (spec.baseline) {
                        config.params.v_thr = 0.0;
                        config.params.v_jump = 0.0;
                        raw[size_idx][n_points][sample] =
                            solve(inst.cnf, topo, config).result;
                    }
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = e.what();
                failed.store(true);
                return;
            }
        }
    };

    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_tasks)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error("campaign failed: " + error_message);

    auto summarize = [&](const std::vector<SolveResult>& runs) {
        CellStats cell;
        double jump_sum = 0.0;
        for (const SolveResult& r : runs) {
            cell.samples.add(r.tts, !r.solved);
            cell.censored += r.solved ? 0 : 1;
            jump_sum += static_cast<double>(r.jumps);
        }
        cell.mean_jumps = jump_sum / static_cast<double>(runs.size());
        try {
            cell.median = median_tts(cell.samples);
        } catch (const MedianUndefined&) {
            cell.median = std::nullopt;
        }
        return cell;
    };

    result.cells.resize(n_sizes);
    result.baselines.reserve(spec.baseline ? n_sizes : 0);
    for (std::size_t s = 0; s < n_sizes; ++s) {
        std::optional<double> base_median;
        if (spec.baseline) {
            CellStats base = summarize(raw[s][n_points]);
            base_median = base.median;
            result.baselines.push_back(std::move(base));
        }
        result.cells[s].reserve(n_points);
        for (std::size_t p = 0; p < n_points; ++p) {
            CellStats cell = summarize(raw[s][p]);
            if (cell.median && base_median)
                cell.nmtts = *cell.median / *base_median;
            result.cells[s].push_back(std::move(cell));
        }
    }

    result.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
}

bool campaign_complete(const CampaignResult& result) {
    for (const CellStats& b : result.baselines)
        if (!b.median) return false;
    for (const auto& per_size : result.cells)
        for (const CellStats& c : per_size)
            if (!c.median) return false;
    return true;
}

std::string tts_file_name(std::uint32_t size, std::optional<std::size_t> point_idx) {
    std::ostringstream name;
    name << "tts_n" << size << '_';
    if (point_idx)
        name << 'p' << *point_idx;
    else
        name << "base";
    name << ".csv";
    return name.str();
}

namespace {

const char* kind_name(GeneratorKind kind) {
    return kind == GeneratorKind::Xorsat ? "xorsat" : "barthel";
}

GeneratorKind kind_from_name(const std::string& name) {
    if (name == "xorsat") return GeneratorKind::Xorsat;
    if (name == "barthel") return GeneratorKind::Barthel;
    throw std::invalid_argument("unknown generator kind '" + name + "'");
}

} // namespace

std::string campaign_spec_json(const CampaignSpec& spec) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generator"] = {{"kind", kind_name(spec.generator.kind)},
                      {"n", spec.generator.n},
                      {"ratio", spec.generator.ratio},
                      {"p0", spec.generator.p0}};
    j["instance_count"] = spec.instance_count;
    nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
    for (const SweepPoint& p : spec.sweep)
        sweep.push_back({{"v_thr", p.v_thr}, {"v_jump", p.v_jump}});
    j["sweep"] = sweep;
    j["baseline"] = spec.baseline;
    j["sizes"] = spec.sizes;
    j["master_seed"] = spec.master_seed;
    j["max_steps"] = spec.max_steps;
    j["repeats"] = spec.repeats;
    j["params"] = {{"alpha", spec.base_params.alpha},
                   {"beta", spec.base_params.beta},
                   {"gamma", spec.base_params.gamma},
                   {"delta", spec.base_params.delta},
                   {"epsilon", spec.base_params.epsilon},
                   {"zeta", spec.base_params.zeta},
                   {"dt", spec.base_params.dt}};
    return j.dump(2) + "\n";
}

CampaignSpec campaign_spec_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CampaignSpec spec;
    spec.generator.kind = kind_from_name(j.at("generator").at("kind"));
    spec.generator.n = j.at("generator").at("n");
    spec.generator.ratio = j.at("generator").at("ratio");
    spec.generator.p0 = j.at("generator").at("p0");
    spec.generator.seed = 0;
    spec.instance_count = j.at("instance_count");
    spec.sweep.clear();
    for (const auto& p : j.at("sweep"))
        spec.sweep.push_back({p.at("v_thr"), p.at("v_jump")});
    spec.baseline = j.at("baseline");
    spec.sizes = j.at("sizes").get<std::vector<std::uint32_t>>();
    spec.master_seed = j.at("master_seed");
    spec.max_steps = j.at("max_steps");
    spec.repeats = j.at("repeats");
    const auto& params = j.at("params");
    spec.base_params.alpha = params.at("alpha");
    spec.base_params.beta = params.at("beta");
    spec.base_params.gamma = params.at("gamma");
    spec.base_params.delta = params.at("delta");
    spec.base_params.epsilon = params.at("epsilon");
    spec.base_params.zeta = params.at("zeta");
    spec.base_params.dt = params.at("dt");
    return spec;
}

std::string campaign_manifest_json(const CampaignSpec& spec) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["artifact"] = "dmmsat";
    j["version"] = kVersion;
    j["spec"] = nlohmann::ordered_json::parse(campaign_spec_json(spec));
    return j.dump(2) + "\n";
}

void export_campaign(const CampaignResult& result,
                     const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw std::runtime_error("cannot create " + out_dir.string());

    std::ostringstream sweep;
    sweep << "v_thr,v_jump,n,median_mod,median_base,nmtts,censored_mod,"
             "censored_base,mean_jumps_mod,mean_jumps_base\n";
    for (std::size_t s = 0; s < result.sizes.size(); ++s) {
        const CellStats* base =
            result.baselines.empty() ? nullptr : &result.baselines[s];
        for (std::size_t p = 0; p < result.cells[s].size(); ++p) {
            const CellStats& cell = result.cells[s][p];
            const SweepPoint& point = result.spec.sweep[p];
            sweep << shortest(point.v_thr) << ',' << shortest(point.v_jump) << ','
                  << result.sizes[s] << ',';
            if (cell.median) sweep << shortest(*cell.median);
            sweep << ',';
            if (base && base->median) sweep << shortest(*base->median);
            sweep << ',';
            if (cell.nmtts) sweep << shortest(*cell.nmtts);
            sweep << ',' << cell.censored << ','
                  << (base ? std::to_string(base->censored) : std::string())
                  << ',' << shortest(cell.mean_jumps) << ','
                  << (base ? shortest(base->mean_jumps) : std::string()) << '\n';
        }
    }
    write_file(out_dir / "sweep.csv", sweep.str());

    for (std::size_t s = 0; s < result.sizes.size(); ++s) {
        for (std::size_t p = 0; p < result.cells[s].size(); ++p)
            write_file(out_dir / tts_file_name(result.sizes[s], p),
                       tts_csv(result.cells[s][p].samples));
        if (!result.baselines.empty())
            write_file(out_dir / tts_file_name(result.sizes[s], std::nullopt),
                       tts_csv(result.baselines[s].samples));
    }

    write_file(out_dir / "manifest.json", campaign_manifest_json(result.spec));
}

} // namespace dmmsat
