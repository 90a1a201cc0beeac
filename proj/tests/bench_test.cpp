#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmmsat/bench.hpp"
#include "dmmsat/rng.hpp"
#include "dmmsat/solver.hpp"

using namespace dmmsat;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("dmmsat_bench_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

CampaignSpec small_spec() {
    CampaignSpec spec;
    spec.generator = {GeneratorKind::Xorsat, 16, 0.0, 0.0, 0};
    spec.instance_count = 12;
    spec.sweep = {{0.6, 1.26}};
    spec.master_seed = 404;
    spec.max_steps = 500'000;
    return spec;
}

} // namespace

TEST_CASE("campaign populates cells and pairs baseline seeds") {
    const CampaignSpec spec = small_spec();
    const CampaignResult result = run_campaign(spec, 2);
    REQUIRE(result.sizes == std::vector<std::uint32_t>{16});
    REQUIRE(result.cells.size() == 1);
    REQUIRE(result.cells[0].size() == 1);
    const CellStats& cell = result.cells[0][0];
    CHECK(cell.samples.n_inst() == 12);
    CHECK(cell.median.has_value());
    CHECK(cell.nmtts.has_value());
    CHECK(*cell.nmtts > 0.0);

    // the baseline arm reproduces a direct solve with the documented seeds
    const CellStats& base = result.baselines[0];
    for (std::size_t i = 0; i < 12; ++i) {
        GeneratorSpec gen = spec.generator;
        gen.seed = run_seed(spec.master_seed, i, 0);
        const PlantedInstance inst = generate(gen);
        SolveConfig config;
        config.params = spec.base_params;
        config.params.max_steps = spec.max_steps;
        config.seed = run_seed(spec.master_seed, i, 1);
        CHECK(solve(inst.cnf, config).result.tts == base.samples.samples[i].tts);
    }
}

TEST_CASE("a v_jump = 0 sweep point has NMTTS exactly 1") {
    CampaignSpec spec = small_spec();
    spec.sweep = {{0.4, 0.0}};
    const CampaignResult result = run_campaign(spec, 2);
    CHECK(*result.cells[0][0].nmtts == 1.0);
}

TEST_CASE("worker count does not change exported bytes") {
    const CampaignSpec spec = small_spec();
    TempDir one("w1"), four("w4");
    export_campaign(run_campaign(spec, 1), one.path);
    export_campaign(run_campaign(spec, 4), four.path);
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(one.path)) {
        const auto name = entry.path().filename();
        CHECK(slurp(one.path / name) == slurp(four.path / name));
        ++files;
    }
    CHECK(files == 4); // sweep.csv, manifest.json, point + baseline samples
}

TEST_CASE("export layout and recomputation of NMTTS from raw CSVs") {
    CampaignSpec spec = small_spec();
    spec.instance_count = 3;
    TempDir dir("layout");
    const CampaignResult result = run_campaign(spec, 2);
    export_campaign(result, dir.path);

    const std::string sweep = slurp(dir.path / "sweep.csv");
    std::size_t lines = 0;
    for (char ch : sweep) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == 2); // header + one data row
    CHECK(sweep.rfind("v_thr,v_jump,n,median_mod,median_base,nmtts,censored_mod,"
                      "censored_base,mean_jumps_mod,mean_jumps_base\n", 0) == 0);

    const TtsSampleSet mod = parse_tts_csv(slurp(dir.path / "tts_n16_p0.csv"));
    const TtsSampleSet base = parse_tts_csv(slurp(dir.path / "tts_n16_base.csv"));
    CHECK(mod.n_inst() == 3);
    CHECK(base.n_inst() == 3);
    const double recomputed = median_tts(mod) / median_tts(base);
    CHECK(recomputed == *result.cells[0][0].nmtts);

    // the nmtts column agrees with the recomputed ratio
    std::istringstream in(sweep);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::istringstream cells(row);
    std::string cell;
    for (int i = 0; i < 6; ++i) std::getline(cells, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(recomputed).epsilon(1e-12));
}

TEST_CASE("campaign spec JSON round-trips") {
    CampaignSpec spec = small_spec();
    spec.generator = {GeneratorKind::Barthel, 100, 4.3, 0.08, 0};
    spec.sizes = {100, 200};
    spec.repeats = 2;
    const CampaignSpec back = campaign_spec_from_json(campaign_spec_json(spec));
    CHECK(back == spec);

    const std::string manifest = campaign_manifest_json(spec);
    CHECK(manifest.find("\"artifact\": \"dmmsat\"") != std::string::npos);
    CHECK(manifest.find("\"version\"") != std::string::npos);
}

TEST_CASE("repeats reuse instances with fresh solver seeds") {
    CampaignSpec spec = small_spec();
    spec.instance_count = 2;
    spec.repeats = 3;
    const CampaignResult result = run_campaign(spec, 2);
    CHECK(result.cells[0][0].samples.n_inst() == 6);
    CHECK(result.baselines[0].samples.n_inst() == 6);
}

TEST_CASE("multi-size campaigns index cells by size") {
    CampaignSpec spec = small_spec();
    spec.instance_count = 4;
    spec.sizes = {8, 16};
    const CampaignResult result = run_campaign(spec, 2);
    REQUIRE(result.sizes == std::vector<std::uint32_t>{8, 16});
    CHECK(result.cells.size() == 2);
    CHECK(result.baselines.size() == 2);
    CHECK(campaign_complete(result));
    CHECK(tts_file_name(8, 0) == "tts_n8_p0.csv");
    CHECK(tts_file_name(16, std::nullopt) == "tts_n16_base.csv");
}

TEST_CASE("censoring is reported, undefined medians propagate") {
    CampaignSpec spec = small_spec();
    spec.generator = {GeneratorKind::Xorsat, 24, 0.0, 0.0, 0};
    spec.instance_count = 4;
    spec.max_steps = 5; // everything censors
    const CampaignResult result = run_campaign(spec, 2);
    CHECK(result.baselines[0].censored == 4);
    CHECK_FALSE(result.baselines[0].median.has_value());
    CHECK_FALSE(result.cells[0][0].nmtts.has_value());
    CHECK_FALSE(campaign_complete(result));

    TempDir dir("censored");
    export_campaign(result, dir.path);
    const std::string sweep = slurp(dir.path / "sweep.csv");
    CHECK(sweep.find(",,") != std::string::npos); // undefined cells stay empty
}

TEST_CASE("campaign spec validation") {
    CampaignSpec spec = small_spec();
    spec.sweep.clear();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec();
    spec.instance_count = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec();
    spec.sweep = {{1.5, 0.1}};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
