// SPDX-License-Identifier: Apache-2.0
//
// risbeam - link-level simulator for RIS-aided mmWave/THz MIMO systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "risbeam/experiment.hpp"

using risbeam::Band;
using risbeam::ExperimentConfig;
using risbeam::ExperimentRecord;
using risbeam::Method;

namespace {

// Scratch file that removes itself; contents written at construction.
struct TempFile
{
    std::filesystem::path path;

    explicit TempFile(const std::string &stem, const std::string &contents = "")
        : path(std::filesystem::temp_directory_path() / stem)
    {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

std::vector<std::string> read_lines(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

// Down-scaled configuration that keeps a harness test under a second
ExperimentConfig tiny_config()
{
    ExperimentConfig cfg;
    cfg.tx = {2, 2};
    cfg.rx = {2, 2};
    cfg.ris = {4, 4};
    cfg.n_path_ts = 2;
    cfg.n_path_sr = 2;
    cfg.n_streams = 2;
    cfg.n_rank = 1;
    cfg.k = 2;
    cfg.ptx_dbm_sweep = {20.0, 30.0, 40.0};
    cfg.trials = 12;
    cfg.seed = 7;
    return cfg;
}

const ExperimentRecord &find_record(const std::vector<ExperimentRecord> &records,
                                    double ptx_dbm, Method method)
{
    for (const auto &r : records)
        if (r.ptx_dbm == ptx_dbm && r.method == method)
            return r;
    REQUIRE(false);
    return records.front();
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("power unit conversions round trip")
{
    CHECK(risbeam::dbm_to_mw(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(risbeam::dbm_to_mw(30.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(risbeam::dbm_to_mw(-91.0) ==
          doctest::Approx(std::pow(10.0, -9.1)).epsilon(1e-12));
    for (double dbm : {-120.0, -3.5, 0.0, 17.25, 46.0})
        CHECK(risbeam::mw_to_dbm(risbeam::dbm_to_mw(dbm)) ==
              doctest::Approx(dbm).epsilon(1e-9));
}

TEST_CASE("band and method names map both ways")
{
    CHECK(risbeam::band_name(Band::mmwave28) == "mmwave28");
    CHECK(risbeam::band_name(Band::thz142) == "thz142");
    CHECK(risbeam::parse_band("mmwave28") == Band::mmwave28);
    CHECK(risbeam::parse_band("thz142") == Band::thz142);
    CHECK_THROWS_WITH_AS((void)risbeam::parse_band("fm"),
                         doctest::Contains("mmwave28"), std::invalid_argument);

    CHECK(risbeam::method_name(Method::proposed) == "proposed");
    CHECK(risbeam::method_name(Method::random_ris) == "random_ris");
    CHECK(risbeam::method_name(Method::exhaustive_oracle) == "exhaustive_oracle");
}

TEST_CASE("config files override defaults")
{
    const TempFile file("risbeam_cfg_full.cfg",
                        "# sweep description\n"
                        "band = thz142\n"
                        "n_tx = 4x2\n"
                        "n_rx = 2x2\n"
                        "ris = 4x4   # square surface\n"
                        "n_path_ts = 2\n"
                        "n_path_sr = 3\n"
                        "n_streams = 2\n"
                        "n_rank = 2\n"
                        "k = 2\n"
                        "d_ts_m = 12.5\n"
                        "d_sr_m = 7.25\n"
                        "noise_dbm = -80\n"
                        "ptx_dbm_sweep = 10, 15, 20\n"
                        "trials = 17\n"
                        "seed = 99\n"
                        "shadowing = off\n"
                        "pilot_noise = false\n"
                        "threads = 2\n");
    const ExperimentConfig cfg = risbeam::load_config(file.path.string());
    CHECK(cfg.band == Band::thz142);
    CHECK(cfg.tx.horiz == 4);
    CHECK(cfg.tx.vert == 2);
    CHECK(cfg.rx.horiz == 2);
    CHECK(cfg.rx.vert == 2);
    CHECK(cfg.ris.horiz == 4);
    CHECK(cfg.ris.vert == 4);
    CHECK(cfg.n_path_ts == 2);
    CHECK(cfg.n_path_sr == 3);
    CHECK(cfg.n_streams == 2);
    CHECK(cfg.n_rank == 2);
    CHECK(cfg.k == 2);
    CHECK(cfg.d_ts_m == 12.5);
    CHECK(cfg.d_sr_m == 7.25);
    CHECK(cfg.noise_dbm == -80.0);
    CHECK(cfg.ptx_dbm_sweep == std::vector<double>{10.0, 15.0, 20.0});
    CHECK(cfg.trials == 17);
    CHECK(cfg.seed == 99);
    CHECK_FALSE(cfg.shadowing);
    CHECK_FALSE(cfg.pilot_noise);
    CHECK(cfg.threads == 2);
}

TEST_CASE("absent keys keep their defaults")
{
    const TempFile file("risbeam_cfg_sparse.cfg", "trials = 3\n");
    const ExperimentConfig cfg = risbeam::load_config(file.path.string());
    const ExperimentConfig defaults;
    CHECK(cfg.trials == 3);
    CHECK(cfg.band == defaults.band);
    CHECK(cfg.seed == defaults.seed);
    CHECK(cfg.ptx_dbm_sweep == defaults.ptx_dbm_sweep);
    CHECK(cfg.shadowing == defaults.shadowing);
}

TEST_CASE("config parser rejects bad input")
{
    SUBCASE("unknown key is named")
    {
        const TempFile file("risbeam_cfg_unknown.cfg", "trails = 10\n");
        CHECK_THROWS_WITH_AS((void)risbeam::load_config(file.path.string()),
                             doctest::Contains("trails"), std::invalid_argument);
    }
    SUBCASE("invalid band names the valid ones")
    {
        const TempFile file("risbeam_cfg_band.cfg", "band = uhf\n");
        CHECK_THROWS_WITH_AS((void)risbeam::load_config(file.path.string()),
                             doctest::Contains("thz142"), std::invalid_argument);
    }
    SUBCASE("malformed geometry")
    {
        const TempFile file("risbeam_cfg_geom.cfg", "n_tx = 4by2\n");
        CHECK_THROWS_AS((void)risbeam::load_config(file.path.string()),
                        std::invalid_argument);
    }
    SUBCASE("missing file")
    {
        CHECK_THROWS_AS((void)risbeam::load_config("/nonexistent/risbeam.cfg"),
                        std::exception);
    }
}

TEST_CASE("config validation names the offending field")
{
    ExperimentConfig cfg = tiny_config();
    CHECK_NOTHROW(risbeam::validate_config(cfg));

    SUBCASE("trials")
    {
        cfg.trials = 0;
        CHECK_THROWS_WITH_AS(risbeam::validate_config(cfg),
                             doctest::Contains("trials"), std::invalid_argument);
    }
    SUBCASE("sweep")
    {
        cfg.ptx_dbm_sweep.clear();
        CHECK_THROWS_WITH_AS(risbeam::validate_config(cfg),
                             doctest::Contains("ptx_dbm_sweep"), std::invalid_argument);
    }
    SUBCASE("reconstruction rank above sampled entries")
    {
        cfg.n_rank = cfg.k + 1;
        CHECK_THROWS_WITH_AS(risbeam::validate_config(cfg),
                             doctest::Contains("n_rank"), std::invalid_argument);
    }
    SUBCASE("streams above panel size")
    {
        cfg.n_streams = 5; // min(N_r, N_t) is 4 here
        CHECK_THROWS_WITH_AS(risbeam::validate_config(cfg),
                             doctest::Contains("n_streams"), std::invalid_argument);
    }
    SUBCASE("threads")
    {
        cfg.threads = 0;
        CHECK_THROWS_WITH_AS(risbeam::validate_config(cfg),
                             doctest::Contains("threads"), std::invalid_argument);
    }
}

TEST_CASE("record files carry the exact header and parse back")
{
    SUBCASE("no records still writes the header")
    {
        const TempFile file("risbeam_records_empty.csv");
        risbeam::write_records({}, file.path.string());
        const auto lines = read_lines(file.path);
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "ptx_dbm,method,mean_capacity,mean_spectral_efficiency,trials,seed");
    }
    SUBCASE("rows round trip at six significant digits")
    {
        std::vector<ExperimentRecord> records;
        for (double ptx : {20.0, 25.0})
            for (Method m : {Method::proposed, Method::random_ris, Method::exhaustive_oracle})
                records.push_back({ptx, m, 12.345678 + ptx, 11.987654 + ptx, 250, 42});
        const TempFile file("risbeam_records_rows.csv");
        risbeam::write_records(records, file.path.string());
        const auto lines = read_lines(file.path);
        REQUIRE(lines.size() == 7);

        for (std::size_t i = 0; i < records.size(); ++i) {
            std::stringstream row(lines[i + 1]);
            std::string ptx, method, cap, se, trials, seed;
            std::getline(row, ptx, ',');
            std::getline(row, method, ',');
            std::getline(row, cap, ',');
            std::getline(row, se, ',');
            std::getline(row, trials, ',');
            std::getline(row, seed, ',');
            CHECK(std::stod(ptx) == records[i].ptx_dbm);
            CHECK(method == risbeam::method_name(records[i].method));
            CHECK(std::stod(cap) ==
                  doctest::Approx(records[i].mean_capacity).epsilon(1e-5));
            CHECK(std::stod(se) ==
                  doctest::Approx(records[i].mean_spectral_efficiency).epsilon(1e-5));
            CHECK(std::stoi(trials) == records[i].trials);
            CHECK(std::stoull(seed) == records[i].seed);
        }
    }
}

TEST_CASE("experiments are deterministic and ordered")
{
    ExperimentConfig cfg = tiny_config();
    cfg.trials = 4;
    const auto a = risbeam::run_experiment(cfg);
    const auto b = risbeam::run_experiment(cfg);
    REQUIRE(a.size() == cfg.ptx_dbm_sweep.size() * 3);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ptx_dbm == b[i].ptx_dbm);
        CHECK(a[i].method == b[i].method);
        CHECK(a[i].mean_capacity == b[i].mean_capacity);
        CHECK(a[i].mean_spectral_efficiency == b[i].mean_spectral_efficiency);
    }
    // Sweep-major layout with a fixed method order inside each point
    for (std::size_t p = 0; p < cfg.ptx_dbm_sweep.size(); ++p) {
        CHECK(a[3 * p].ptx_dbm == cfg.ptx_dbm_sweep[p]);
        CHECK(a[3 * p].method == Method::proposed);
        CHECK(a[3 * p + 1].method == Method::random_ris);
        CHECK(a[3 * p + 2].method == Method::exhaustive_oracle);
        CHECK(a[3 * p].trials == cfg.trials);
        CHECK(a[3 * p].seed == cfg.seed);
    }
}

TEST_CASE("worker pool size never changes the records")
{
    ExperimentConfig cfg = tiny_config();
    cfg.trials = 9;
    cfg.threads = 1;
    const auto serial = risbeam::run_experiment(cfg);
    cfg.threads = 4;
    const auto pooled = risbeam::run_experiment(cfg);
    REQUIRE(serial.size() == pooled.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].mean_capacity == pooled[i].mean_capacity);
        CHECK(serial[i].mean_spectral_efficiency == pooled[i].mean_spectral_efficiency);
    }
}

TEST_CASE("vanishing transmit power gives vanishing rates")
{
    ExperimentConfig cfg = tiny_config();
    cfg.trials = 5;
    cfg.ptx_dbm_sweep = {-300.0};
    for (const auto &r : risbeam::run_experiment(cfg)) {
        CHECK(r.mean_capacity < 1e-12);
        CHECK(r.mean_spectral_efficiency < 1e-12);
    }
}

TEST_CASE("method ordering and power monotonicity hold on a small sweep")
{
    ExperimentConfig cfg = tiny_config();
    cfg.trials = 20;
    const auto records = risbeam::run_experiment(cfg);
    double prev_cap = -1.0;
    for (double ptx : cfg.ptx_dbm_sweep) {
        const auto &prop = find_record(records, ptx, Method::proposed);
        const auto &rand = find_record(records, ptx, Method::random_ris);
        const auto &orac = find_record(records, ptx, Method::exhaustive_oracle);
        CHECK(rand.mean_capacity < prop.mean_capacity);
        CHECK(prop.mean_capacity <= orac.mean_capacity + 1e-12);
        CHECK(prop.mean_spectral_efficiency <= prop.mean_capacity + 1e-6);
        // Baselines skip estimation, so their achieved rate is the capacity
        CHECK(rand.mean_spectral_efficiency == rand.mean_capacity);
        CHECK(orac.mean_spectral_efficiency == orac.mean_capacity);
        // Shared channel draws across sweep points force monotone curves
        CHECK(prop.mean_capacity > prev_cap);
        prev_cap = prop.mean_capacity;
    }
}

TEST_CASE("per trial log reproduces the aggregated means")
{
    ExperimentConfig cfg = tiny_config();
    cfg.trials = 6;
    cfg.ptx_dbm_sweep = {25.0, 35.0};
    const TempFile log("risbeam_trials.csv");
    cfg.debug_log = log.path.string();
    const auto records = risbeam::run_experiment(cfg);

    const auto lines = read_lines(log.path);
    REQUIRE(lines.size() == 1 + 6 * 2 * 3);
    CHECK(lines[0] == "trial,ptx_dbm,method,capacity,spectral_efficiency");

    std::map<std::pair<double, std::string>, std::pair<double, double>> sums;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::stringstream row(lines[i]);
        std::string trial, ptx, method, cap, se;
        std::getline(row, trial, ',');
        std::getline(row, ptx, ',');
        std::getline(row, method, ',');
        std::getline(row, cap, ',');
        std::getline(row, se, ',');
        auto &acc = sums[{std::stod(ptx), method}];
        acc.first += std::stod(cap);
        acc.second += std::stod(se);
    }
    for (const auto &r : records) {
        const auto &acc = sums.at({r.ptx_dbm, risbeam::method_name(r.method)});
        CHECK(acc.first / cfg.trials ==
              doctest::Approx(r.mean_capacity).epsilon(1e-9));
        CHECK(acc.second / cfg.trials ==
              doctest::Approx(r.mean_spectral_efficiency).epsilon(1e-9));
    }
}

TEST_CASE("validation suite passes at reduced scale")
{
    std::ostringstream sink;
    CHECK(risbeam::run_validation(sink));
    CHECK(sink.str().find("FAIL") == std::string::npos);
    CHECK(sink.str().find("PASS") != std::string::npos);
}

TEST_CASE("oracle report prints both selections")
{
    ExperimentConfig cfg = tiny_config();
    std::ostringstream out;
    risbeam::oracle_report(cfg, out);
    const std::string text = out.str();
    CHECK(text.find("estimator") != std::string::npos);
    CHECK(text.find("exhaustive") != std::string::npos);
    CHECK(text.find("capacity") != std::string::npos);
}

} // TEST_SUITE
