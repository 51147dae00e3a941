#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aszl/experiment.hpp"

using namespace aszl;
namespace fs = std::filesystem;

namespace {
fs::path fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("aszl-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}
}  // namespace

TEST_CASE("config parsing: keys, comments, lists, unknown keys") {
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "# a comment\n"
        "experiment = density-1level\n"
        "p = 3\n"
        "family = ordinary-Hg\n"
        "g_list = 0,2,0,1; 0,1,1\n"
        "beta = 0.75\n"
        "d_list = 4, 5 ,7\n");
    CHECK(cfg.experiment == "density-1level");
    CHECK(cfg.g_list.size() == 2);
    CHECK(cfg.g_list[0] == std::vector<int64_t>{0, 2, 0, 1});
    CHECK(cfg.d_list == std::vector<int>{4, 5, 7});

    CHECK_THROWS_AS(static_cast<void>(ExperimentConfig::parse_text("no_such_key = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS(static_cast<void>(ExperimentConfig::parse_text("experiment density\n")),
                    ConfigError);
}

TEST_CASE("config validation: support bounds per theorem") {
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = density-1level\nfamily = ordinary-Hg\ng_list = 0,2,0,1\nbeta = 1.2\n");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // |tau| < 1 violated

    ExperimentConfig odd = ExperimentConfig::parse_text(
        "experiment = density-1level\nfamily = odd-polynomial\nd_list = 5\nbeta = 0.7\n");
    CHECK_THROWS_AS(odd.validate(), ConfigError);  // 1 - 1/p = 2/3 bound
    odd.beta = 0.6;
    CHECK_NOTHROW(odd.validate());

    ExperimentConfig two = ExperimentConfig::parse_text(
        "experiment = density-2level\nfamily = polynomial-Fd\nd_list = 4\nbeta = 0.7\n");
    CHECK_THROWS_AS(two.validate(), ConfigError);  // 2 beta < 4/3
    two.beta = 0.6;
    CHECK_NOTHROW(two.validate());

    CHECK_THROWS_AS(ExperimentConfig::parse_text("experiment = bogus\n").validate(), ConfigError);
}

TEST_CASE("config hash: canonical and sensitive to the seed") {
    ExperimentConfig a = ExperimentConfig::parse_text(
        "experiment = chebotarev-count\nr_max = 3\nseed = 1\n");
    ExperimentConfig b = ExperimentConfig::parse_text(
        "seed = 1\nr_max = 3\nexperiment = chebotarev-count\n");
    CHECK(a.hash() == b.hash());
    b.seed = 2;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("run: verify-identities produces exact rows and caches idempotently") {
    const fs::path cache = fresh_dir("vid");
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = verify-identities\nd_list = 2\ng_list = 0,1,1\n");
    cfg.cache_dir = cache.string();
    ResultRecord rec = run(cfg);
    CHECK_FALSE(rec.replayed_from_cache);
    REQUIRE(!rec.rows.empty());
    for (const auto& row : rec.rows) CHECK(row.at("status") == "exact");
    CHECK(fs::exists(cache / rec.config_hash / "record.json"));
    CHECK(fs::exists(cache / rec.config_hash / "table.csv"));
    CHECK(fs::exists(cache / rec.config_hash / "config.snapshot"));

    ResultRecord again = run(cfg);
    CHECK(again.replayed_from_cache);
    CHECK(again.to_json() == rec.to_json());
    fs::remove_all(cache);
}

TEST_CASE("run: density-1level record is deterministic byte for byte") {
    const std::string text =
        "experiment = density-1level\nfamily = ordinary-Hg\ng_list = 0,1,1\nbeta = 0.75\n";
    const fs::path c1 = fresh_dir("d1"), c2 = fresh_dir("d2");
    ExperimentConfig cfg1 = ExperimentConfig::parse_text(text);
    cfg1.cache_dir = c1.string();
    ExperimentConfig cfg2 = ExperimentConfig::parse_text(text);
    cfg2.cache_dir = c2.string();
    ResultRecord r1 = run(cfg1), r2 = run(cfg2);
    CHECK(r1.to_json() == r2.to_json());
    REQUIRE(r1.rows.size() == 1);
    CHECK(r1.rows[0].at("sampling") == "exact-family");
    CHECK(std::stod(r1.rows[0].at("max_rh_residual")) < 1e-9);
    // <W1> is a real number near the unitary reference at this tiny scale
    CHECK(std::stod(r1.rows[0].at("abs_diff")) < 2.0);
    fs::remove_all(c1);
    fs::remove_all(c2);
}

TEST_CASE("run: density subsampling marks the record as an estimate") {
    const fs::path cache = fresh_dir("sub");
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = density-1level\nfamily = ordinary-Hg\ng_list = 0,2,0,1\nbeta = 0.75\n"
        "budget = 5\nseed = 7\n");
    cfg.cache_dir = cache.string();
    ResultRecord rec = run(cfg);
    CHECK(rec.rows[0].at("sampling") == "estimate(seed=7)");
    CHECK(rec.rows[0].at("family_size") == "5");
    fs::remove_all(cache);
}

TEST_CASE("run: trace-means and chebotarev-count smoke") {
    const fs::path cache = fresh_dir("tm");
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = trace-means\nd_list = 2\ng_list = 0,1,1\nr_max = 3\n");
    cfg.cache_dir = cache.string();
    ResultRecord rec = run(cfg);
    for (const auto& row : rec.rows) CHECK(std::stod(row.at("abs_diff")) < 1e-10);

    ExperimentConfig cheb = ExperimentConfig::parse_text(
        "experiment = chebotarev-count\nr_max = 3\n");
    cheb.cache_dir = cache.string();
    ResultRecord crec = run(cheb);
    REQUIRE(crec.rows.size() == 3);
    CHECK(crec.rows[0].at("count") == "1");  // only x+1 stays irreducible under x -> x^2
    for (const auto& row : crec.rows)
        CHECK(std::stod(row.at("abs_gap")) <= std::stod(row.at("bound")));
    fs::remove_all(cache);
}

TEST_CASE("run: lattice-suite smoke") {
    const fs::path cache = fresh_dir("lat");
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = lattice-suite\ncount = 25\nseed = 5\n");
    cfg.cache_dir = cache.string();
    ResultRecord rec = run(cfg);
    CHECK(rec.rows[0].at("status") == "pass");
    CHECK(rec.rows[0].at("instances") == "25");
    fs::remove_all(cache);
}

TEST_CASE("report: summary over a cache tree, empty and missing paths") {
    const fs::path cache = fresh_dir("rep");
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "experiment = chebotarev-count\nr_max = 2\n");
    cfg.cache_dir = cache.string();
    run(cfg);
    std::ostringstream out;
    CHECK(report(cache.string(), out) == 0);
    CHECK(out.str().find("chebotarev-count") != std::string::npos);
    CHECK(fs::exists(cache / "combined.csv"));

    std::ostringstream out2;
    const fs::path empty = fresh_dir("rep-empty");
    CHECK(report(empty.string(), out2) == 0);
    CHECK(out2.str().find("no records") != std::string::npos);

    std::ostringstream out3;
    CHECK(report((cache / "nope").string(), out3) == 2);
    fs::remove_all(cache);
    fs::remove_all(empty);
}

TEST_CASE("run: odd-family and full-ordinary density, non-triangle shape") {
    const fs::path cache = fresh_dir("odd");
    ExperimentConfig odd = ExperimentConfig::parse_text(
        "experiment = density-1level\nfamily = odd-polynomial\nd_list = 5\n"
        "shape = raised-cosine\nbeta = 0.6\n");
    odd.cache_dir = cache.string();
    ResultRecord rec = run(odd);
    REQUIRE(rec.rows.size() == 1);
    CHECK(rec.rows[0].at("family_size") == "6");
    // symplectic reference: hat(0) - (1/2) integral of hat over [-1,1]
    const TestFunction rc = TestFunction::raised_cosine(0.6);
    CHECK(std::stod(rec.rows[0].at("rmt_ref")) ==
          doctest::Approx(rmt_reference(RmtKind::USp1Level, rc)));

    ExperimentConfig full = ExperimentConfig::parse_text(
        "experiment = density-1level\nfamily = ordinary-full\nd_list = 2\nbeta = 0.75\n");
    full.cache_dir = cache.string();
    ResultRecord frec = run(full);
    CHECK(frec.rows[0].at("q") == "3");
    CHECK(std::stod(frec.rows[0].at("max_rh_residual")) < 1e-9);
    fs::remove_all(cache);
}

TEST_CASE("csv layout matches the documented density columns") {
    ResultRecord rec;
    rec.experiment = "density-1level";
    rec.columns = {"q", "d", "family", "family_size", "mean_W", "rmt_ref", "abs_diff",
                   "max_rh_residual", "sampling"};
    rec.rows.push_back({{"q", "3"},
                        {"d", "3"},
                        {"family", "g"},
                        {"family_size", "8"},
                        {"mean_W", "1.0"},
                        {"rmt_ref", "1.0"},
                        {"abs_diff", "0.0"},
                        {"max_rh_residual", "1e-15"},
                        {"sampling", "exact-family"}});
    rec.row_seconds.push_back(0.25);
    const std::string csv = rec.to_csv();
    CHECK(csv.find("q,d,family,family_size,mean_W,rmt_ref,abs_diff,max_rh_residual,sampling,seconds") == 0);
    CHECK(csv.find(",0.25\n") != std::string::npos);
}
