#pragma once

#include <iosfwd>
#include <map>

#include "aszl/zerostats.hpp"

namespace aszl {

inline constexpr const char* kToolVersion = "aszl 0.1.0";

// Plain-text key = value configuration ('#' comments). Unknown keys are
// rejected so typos in math parameters cannot pass silently.
struct ExperimentConfig {
    std::string experiment;  // verify-identities | density-1level | density-2level |
                             // trace-means | lattice-suite | chebotarev-count
    uint32_t p = 3;
    uint32_t k = 1;
    uint32_t psi_m = 1;
    std::string family;  // ordinary-Hg | ordinary-fixed-g | polynomial-Fd |
                         // polynomial-AS0 | odd-polynomial
    std::vector<int> d_list;
    std::vector<std::vector<int64_t>> g_list;  // ascending coefficients
    std::string shape = "triangle";
    double beta = 0.75;
    double plateau = 0.5;
    double tolerance = 1e-8;
    uint64_t budget = kDefaultEnumerationCap;
    uint64_t seed = 1;
    int workers = 1;
    int r_max = 6;
    int count = 200;  // lattice-suite size
    std::string out_dir;
    std::string cache_dir = "aszl-cache";

    static ExperimentConfig parse_file(const std::string& path);
    static ExperimentConfig parse_text(const std::string& text);
    void validate() const;               // throws ConfigError
    std::string canonical_text() const;  // sorted key = value lines
    std::string hash() const;            // FNV-1a 64-bit over the canonical text
};

// Deterministic result payload. Rows are ordered maps of printed values, so
// identical configs reproduce byte-identical JSON; wall-clock timings live in
// the CSV only.
struct ResultRecord {
    std::string config_hash;
    std::string tool_version = kToolVersion;
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::map<std::string, std::string>> rows;
    std::vector<double> row_seconds;  // parallel to rows; CSV column
    bool replayed_from_cache = false;

    std::string to_json() const;
    std::string to_csv() const;
    static ResultRecord from_json(const std::string& text);
};

// Executes the experiment; identical configs replay the cached record.
// Throws ConfigError / BudgetExceeded / NumericCertificationError.
ResultRecord run(const ExperimentConfig& cfg);

// Summarizes a record file or a directory tree of cache entries; returns a
// process exit code (0 ok, 2 missing/corrupt) and writes a plot-ready CSV
// next to the inputs when given a directory.
int report(const std::string& path, std::ostream& out);

// fixed-order parallel map: results indexed by input position
void parallel_for_indexed(size_t n, int workers, const std::function<void(size_t)>& fn);

}  // namespace aszl
