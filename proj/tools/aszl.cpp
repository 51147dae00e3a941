#include <CLI11.hpp>

#include <iostream>

#include "aszl/experiment.hpp"
#include "aszl/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"aszl: Artin-Schreier L-function zero statistics at desk scale"};
    app.require_subcommand(1);

    std::string config_path, cache_dir, report_path, level = "fast";
    int workers = 0;
    int64_t seed = -1;

    auto* run_cmd = app.add_subcommand("run", "execute an experiment from a config file");
    run_cmd->add_option("config", config_path, "plain-text key = value config file")->required();
    run_cmd->add_option("--workers", workers, "worker thread count override");
    run_cmd->add_option("--cache-dir", cache_dir, "result cache directory override");
    run_cmd->add_option("--seed", seed, "subsampling seed override");

    auto* report_cmd = app.add_subcommand("report", "summarize stored result records");
    report_cmd->add_option("path", report_path, "record file or cache directory")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    verify_cmd->add_option("--level", level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    verify_cmd->add_option("--workers", workers, "worker thread count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            aszl::ExperimentConfig cfg = aszl::ExperimentConfig::parse_file(config_path);
            if (workers > 0) cfg.workers = workers;
            if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
            if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
            aszl::ResultRecord rec = aszl::run(cfg);
            if (rec.replayed_from_cache)
                std::cerr << "(replayed from cache " << cfg.cache_dir << "/" << rec.config_hash
                          << ")\n";
            std::cout << rec.to_csv();
            return 0;
        }
        if (report_cmd->parsed()) {
            return aszl::report(report_path, std::cout);
        }
        const auto results = aszl::run_acceptance(level == "fast", workers > 0 ? workers : 1);
        const int failures = aszl::print_acceptance(results, std::cout);
        return failures == 0 ? 0 : 4;
    } catch (const aszl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const aszl::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const aszl::NumericCertificationError& e) {
        std::cerr << "numeric certification failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
