// Command-line front end: run the attack/mitigation matrix, benchmark the
// pipelines, or export simulated bus traffic as a pcap file.
//
// Exit codes: 0 success, 1 check or budget failure, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "goosesec/pcap.hpp"
#include "goosesec/report.hpp"
#include "goosesec/scenario.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out;
};

goosesec::ScenarioConfig load(const CommonOpts& opts) {
    goosesec::ScenarioConfig cfg = goosesec::load_config(opts.config_path);
    if (opts.seed) cfg.run.seed = *opts.seed;
    return cfg;
}

goosesec::KeyStore load_keys(const goosesec::ScenarioConfig& cfg) {
    auto ks = goosesec::load_keystore_file(cfg.sec.keystore_path);
    if (!ks) throw goosesec::ConfigError(ks.error());
    return ks.take();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return false;
    os << content;
    return static_cast<bool>(os);
}

int cmd_run(const CommonOpts& opts, bool check) {
    goosesec::ScenarioConfig cfg = load(opts);
    goosesec::KeyStore keys = load_keys(cfg);
    goosesec::ScenarioReport report = goosesec::run_matrix(cfg, keys);

    std::string text = goosesec::render_report_text(report, cfg);
    std::cout << text;

    if (!opts.out.empty()) {
        std::filesystem::path dir(opts.out);
        std::filesystem::create_directories(dir);
        if (!write_file(dir / "report.txt", text) ||
            !write_file(dir / "report.json", goosesec::render_report_json(report, cfg)))
            throw goosesec::ConfigError(opts.out + ": cannot write report files");
        for (const auto& cell : report.cells) {
            std::string base = std::string(goosesec::to_string(cell.mode)) + "_" +
                               goosesec::to_string(cell.attack);
            std::string trace;
            for (const auto& line : goosesec::render_cell_trace(cell)) trace += line + "\n";
            std::string buslog;
            for (const auto& line : cell.bus_log) buslog += line + "\n";
            if (!write_file(dir / (base + ".trace"), trace) ||
                !write_file(dir / (base + ".bus"), buslog))
                throw goosesec::ConfigError(opts.out + ": cannot write cell logs");
        }
        std::cout << "wrote " << (dir / "report.json").string() << "\n";
    }

    if (check) {
        auto mismatches = goosesec::golden_mismatches(report);
        if (!mismatches.empty()) {
            std::cerr << "matrix check failed:\n";
            for (const auto& m : mismatches) std::cerr << "  " << m << "\n";
            return 1;
        }
        std::cout << "matrix check passed (" << report.cells.size() << " cells)\n";
    }
    return 0;
}

int cmd_bench(const CommonOpts& opts, std::optional<double> budget_ms) {
    goosesec::ScenarioConfig cfg = load(opts);
    goosesec::KeyStore keys = load_keys(cfg);
    goosesec::BenchReport bench = goosesec::run_bench(cfg, keys);

    std::string text = goosesec::render_bench_text(bench);
    std::cout << text;

    if (!opts.out.empty()) {
        std::filesystem::path dir(opts.out);
        std::filesystem::create_directories(dir);
        if (!write_file(dir / "bench.txt", text) ||
            !write_file(dir / "bench.json", goosesec::render_bench_json(bench)))
            throw goosesec::ConfigError(opts.out + ": cannot write bench files");
        std::cout << "wrote " << (dir / "bench.json").string() << "\n";
    }

    if (budget_ms) {
        double worst = std::max({bench.mac.avg_ms, bench.ids.avg_ms, bench.hybrid.avg_ms});
        if (worst > *budget_ms) {
            std::cerr << "budget exceeded: worst avg " << worst << " ms > " << *budget_ms
                      << " ms\n";
            return 1;
        }
        std::cout << "within budget: worst avg " << worst << " ms <= " << *budget_ms << " ms\n";
    }
    return 0;
}

int cmd_capture_export(const CommonOpts& opts, const std::string& attack_name,
                       const std::string& mode_name) {
    goosesec::ScenarioConfig cfg = load(opts);
    goosesec::KeyStore keys = load_keys(cfg);

    auto kind = goosesec::attack_kind_from_string(attack_name);
    if (!kind) throw goosesec::ConfigError("unknown attack `" + attack_name + "`");
    goosesec::PipelineMode mode;
    if (mode_name == "mac") mode = goosesec::PipelineMode::MacOnly;
    else if (mode_name == "ids") mode = goosesec::PipelineMode::IdsOnly;
    else if (mode_name == "hybrid") mode = goosesec::PipelineMode::Hybrid;
    else throw goosesec::ConfigError("unknown mode `" + mode_name + "`");

    if (opts.out.empty()) throw goosesec::ConfigError("capture-export requires --out FILE.pcap");

    goosesec::CellResult cell = goosesec::run_cell(cfg, *kind, mode, keys);
    if (!goosesec::write_pcap_file(opts.out, cell.bus_capture))
        throw goosesec::ConfigError(opts.out + ": cannot write pcap");
    std::cout << "wrote " << opts.out << " (" << cell.bus_capture.size() << " frames)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GOOSE security simulator: publish, attack, filter, report"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool check = false;
    std::optional<double> budget_ms;
    std::string attack_name = "replay";
    std::string mode_name = "hybrid";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "scenario config file")->required();
        sub->add_option("--seed", opts.seed, "override the config seed");
        sub->add_option("--out", opts.out, "output directory (run/bench) or file (capture-export)");
    };

    CLI::App* run = app.add_subcommand("run", "run the attack x pipeline matrix");
    add_common(run);
    run->add_flag("--check", check, "exit 1 unless the matrix matches the expected outcomes");

    CLI::App* bench = app.add_subcommand("bench", "measure per-frame pipeline latency");
    add_common(bench);
    bench->add_option("--budget", budget_ms, "fail when any pipeline's avg latency exceeds this (ms)");

    CLI::App* cap = app.add_subcommand("capture-export", "write one cell's bus traffic as pcap");
    add_common(cap);
    cap->add_option("--attack", attack_name, "replay|masquerade|flood|drop");
    cap->add_option("--mode", mode_name, "mac|ids|hybrid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(opts, check);
        if (bench->parsed()) return cmd_bench(opts, budget_ms);
        if (cap->parsed()) return cmd_capture_export(opts, attack_name, mode_name);
    } catch (const goosesec::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
