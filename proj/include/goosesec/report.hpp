#pragma once

// Human- and machine-readable renderings of scenario and bench results.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "goosesec/scenario.hpp"

namespace goosesec {

// Console-style line for one subscriber verdict.
inline std::string verdict_trace_line(const VerdictRecord& r, PipelineMode mode) {
    const std::string dst = r.dst.to_string();
    const std::string src = r.src.to_string();
    const bool ok = r.verdict.delivered();
    switch (mode) {
    case PipelineMode::MacOnly:
        return ok ? "✓ GOOSE (" + dst + ") MAC Auth PASS. Forwarding packet from " + src
                  : "✗ GOOSE (" + dst + ") MAC Auth FAIL. Dropping packet from " + src;
    case PipelineMode::IdsOnly:
        return ok ? "✓ GOOSE (" + dst + ") IDS PASS. Forwarding packet from " + src
                  : "✗ GOOSE IDS (" + dst + ") FAIL. Dropping packet from " + src;
    case PipelineMode::Hybrid:
        if (ok) return "✓ GOOSE (" + dst + ") Auth + IDS PASS. Forwarding packet from " + src;
        return r.verdict.stage == Stage::Mac
                   ? "✗ GOOSE (" + dst + ") MAC Auth FAIL. Dropping packet from " + src
                   : "✗ GOOSE IDS (" + dst + ") FAIL. Dropping packet from " + src;
    }
    return {};
}

inline std::vector<std::string> render_cell_trace(const CellResult& cell) {
    std::vector<std::string> out;
    out.reserve(cell.verdicts.size());
    for (const auto& r : cell.verdicts) out.push_back(verdict_trace_line(r, cell.mode));
    return out;
}

inline std::map<std::string, uint64_t> flag_counts(const CellResult& cell) {
    std::map<std::string, uint64_t> out;
    for (const auto& fe : cell.flag_events) ++out[flag_name(fe.id)];
    return out;
}

inline std::string render_report_text(const ScenarioReport& report, const ScenarioConfig& cfg) {
    auto pf = [](bool b) { return b ? "P" : "F"; };
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "GOOSE attack / mitigation matrix (seed %llu, t0 %u ms, t1 %u ms)\n\n",
                  static_cast<unsigned long long>(report.seed), report.profile.t0_ms,
                  report.profile.t1_ms);
    out += buf;

    std::snprintf(buf, sizeof(buf), "%-10s", "pipeline");
    out += buf;
    for (AttackKind a : cfg.run.attacks) {
        std::snprintf(buf, sizeof(buf), "  %-12s", to_string(a));
        out += buf;
    }
    out += "\n";
    for (PipelineMode m : cfg.run.modes) {
        std::snprintf(buf, sizeof(buf), "%-10s", to_string(m));
        out += buf;
        for (AttackKind a : cfg.run.attacks) {
            const CellResult* c = report.find(m, a);
            std::string cellTxt = c ? std::string(pf(c->detection)) + "/" + pf(c->mitigation) : "-";
            std::snprintf(buf, sizeof(buf), "  %-12s", cellTxt.c_str());
            out += buf;
        }
        out += "\n";
    }
    out += "\ncells: detection/mitigation (P pass, F fail)\n\n";

    for (const auto& c : report.cells) {
        std::snprintf(buf, sizeof(buf),
                      "[%s/%s] detection=%s mitigation=%s emitted=%llu delivered=%llu "
                      "rejected=%llu injected=%llu attack_delivered=%llu attack_rejected=%llu "
                      "switch_dropped=%llu alarms=%llu\n",
                      to_string(c.mode), to_string(c.attack), pf(c.detection), pf(c.mitigation),
                      static_cast<unsigned long long>(c.ev.legit_emitted),
                      static_cast<unsigned long long>(c.ev.legit_delivered),
                      static_cast<unsigned long long>(c.ev.legit_rejected),
                      static_cast<unsigned long long>(c.ev.attack_injected),
                      static_cast<unsigned long long>(c.ev.attack_delivered),
                      static_cast<unsigned long long>(c.ev.attack_rejected),
                      static_cast<unsigned long long>(c.ev.switch_dropped),
                      static_cast<unsigned long long>(c.ev.alarms_after_trigger));
        out += buf;
        for (const auto& [name, count] : flag_counts(c)) {
            std::snprintf(buf, sizeof(buf), "    %s x%llu\n", name.c_str(),
                          static_cast<unsigned long long>(count));
            out += buf;
        }
    }
    return out;
}

inline std::string render_report_json(const ScenarioReport& report, const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["report"] = "goose-security-matrix";
    j["seed"] = report.seed;
    j["profile"] = {{"t0_ms", report.profile.t0_ms},
                    {"t1_ms", report.profile.t1_ms},
                    {"ttl_multiplier", report.profile.ttl_multiplier}};
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cells) {
        nlohmann::ordered_json cell;
        cell["mode"] = to_string(c.mode);
        cell["attack"] = to_string(c.attack);
        cell["detection"] = c.detection ? "pass" : "fail";
        cell["mitigation"] = c.mitigation ? "pass" : "fail";
        cell["trigger_at_ms"] = c.trigger_at_ms;
        cell["evidence"] = {{"legit_emitted", c.ev.legit_emitted},
                            {"legit_delivered", c.ev.legit_delivered},
                            {"legit_rejected", c.ev.legit_rejected},
                            {"attack_injected", c.ev.attack_injected},
                            {"attack_delivered", c.ev.attack_delivered},
                            {"attack_rejected", c.ev.attack_rejected},
                            {"switch_dropped", c.ev.switch_dropped},
                            {"decode_errors", c.ev.decode_errors},
                            {"alarms_after_trigger", c.ev.alarms_after_trigger}};
        nlohmann::ordered_json flags = nlohmann::ordered_json::object();
        for (const auto& [name, count] : flag_counts(c)) flags[name] = count;
        cell["flags"] = flags;
        j["cells"].push_back(cell);
    }
    (void)cfg;
    return j.dump(2) + "\n";
}

inline std::string render_bench_text(const BenchReport& b) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "pipeline latency over %llu frames\n\n",
                  static_cast<unsigned long long>(b.packets));
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-8s  %-12s  %-12s  %-8s\n", "pipeline", "avg_ms", "max_ms",
                  "samples");
    out += buf;
    auto row = [&](const char* name, const LatencyStats& st) {
        std::snprintf(buf, sizeof(buf), "%-8s  %-12.6f  %-12.6f  %-8llu%s\n", name, st.avg_ms,
                      st.max_ms, static_cast<unsigned long long>(st.samples),
                      st.low_confidence ? "  (low confidence)" : "");
        out += buf;
    };
    row("mac", b.mac);
    row("ids", b.ids);
    row("hybrid", b.hybrid);
    return out;
}

inline std::string render_bench_json(const BenchReport& b) {
    nlohmann::ordered_json j;
    j["report"] = "goose-pipeline-bench";
    j["packets"] = b.packets;
    auto stats = [](const LatencyStats& st) {
        return nlohmann::ordered_json{{"avg_ms", st.avg_ms},
                                      {"max_ms", st.max_ms},
                                      {"samples", st.samples},
                                      {"low_confidence", st.low_confidence}};
    };
    j["mac"] = stats(b.mac);
    j["ids"] = stats(b.ids);
    j["hybrid"] = stats(b.hybrid);
    return j.dump(2) + "\n";
}

} // namespace goosesec
