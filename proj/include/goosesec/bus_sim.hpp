#pragma once

// Discrete-event harness. The clock is virtual (milliseconds, double);
// events at equal times run in scheduling order, so a run is a pure
// function of the scenario script.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "goosesec/frame.hpp"

namespace goosesec {

class Simulation {
public:
    double now() const { return now_; }

    void schedule(double at_ms, std::function<void()> fn) {
        if (at_ms < now_) throw std::logic_error("schedule into the past");
        q_.push(Ev{at_ms, seq_++, std::move(fn)});
    }

    // Runs every event with time <= t_end, then advances the clock to t_end.
    void run_until(double t_end_ms) {
        while (!q_.empty() && q_.top().at <= t_end_ms) {
            Ev ev = q_.top();
            q_.pop();
            now_ = ev.at;
            ev.fn();
        }
        if (t_end_ms > now_) now_ = t_end_ms;
    }

    size_t pending() const { return q_.size(); }

private:
    struct Ev {
        double at;
        uint64_t seq;
        std::function<void()> fn;

        bool operator>(const Ev& o) const {
            if (at != o.at) return at > o.at;
            return seq > o.seq;
        }
    };

    std::priority_queue<Ev, std::vector<Ev>, std::greater<>> q_;
    double now_ = 0;
    uint64_t seq_ = 0;
};

// Drop rule applied by the switch fabric, matched on source MAC within an
// active time window, optionally limited to a frame count.
struct SwitchRule {
    std::string name;
    std::optional<MacAddress> match_src;
    double from_ms = 0;
    double until_ms = std::numeric_limits<double>::infinity();
    std::optional<uint64_t> remaining;

    bool matches(const MacAddress& src, double now) const {
        if (now < from_ms || now >= until_ms) return false;
        if (remaining && *remaining == 0) return false;
        if (match_src && !(*match_src == src)) return false;
        return true;
    }
};

struct HopRecord {
    double t_ms = 0;
    std::string origin;
    std::string src;
    std::string dst;
    size_t size = 0;
    bool forwarded = false;
    std::string rule; // drop rule name when not forwarded
    std::vector<std::string> delivered_to;

    std::string to_line() const {
        char head[64];
        std::snprintf(head, sizeof(head), "t=%.3f", t_ms);
        std::string out = head;
        out += " origin=" + origin + " src=" + src + " dst=" + dst;
        out += " len=" + std::to_string(size);
        if (forwarded) {
            out += " fwd=[";
            for (size_t i = 0; i < delivered_to.size(); ++i) {
                if (i) out += ",";
                out += delivered_to[i];
            }
            out += "]";
        } else {
            out += " drop=" + rule;
        }
        return out;
    }
};

// Shared medium with switch semantics: every published frame either hits a
// drop rule or is delivered to all attached endpoints except the origin.
// Taps observe forwarded frames at publish time.
class ProcessBus {
public:
    explicit ProcessBus(Simulation& sim) : sim_(sim) {}

    using Handler = std::function<void(const Bytes&, const std::string& origin, double now)>;
    using Tap = std::function<void(const Bytes&, double now)>;

    void attach(const std::string& name, Handler handler) {
        endpoints_.push_back({name, std::move(handler)});
    }

    void add_tap(Tap tap) { taps_.push_back(std::move(tap)); }
    void add_rule(SwitchRule rule) { rules_.push_back(std::move(rule)); }

    void publish(const std::string& origin, const Bytes& frame) {
        double now = sim_.now();
        HopRecord rec;
        rec.t_ms = now;
        rec.origin = origin;
        rec.size = frame.size();
        MacAddress src{}, dst{};
        if (frame.size() >= 12) {
            std::copy(frame.begin(), frame.begin() + 6, dst.octets.begin());
            std::copy(frame.begin() + 6, frame.begin() + 12, src.octets.begin());
        }
        rec.src = src.to_string();
        rec.dst = dst.to_string();

        for (auto& rule : rules_) {
            if (rule.matches(src, now)) {
                if (rule.remaining) --*rule.remaining;
                rec.forwarded = false;
                rec.rule = rule.name;
                log_.push_back(std::move(rec));
                return;
            }
        }

        rec.forwarded = true;
        for (const auto& ep : endpoints_)
            if (ep.name != origin) rec.delivered_to.push_back(ep.name);
        log_.push_back(rec);

        for (auto& tap : taps_) tap(frame, now);
        sim_.schedule(now + propagation_delay_ms, [this, origin, frame] {
            double at = sim_.now();
            for (auto& ep : endpoints_)
                if (ep.name != origin) ep.handler(frame, origin, at);
        });
    }

    const std::vector<HopRecord>& log() const { return log_; }

    uint64_t forwarded_count() const {
        uint64_t n = 0;
        for (const auto& r : log_)
            if (r.forwarded) ++n;
        return n;
    }

    uint64_t dropped_count() const {
        uint64_t n = 0;
        for (const auto& r : log_)
            if (!r.forwarded) ++n;
        return n;
    }

    double propagation_delay_ms = 0;

private:
    struct Endpoint {
        std::string name;
        Handler handler;
    };

    Simulation& sim_;
    std::vector<Endpoint> endpoints_;
    std::vector<Tap> taps_;
    std::vector<SwitchRule> rules_;
    std::vector<HopRecord> log_;
};

} // namespace goosesec
