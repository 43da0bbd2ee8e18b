#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "goosesec/frame.hpp"

namespace goosesec {

struct TransmissionProfile {
    uint32_t t0_ms = 2;      // first retransmission gap after an event
    uint32_t t1_ms = 1000;   // steady-state heartbeat gap
    uint32_t ttl_multiplier = 2;

    bool valid() const { return t0_ms > 0 && t0_ms < t1_ms && ttl_multiplier >= 2; }

    bool operator==(const TransmissionProfile&) const = default;
};

// Gaps that follow an event: t0 doubling until capped at t1.
inline std::vector<uint32_t> burst_schedule(const TransmissionProfile& p) {
    std::vector<uint32_t> out;
    uint64_t gap = p.t0_ms;
    for (;;) {
        uint32_t capped = static_cast<uint32_t>(std::min<uint64_t>(gap, p.t1_ms));
        out.push_back(capped);
        if (capped == p.t1_ms) break;
        gap *= 2;
    }
    return out;
}

inline uint32_t burst_schedule_length(const TransmissionProfile& p) {
    uint32_t n = 1;
    uint64_t gap = p.t0_ms;
    while (gap < p.t1_ms) {
        gap *= 2;
        ++n;
    }
    return n;
}

// Static APDU fields a publisher stamps on every frame.
struct ApduTemplate {
    std::string gocb_ref;
    std::string dat_set;
    std::string go_id;
    uint32_t conf_rev = 1;
    bool test = false;
    bool nds_com = false;
    uint64_t epoch_base_ms = 1'700'000'000'000ull; // virtual time 0 maps here
};

struct PublisherState {
    uint32_t st_num = 0;
    uint32_t sq_num = 0;
    uint32_t current_interval_ms = 0;
    double next_send_at_ms = 0;
};

// Produces the APDU stream of one GOOSE control block: steady heartbeats at
// t1, and after report_event() a retransmission burst that walks the
// doubling schedule back up to t1. stNum/sqNum wrap naturally at 2^32.
class Publisher {
public:
    Publisher(ApduTemplate tpl, TransmissionProfile profile, std::vector<bool> initial_data,
              double start_at_ms = 0)
        : tpl_(std::move(tpl)), profile_(profile), data_(std::move(initial_data)) {
        if (!profile_.valid())
            throw std::invalid_argument("transmission profile: need 0 < t0 < t1, ttl_multiplier >= 2");
        state_.current_interval_ms = profile_.t1_ms;
        state_.next_send_at_ms = start_at_ms;
        event_time_ms_ = tpl_.epoch_base_ms;
    }

    // Emits when `now` has reached the scheduled send time, else nothing.
    // TTL on the emitted APDU covers the gap to the next retransmission.
    std::optional<GooseApdu> tick(double now) {
        if (now < state_.next_send_at_ms) return std::nullopt;
        GooseApdu a;
        a.gocb_ref = tpl_.gocb_ref;
        a.dat_set = tpl_.dat_set;
        a.go_id = tpl_.go_id;
        a.conf_rev = tpl_.conf_rev;
        a.test = tpl_.test;
        a.nds_com = tpl_.nds_com;
        a.t_ms = event_time_ms_;
        a.st_num = state_.st_num;
        a.sq_num = state_.sq_num;
        a.time_allowed_to_live_ms = profile_.ttl_multiplier * state_.current_interval_ms;
        a.all_data = data_;

        state_.sq_num += 1;
        state_.next_send_at_ms += state_.current_interval_ms;
        state_.current_interval_ms = static_cast<uint32_t>(
            std::min<uint64_t>(2ull * state_.current_interval_ms, profile_.t1_ms));
        return a;
    }

    // New state: stNum advances, sqNum restarts, burst restarts at t0.
    void report_event(std::vector<bool> data, double now) {
        data_ = std::move(data);
        state_.st_num += 1;
        state_.sq_num = 0;
        state_.current_interval_ms = profile_.t0_ms;
        state_.next_send_at_ms = now;
        event_time_ms_ = tpl_.epoch_base_ms + static_cast<uint64_t>(now);
    }

    double next_send_at() const { return state_.next_send_at_ms; }
    const PublisherState& state() const { return state_; }
    const TransmissionProfile& profile() const { return profile_; }
    const ApduTemplate& apdu_template() const { return tpl_; }
    const std::vector<bool>& data() const { return data_; }

private:
    ApduTemplate tpl_;
    TransmissionProfile profile_;
    std::vector<bool> data_;
    PublisherState state_;
    uint64_t event_time_ms_;
};

} // namespace goosesec
