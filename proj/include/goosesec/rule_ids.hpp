#pragma once

// Stateful per-stream plausibility checks over GOOSE sequence numbers,
// arrival spacing, and rate. Rejections never update the sequence baseline,
// so one bad packet cannot drag the tracker along with it. A stream whose
// baseline is suspect (startup, rate blowout, expired TTL) stays
// desynchronized until it has been quiet for a full heartbeat gap, then the
// next arrival is adopted as the new baseline.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "goosesec/flags.hpp"
#include "goosesec/frame.hpp"
#include "goosesec/transmission.hpp"

namespace goosesec {

// Fraction of t0 tolerated as early jitter.
inline constexpr double kJitterTolerance = 0.25;

struct StreamKey {
    MacAddress src;
    uint16_t appid = 0;
    std::string go_id;

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04x", appid);
        return src.to_string() + "/" + buf + "/" + go_id;
    }

    auto operator<=>(const StreamKey&) const = default;
};

inline StreamKey stream_key(const MacAddress& src, const GoosePdu& pdu) {
    return StreamKey{src, pdu.appid, pdu.apdu.go_id};
}

struct StreamState {
    bool synchronized = false;
    bool seen_any = false;
    uint32_t last_st_num = 0;
    uint32_t last_sq_num = 0;
    double last_arrival_ms = 0;
    uint32_t expected_interval_ms = 0;
    double window_start_ms = 0;
    uint32_t window_count = 0;
    bool ttl_flagged = false;
};

struct IdsVerdict {
    enum class Decision { Accept, Reject };

    Decision decision = Decision::Accept;
    std::vector<Flag> flags;

    bool accepted() const { return decision == Decision::Accept; }
};

// Most arrivals a window may hold: one full event burst plus slack.
inline uint32_t rate_window_cap(const TransmissionProfile& p) {
    return burst_schedule_length(p) + 2;
}

namespace detail {

inline std::string seq_detail(const GooseApdu& a) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "st=%u sq=%u", a.st_num, a.sq_num);
    return buf;
}

} // namespace detail

// Adopts the packet as the stream baseline.
inline void on_resync(StreamState& s, const GooseApdu& a, double now,
                      const TransmissionProfile& p) {
    s.synchronized = true;
    s.seen_any = true;
    s.last_st_num = a.st_num;
    s.last_sq_num = a.sq_num;
    s.last_arrival_ms = now;
    s.expected_interval_ms = p.t1_ms;
    s.window_start_ms = now;
    s.window_count = 1;
    s.ttl_flagged = false;
}

inline IdsVerdict inspect(StreamState& s, const GooseApdu& a, double now,
                          const TransmissionProfile& p) {
    using D = IdsVerdict::Decision;

    if (!s.synchronized) {
        bool quiet = !s.seen_any || now - s.last_arrival_ms >= p.t1_ms;
        if (quiet) {
            on_resync(s, a, now, p);
            return {D::Accept, {Flag{FlagId::BaselineAdopted, detail::seq_detail(a)}}};
        }
        s.last_arrival_ms = now;
        return {D::Reject, {Flag{FlagId::Desynced, detail::seq_detail(a)}}};
    }

    std::vector<Flag> flags;

    if (a.st_num == s.last_st_num) {
        // Retransmissions are schedule-bound; a fresh event may arrive at
        // any moment, so spacing is only judged within an unchanged stNum.
        double min_gap = p.t0_ms * (1.0 - kJitterTolerance);
        if (now - s.last_arrival_ms < min_gap)
            flags.push_back({FlagId::TooFast, detail::seq_detail(a)});
        if (a.sq_num != s.last_sq_num + 1)
            flags.push_back({FlagId::SeqReplayOrGap, detail::seq_detail(a)});
    } else if (a.st_num == s.last_st_num + 1) {
        if (a.sq_num != 0)
            flags.push_back({FlagId::EventSeq, detail::seq_detail(a)});
    } else {
        flags.push_back({FlagId::StNumAnomaly, detail::seq_detail(a)});
    }

    // Rate window counts every arrival, accepted or not.
    if (now - s.window_start_ms >= p.t1_ms) {
        s.window_start_ms = now;
        s.window_count = 1;
    } else {
        ++s.window_count;
    }
    if (s.window_count > rate_window_cap(p)) {
        flags.push_back({FlagId::RateExceeded, detail::seq_detail(a)});
        s.synchronized = false; // baseline is no longer trustworthy
    }

    s.last_arrival_ms = now;
    s.ttl_flagged = false;

    if (!flags.empty()) return {D::Reject, std::move(flags)};

    if (a.st_num != s.last_st_num)
        s.expected_interval_ms = p.t0_ms;
    else
        s.expected_interval_ms = static_cast<uint32_t>(
            std::min<uint64_t>(2ull * s.expected_interval_ms, p.t1_ms));
    s.last_st_num = a.st_num;
    s.last_sq_num = a.sq_num;
    return {D::Accept, {}};
}

// Call periodically with the TTL carried by the last delivered packet.
// Fires once per silence episode and marks the stream desynchronized:
// the publisher is considered failed, so whatever shows up next must
// re-baseline rather than be judged against stale state.
inline std::optional<Flag> check_expiry(StreamState& s, double now, double last_ttl_ms) {
    if (!s.seen_any || !s.synchronized || s.ttl_flagged) return std::nullopt;
    if (last_ttl_ms <= 0) return std::nullopt;
    if (now - s.last_arrival_ms > last_ttl_ms) {
        s.ttl_flagged = true;
        s.synchronized = false;
        char buf[48];
        std::snprintf(buf, sizeof(buf), "silent %.0f ms", now - s.last_arrival_ms);
        return Flag{FlagId::TtlExpired, buf};
    }
    return std::nullopt;
}

} // namespace goosesec
