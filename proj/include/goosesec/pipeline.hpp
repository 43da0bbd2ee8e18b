#pragma once

// Subscriber-side filter chain. Three arrangements:
//   MacOnly: authenticate, deliver.
//   IdsOnly: plausibility-check, deliver.
//   Hybrid:  authenticate first, plausibility-check what survives.
// A frame that fails authentication never reaches the inspector, so forged
// or floody traffic cannot poison the sequence baseline.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "goosesec/flags.hpp"
#include "goosesec/frame.hpp"
#include "goosesec/rule_ids.hpp"
#include "goosesec/secure_ext.hpp"
#include "goosesec/transmission.hpp"

namespace goosesec {

enum class PipelineMode { MacOnly, IdsOnly, Hybrid };

inline const char* to_string(PipelineMode m) {
    switch (m) {
    case PipelineMode::MacOnly: return "mac";
    case PipelineMode::IdsOnly: return "ids";
    case PipelineMode::Hybrid: return "hybrid";
    }
    return "?";
}

enum class Stage { None, Mac, Ids };

struct Verdict {
    enum class Decision { Deliver, Drop };

    Decision decision = Decision::Deliver;
    Stage stage = Stage::None; // failing stage when dropped
    std::vector<Flag> flags;

    bool delivered() const { return decision == Decision::Deliver; }
};

// Drop verdict when authentication fails, nothing when the frame is
// authentic.
inline std::optional<Verdict> mac_stage(const GooseFrame& f, const KeyStore& ks) {
    using D = Verdict::Decision;
    if (f.extension.empty())
        return Verdict{D::Drop, Stage::Mac, {Flag{FlagId::NoAuthExtension, "extension absent"}}};
    auto ext = SecurityExtension::from_bytes(
        std::span<const uint8_t>(f.extension.data(), f.extension.size()));
    if (!ext)
        return Verdict{D::Drop, Stage::Mac, {Flag{FlagId::NoAuthExtension, "extension malformed"}}};
    switch (verify(f.pdu, *ext, ks)) {
    case AuthVerdict::Forged:
        return Verdict{D::Drop, Stage::Mac, {Flag{FlagId::AuthForged, "tag mismatch"}}};
    case AuthVerdict::UnknownKey:
        return Verdict{D::Drop, Stage::Mac, {Flag{FlagId::AuthUnknownKey, "key id unknown"}}};
    case AuthVerdict::Authentic:
        break;
    }
    return std::nullopt;
}

// Single-stream chain over caller-held inspector state.
inline Verdict process_frame(const GooseFrame& f, PipelineMode mode, const KeyStore& ks,
                             StreamState& ids_state, double now,
                             const TransmissionProfile& profile) {
    using D = Verdict::Decision;

    if (mode != PipelineMode::IdsOnly) {
        if (auto drop = mac_stage(f, ks)) return std::move(*drop);
        if (mode == PipelineMode::MacOnly) return {D::Deliver, Stage::None, {}};
    }

    IdsVerdict v = inspect(ids_state, f.pdu.apdu, now, profile);
    if (!v.accepted()) return {D::Drop, Stage::Ids, std::move(v.flags)};
    return {D::Deliver, Stage::None, std::move(v.flags)};
}

// The deployed arrangement: resolves inspector state by stream key, tracks
// the last delivered TTL per stream, and exposes expiry sweeps. Frames that
// fail authentication never touch the stream table.
class SubscriberPipeline {
public:
    SubscriberPipeline(PipelineMode mode, const KeyStore& keys, TransmissionProfile profile)
        : mode_(mode), keys_(&keys), profile_(profile) {}

    Verdict process(const GooseFrame& f, double now) {
        using D = Verdict::Decision;
        if (mode_ != PipelineMode::IdsOnly) {
            if (auto drop = mac_stage(f, *keys_)) return std::move(*drop);
            if (mode_ == PipelineMode::MacOnly) return {D::Deliver, Stage::None, {}};
        }
        PerStream& ps = streams_[stream_key(f.eth.src, f.pdu)];
        IdsVerdict v = inspect(ps.state, f.pdu.apdu, now, profile_);
        if (!v.accepted()) return {D::Drop, Stage::Ids, std::move(v.flags)};
        ps.last_ttl_ms = f.pdu.apdu.time_allowed_to_live_ms;
        return {D::Deliver, Stage::None, std::move(v.flags)};
    }

    // TTL expiry pass over every tracked stream.
    std::vector<std::pair<StreamKey, Flag>> sweep(double now) {
        std::vector<std::pair<StreamKey, Flag>> out;
        for (auto& [key, ps] : streams_)
            if (auto fl = check_expiry(ps.state, now, ps.last_ttl_ms)) out.push_back({key, *fl});
        return out;
    }

    PipelineMode mode() const { return mode_; }
    size_t tracked_streams() const { return streams_.size(); }

    const StreamState* stream_state(const StreamKey& key) const {
        auto it = streams_.find(key);
        return it == streams_.end() ? nullptr : &it->second.state;
    }

private:
    struct PerStream {
        StreamState state;
        double last_ttl_ms = 0;
    };

    PipelineMode mode_;
    const KeyStore* keys_;
    TransmissionProfile profile_;
    std::map<StreamKey, PerStream> streams_;
};

struct LatencyStats {
    double avg_ms = 0;
    double max_ms = 0;
    size_t samples = 0;
    bool low_confidence = true; // under 1000 samples

    bool operator==(const LatencyStats&) const = default;
};

struct TimedFrame {
    double t_ms = 0;
    GooseFrame frame;
};

namespace detail {

// Thread CPU time: preemption by other processes does not pollute the
// per-frame cost the way wall time does.
inline double thread_time_ms() {
#if defined(CLOCK_THREAD_CPUTIME_ID)
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) * 1000.0 + static_cast<double>(ts.tv_nsec) / 1e6;
#else
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

} // namespace detail

// Per-frame processing cost of the deployed chain over a prepared stream.
// Frame times feed the inspector as virtual arrival times; the cost itself
// is thread CPU time around each call.
inline LatencyStats measure_pipeline(const std::vector<TimedFrame>& stream, PipelineMode mode,
                                     const KeyStore& ks, const TransmissionProfile& profile) {
    LatencyStats st;
    SubscriberPipeline pipeline(mode, ks, profile);
    double total_ms = 0;
    for (const auto& tf : stream) {
        double begin = detail::thread_time_ms();
        Verdict v = pipeline.process(tf.frame, tf.t_ms);
        double ms = detail::thread_time_ms() - begin;
        (void)v;
        total_ms += ms;
        if (ms > st.max_ms) st.max_ms = ms;
        ++st.samples;
    }
    if (st.samples > 0) st.avg_ms = total_ms / static_cast<double>(st.samples);
    st.low_confidence = st.samples < 1000;
    return st;
}

} // namespace goosesec
