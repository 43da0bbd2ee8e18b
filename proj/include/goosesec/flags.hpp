#pragma once

#include <string>

namespace goosesec {

// Everything a filter stage can raise. BaselineAdopted is informational;
// all others count as alarms.
enum class FlagId {
    SeqReplayOrGap, // sqNum broke within an unchanged stNum
    EventSeq,       // stNum advanced but sqNum did not restart at 0
    StNumAnomaly,   // stNum regressed or jumped
    RateExceeded,   // arrivals exceeded the per-window cap
    TooFast,        // arrival gap under the minimum spacing
    TtlExpired,     // stream silent past timeAllowedToLive
    Desynced,       // arrival while the stream baseline is suspect
    BaselineAdopted,
    AuthForged,       // tag mismatch
    AuthUnknownKey,   // extension names a key the store lacks
    NoAuthExtension,  // security bit or extension missing
};

inline const char* flag_name(FlagId id) {
    switch (id) {
    case FlagId::SeqReplayOrGap: return "SEQ_REPLAY_OR_GAP";
    case FlagId::EventSeq: return "EVENT_SEQ";
    case FlagId::StNumAnomaly: return "STNUM_ANOMALY";
    case FlagId::RateExceeded: return "RATE_EXCEEDED";
    case FlagId::TooFast: return "TOO_FAST";
    case FlagId::TtlExpired: return "TTL_EXPIRED";
    case FlagId::Desynced: return "DESYNCED";
    case FlagId::BaselineAdopted: return "BASELINE_ADOPTED";
    case FlagId::AuthForged: return "AUTH_FORGED";
    case FlagId::AuthUnknownKey: return "AUTH_UNKNOWN_KEY";
    case FlagId::NoAuthExtension: return "NO_AUTH_EXTENSION";
    }
    return "?";
}

inline bool flag_is_alarm(FlagId id) { return id != FlagId::BaselineAdopted; }

struct Flag {
    FlagId id;
    std::string detail;

    bool operator==(const Flag&) const = default;
};

// Reporter record: when, on which stream, what fired.
struct FlagEvent {
    double time_ms = 0;
    std::string stream;
    FlagId id = FlagId::BaselineAdopted;
    std::string detail;
};

} // namespace goosesec
