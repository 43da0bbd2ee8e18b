#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace goosesec {

using Bytes = std::vector<uint8_t>;

// Timestamped raw frame, time in virtual milliseconds.
struct TimedBytes {
    double t_ms = 0;
    Bytes data;
};

inline constexpr uint16_t kEthertypeGoose = 0x88B8;
inline constexpr uint16_t kTpidVlan = 0x8100;

// Reserved1 bit 15 signals that a security extension follows the PDU.
inline constexpr uint16_t kReserved1SecurityBit = 0x8000;

// Longest VisibleString accepted in any APDU field.
inline constexpr size_t kMaxVisibleString = 129;

struct MacAddress {
    std::array<uint8_t, 6> octets{};

    bool is_multicast() const { return (octets[0] & 0x01) != 0; }

    std::string to_string() const {
        char buf[18];
        std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                      octets[0], octets[1], octets[2], octets[3], octets[4], octets[5]);
        return buf;
    }

    static std::optional<MacAddress> parse(const std::string& text) {
        MacAddress mac;
        unsigned v[6];
        char tail = 0;
        int n = std::sscanf(text.c_str(), "%2x:%2x:%2x:%2x:%2x:%2x%c",
                            &v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &tail);
        if (n != 6) return std::nullopt;
        for (int i = 0; i < 6; ++i) mac.octets[i] = static_cast<uint8_t>(v[i]);
        return mac;
    }

    auto operator<=>(const MacAddress&) const = default;
};

struct VlanTag {
    uint8_t priority = 0; // 0..7
    uint16_t vid = 0;     // 0..4095

    auto operator<=>(const VlanTag&) const = default;
};

struct EthernetHeader {
    MacAddress dst;
    MacAddress src;
    std::optional<VlanTag> vlan;

    bool operator==(const EthernetHeader&) const = default;
};

struct GooseApdu {
    std::string gocb_ref;
    uint32_t time_allowed_to_live_ms = 0;
    std::string dat_set;
    std::string go_id;
    uint64_t t_ms = 0; // event timestamp, ms since epoch
    uint32_t st_num = 0;
    uint32_t sq_num = 0;
    bool test = false;
    uint32_t conf_rev = 0;
    bool nds_com = false;
    std::vector<bool> all_data; // boolean dataset members

    uint32_t num_dat_set_entries() const { return static_cast<uint32_t>(all_data.size()); }

    bool operator==(const GooseApdu&) const = default;
};

// The Length header field is derived from the encoded APDU and is not stored.
struct GoosePdu {
    uint16_t appid = 0;
    uint16_t reserved1 = 0;
    uint16_t reserved2 = 0;
    GooseApdu apdu;

    bool has_security_extension() const { return (reserved1 & kReserved1SecurityBit) != 0; }
    void set_security_extension(bool on) {
        if (on)
            reserved1 |= kReserved1SecurityBit;
        else
            reserved1 &= static_cast<uint16_t>(~kReserved1SecurityBit);
    }

    bool operator==(const GoosePdu&) const = default;
};

// extension holds the raw bytes trailing the PDU; non-empty iff the
// security bit is set in reserved1.
struct GooseFrame {
    EthernetHeader eth;
    GoosePdu pdu;
    Bytes extension;

    bool operator==(const GooseFrame&) const = default;
};

} // namespace goosesec
