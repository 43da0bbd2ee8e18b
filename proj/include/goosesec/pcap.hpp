#pragma once

#include <cstdint>
#include <fstream>
#include <utility>
#include <vector>

#include "goosesec/frame.hpp"

namespace goosesec {

namespace detail {

inline void put_u32le(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8 & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 16 & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 24 & 0xFF));
}

inline void put_u16le(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

} // namespace detail

// Classic pcap, microsecond timestamps, LINKTYPE_ETHERNET.
inline Bytes frames_to_pcap(const std::vector<TimedBytes>& frames) {
    using namespace detail;
    Bytes out;
    put_u32le(out, 0xA1B2C3D4u);
    put_u16le(out, 2);
    put_u16le(out, 4);
    put_u32le(out, 0); // thiszone
    put_u32le(out, 0); // sigfigs
    put_u32le(out, 0x40000);
    put_u32le(out, 1); // Ethernet

    for (const auto& f : frames) {
        uint64_t usec = static_cast<uint64_t>(f.t_ms * 1000.0 + 0.5);
        put_u32le(out, static_cast<uint32_t>(usec / 1000000));
        put_u32le(out, static_cast<uint32_t>(usec % 1000000));
        put_u32le(out, static_cast<uint32_t>(f.data.size()));
        put_u32le(out, static_cast<uint32_t>(f.data.size()));
        out.insert(out.end(), f.data.begin(), f.data.end());
    }
    return out;
}

inline bool write_pcap_file(const std::string& path, const std::vector<TimedBytes>& frames) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return false;
    Bytes data = frames_to_pcap(frames);
    os.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(data.size()));
    return static_cast<bool>(os);
}

} // namespace goosesec
