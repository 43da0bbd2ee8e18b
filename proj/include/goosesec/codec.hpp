#pragma once

// GOOSE frame codec.
//
// Wire layout:
//   Ethernet: dst(6) src(6) [8100 + TCI(2)] 88B8
//   PDU:      APPID(2) Length(2) Reserved1(2) Reserved2(2) APDU
//   APDU:     61 L { 80 gocbRef, 81 timeAllowedToLive, 82 datSet, 83 goID,
//                    84 t, 85 stNum, 86 sqNum, 87 test, 88 confRev,
//                    89 ndsCom, 8A numDatSetEntries, AB { 83 bool ... } }
//
// Length covers the 8 PDU header octets plus the APDU and is recomputed on
// encode. Unsigned integers are minimal-length big-endian. BER lengths use
// the short form below 0x80 and the 0x81/0x82 long forms above it. Bytes
// trailing the PDU are the security extension and are only legal when
// reserved1 bit 15 is set.

#include <cstdint>
#include <span>
#include <string>

#include "goosesec/expected.hpp"
#include "goosesec/frame.hpp"

namespace goosesec {

enum class DecodeError { Truncated, NotGoose, Malformed };
enum class EncodeError { FieldOverflow, InvalidField };

inline const char* to_string(DecodeError e) {
    switch (e) {
    case DecodeError::Truncated: return "truncated";
    case DecodeError::NotGoose: return "not goose";
    case DecodeError::Malformed: return "malformed";
    }
    return "?";
}

inline const char* to_string(EncodeError e) {
    switch (e) {
    case EncodeError::FieldOverflow: return "field overflow";
    case EncodeError::InvalidField: return "invalid field";
    }
    return "?";
}

namespace detail {

inline void put_u16(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v & 0xFF));
}

inline void put_ber_len(Bytes& out, size_t n) {
    if (n < 0x80) {
        out.push_back(static_cast<uint8_t>(n));
    } else if (n <= 0xFF) {
        out.push_back(0x81);
        out.push_back(static_cast<uint8_t>(n));
    } else {
        out.push_back(0x82);
        out.push_back(static_cast<uint8_t>(n >> 8));
        out.push_back(static_cast<uint8_t>(n & 0xFF));
    }
}

inline void put_tlv(Bytes& out, uint8_t tag, const Bytes& content) {
    out.push_back(tag);
    put_ber_len(out, content.size());
    out.insert(out.end(), content.begin(), content.end());
}

inline Bytes uint_minimal(uint64_t v) {
    Bytes out;
    if (v == 0) return {0x00};
    while (v) {
        out.insert(out.begin(), static_cast<uint8_t>(v & 0xFF));
        v >>= 8;
    }
    return out;
}

inline void put_uint_tlv(Bytes& out, uint8_t tag, uint64_t v) {
    put_tlv(out, tag, uint_minimal(v));
}

inline void put_bool_tlv(Bytes& out, uint8_t tag, bool v) {
    put_tlv(out, tag, Bytes{static_cast<uint8_t>(v ? 0x01 : 0x00)});
}

inline void put_string_tlv(Bytes& out, uint8_t tag, const std::string& s) {
    out.push_back(tag);
    put_ber_len(out, s.size());
    out.insert(out.end(), s.begin(), s.end());
}

// Bounded reader over a fixed region. Running past the region is a
// structural error; the caller decides how to map it.
struct Reader {
    std::span<const uint8_t> buf;
    size_t pos = 0;

    size_t left() const { return buf.size() - pos; }
    bool take_u8(uint8_t& v) {
        if (left() < 1) return false;
        v = buf[pos++];
        return true;
    }
    bool take_u16(uint16_t& v) {
        if (left() < 2) return false;
        v = static_cast<uint16_t>(buf[pos] << 8 | buf[pos + 1]);
        pos += 2;
        return true;
    }
    bool take(size_t n, std::span<const uint8_t>& out) {
        if (left() < n) return false;
        out = buf.subspan(pos, n);
        pos += n;
        return true;
    }
};

inline bool read_ber_len(Reader& r, size_t& len) {
    uint8_t first = 0;
    if (!r.take_u8(first)) return false;
    if (first < 0x80) {
        len = first;
        return true;
    }
    if (first == 0x81) {
        uint8_t b = 0;
        if (!r.take_u8(b)) return false;
        len = b;
        return true;
    }
    if (first == 0x82) {
        uint16_t w = 0;
        if (!r.take_u16(w)) return false;
        len = w;
        return true;
    }
    return false; // indefinite and longer forms are not used
}

inline bool read_tlv(Reader& r, uint8_t expect_tag, std::span<const uint8_t>& content) {
    uint8_t tag = 0;
    size_t len = 0;
    return r.take_u8(tag) && tag == expect_tag && read_ber_len(r, len) &&
           r.take(len, content);
}

inline bool read_uint(std::span<const uint8_t> content, uint64_t max, uint64_t& v) {
    if (content.empty() || content.size() > 8) return false;
    if (content.size() > 1 && content[0] == 0x00) return false; // not minimal
    uint64_t acc = 0;
    for (uint8_t b : content) acc = acc << 8 | b;
    if (acc > max) return false;
    v = acc;
    return true;
}

inline bool read_uint_tlv(Reader& r, uint8_t tag, uint64_t max, uint64_t& v) {
    std::span<const uint8_t> c;
    return read_tlv(r, tag, c) && read_uint(c, max, v);
}

inline bool read_bool_tlv(Reader& r, uint8_t tag, bool& v) {
    std::span<const uint8_t> c;
    if (!read_tlv(r, tag, c) || c.size() != 1) return false;
    if (c[0] > 0x01) return false;
    v = c[0] == 0x01;
    return true;
}

inline bool read_string_tlv(Reader& r, uint8_t tag, std::string& s) {
    std::span<const uint8_t> c;
    if (!read_tlv(r, tag, c) || c.size() > kMaxVisibleString) return false;
    s.assign(c.begin(), c.end());
    return true;
}

} // namespace detail

inline Expected<Bytes, EncodeError> encode_apdu(const GooseApdu& a) {
    using namespace detail;
    if (a.gocb_ref.size() > kMaxVisibleString || a.dat_set.size() > kMaxVisibleString ||
        a.go_id.size() > kMaxVisibleString)
        return EncodeError::FieldOverflow;
    if (a.time_allowed_to_live_ms == 0) return EncodeError::InvalidField;

    Bytes inner;
    put_string_tlv(inner, 0x80, a.gocb_ref);
    put_uint_tlv(inner, 0x81, a.time_allowed_to_live_ms);
    put_string_tlv(inner, 0x82, a.dat_set);
    put_string_tlv(inner, 0x83, a.go_id);
    put_uint_tlv(inner, 0x84, a.t_ms);
    put_uint_tlv(inner, 0x85, a.st_num);
    put_uint_tlv(inner, 0x86, a.sq_num);
    put_bool_tlv(inner, 0x87, a.test);
    put_uint_tlv(inner, 0x88, a.conf_rev);
    put_bool_tlv(inner, 0x89, a.nds_com);
    put_uint_tlv(inner, 0x8A, a.all_data.size());
    Bytes entries;
    for (bool b : a.all_data) put_bool_tlv(entries, 0x83, b);
    put_tlv(inner, 0xAB, entries);

    Bytes out;
    put_tlv(out, 0x61, inner);
    return out;
}

// Encodes the 8-octet PDU header plus APDU; the extension is not included.
inline Expected<Bytes, EncodeError> encode_pdu(const GoosePdu& p) {
    auto apdu = encode_apdu(p.apdu);
    if (!apdu) return apdu.error();
    size_t length = 8 + apdu.value().size();
    if (length > 0xFFFF) return EncodeError::FieldOverflow;

    Bytes out;
    detail::put_u16(out, p.appid);
    detail::put_u16(out, static_cast<uint16_t>(length));
    detail::put_u16(out, p.reserved1);
    detail::put_u16(out, p.reserved2);
    out.insert(out.end(), apdu.value().begin(), apdu.value().end());
    return out;
}

inline Expected<Bytes, EncodeError> encode_frame(const GooseFrame& f) {
    if (f.pdu.has_security_extension() != !f.extension.empty())
        return EncodeError::InvalidField;
    if (f.eth.vlan && (f.eth.vlan->priority > 7 || f.eth.vlan->vid > 0x0FFF))
        return EncodeError::InvalidField;

    auto pdu = encode_pdu(f.pdu);
    if (!pdu) return pdu.error();

    Bytes out;
    out.insert(out.end(), f.eth.dst.octets.begin(), f.eth.dst.octets.end());
    out.insert(out.end(), f.eth.src.octets.begin(), f.eth.src.octets.end());
    if (f.eth.vlan) {
        detail::put_u16(out, kTpidVlan);
        detail::put_u16(out, static_cast<uint16_t>(f.eth.vlan->priority << 13 | f.eth.vlan->vid));
    }
    detail::put_u16(out, kEthertypeGoose);
    out.insert(out.end(), pdu.value().begin(), pdu.value().end());
    out.insert(out.end(), f.extension.begin(), f.extension.end());
    return out;
}

inline Expected<GooseFrame, DecodeError> decode_frame(std::span<const uint8_t> buf) {
    using namespace detail;
    GooseFrame f;

    Reader top{buf};
    std::span<const uint8_t> mac;
    if (!top.take(6, mac)) return DecodeError::Truncated;
    std::copy(mac.begin(), mac.end(), f.eth.dst.octets.begin());
    if (!top.take(6, mac)) return DecodeError::Truncated;
    std::copy(mac.begin(), mac.end(), f.eth.src.octets.begin());

    uint16_t ethertype = 0;
    if (!top.take_u16(ethertype)) return DecodeError::Truncated;
    if (ethertype == kTpidVlan) {
        uint16_t tci = 0;
        if (!top.take_u16(tci)) return DecodeError::Truncated;
        if (tci & 0x1000) return DecodeError::Malformed; // DEI not used
        f.eth.vlan = VlanTag{static_cast<uint8_t>(tci >> 13),
                             static_cast<uint16_t>(tci & 0x0FFF)};
        if (!top.take_u16(ethertype)) return DecodeError::Truncated;
    }
    if (ethertype != kEthertypeGoose) return DecodeError::NotGoose;

    uint16_t length = 0;
    if (!top.take_u16(f.pdu.appid)) return DecodeError::Truncated;
    if (!top.take_u16(length)) return DecodeError::Truncated;
    if (!top.take_u16(f.pdu.reserved1)) return DecodeError::Truncated;
    if (!top.take_u16(f.pdu.reserved2)) return DecodeError::Truncated;
    if (length < 8) return DecodeError::Malformed;
    size_t apdu_len = static_cast<size_t>(length) - 8;
    std::span<const uint8_t> apdu_region;
    if (!top.take(apdu_len, apdu_region)) return DecodeError::Truncated;

    // Anything after the declared PDU is the security extension.
    std::span<const uint8_t> trailer;
    top.take(top.left(), trailer);
    if (f.pdu.has_security_extension()) {
        if (trailer.empty()) return DecodeError::Malformed;
        f.extension.assign(trailer.begin(), trailer.end());
    } else if (!trailer.empty()) {
        return DecodeError::Malformed;
    }

    // From here every overrun is a structural inconsistency inside a region
    // the buffer fully contains.
    Reader rt{apdu_region};
    std::span<const uint8_t> apdu_body;
    if (!read_tlv(rt, 0x61, apdu_body) || rt.left() != 0) return DecodeError::Malformed;

    Reader r{apdu_body};
    GooseApdu& a = f.pdu.apdu;
    uint64_t v = 0;
    if (!read_string_tlv(r, 0x80, a.gocb_ref)) return DecodeError::Malformed;
    if (!read_uint_tlv(r, 0x81, 0xFFFFFFFFu, v)) return DecodeError::Malformed;
    if (v == 0) return DecodeError::Malformed;
    a.time_allowed_to_live_ms = static_cast<uint32_t>(v);
    if (!read_string_tlv(r, 0x82, a.dat_set)) return DecodeError::Malformed;
    if (!read_string_tlv(r, 0x83, a.go_id)) return DecodeError::Malformed;
    if (!read_uint_tlv(r, 0x84, UINT64_MAX, a.t_ms)) return DecodeError::Malformed;
    if (!read_uint_tlv(r, 0x85, 0xFFFFFFFFu, v)) return DecodeError::Malformed;
    a.st_num = static_cast<uint32_t>(v);
    if (!read_uint_tlv(r, 0x86, 0xFFFFFFFFu, v)) return DecodeError::Malformed;
    a.sq_num = static_cast<uint32_t>(v);
    if (!read_bool_tlv(r, 0x87, a.test)) return DecodeError::Malformed;
    if (!read_uint_tlv(r, 0x88, 0xFFFFFFFFu, v)) return DecodeError::Malformed;
    a.conf_rev = static_cast<uint32_t>(v);
    if (!read_bool_tlv(r, 0x89, a.nds_com)) return DecodeError::Malformed;
    uint64_t declared_entries = 0;
    if (!read_uint_tlv(r, 0x8A, 0xFFFFFFFFu, declared_entries)) return DecodeError::Malformed;

    std::span<const uint8_t> entries;
    if (!read_tlv(r, 0xAB, entries) || r.left() != 0) return DecodeError::Malformed;
    Reader re{entries};
    a.all_data.clear();
    while (re.left() > 0) {
        bool b = false;
        if (!read_bool_tlv(re, 0x83, b)) return DecodeError::Malformed;
        a.all_data.push_back(b);
    }
    if (a.all_data.size() != declared_entries) return DecodeError::Malformed;

    return f;
}

inline Expected<GooseFrame, DecodeError> decode_frame(const Bytes& buf) {
    return decode_frame(std::span<const uint8_t>(buf.data(), buf.size()));
}

} // namespace goosesec
