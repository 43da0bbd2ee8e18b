#pragma once

// Shared helpers for the suite: the fixture frames as structs, byte-array
// conversion, and a seeded generator of valid random frames.

#include <cstdint>
#include <random>
#include <string>

#include "fixture_data.hpp"
#include "goosesec/frame.hpp"
#include "goosesec/secure_ext.hpp"

namespace testsup {

using goosesec::Bytes;

inline Bytes bytes_of(const unsigned char* data, size_t n) { return Bytes(data, data + n); }

template <size_t N>
Bytes bytes_of(const unsigned char (&arr)[N]) {
    return bytes_of(arr, N);
}

inline goosesec::Key128 fixture_key() {
    goosesec::Key128 key{};
    for (size_t i = 0; i < key.size(); ++i) key[i] = fixture::kFixtureKey[i];
    return key;
}

inline goosesec::GooseApdu canonical_apdu() {
    goosesec::GooseApdu a;
    a.gocb_ref = "IED1PROT/LLN0$GO$gcb01";
    a.time_allowed_to_live_ms = 2000;
    a.dat_set = "IED1PROT/LLN0$Events";
    a.go_id = "IED1_Protection";
    a.t_ms = 1700000000000ull;
    a.st_num = 1;
    a.sq_num = 0;
    a.test = false;
    a.conf_rev = 1;
    a.nds_com = false;
    a.all_data = {true, false, false, false};
    return a;
}

inline goosesec::GooseFrame canonical_frame() {
    goosesec::GooseFrame f;
    f.eth.dst = goosesec::MacAddress{{0x01, 0x0C, 0xCD, 0x01, 0x00, 0x10}};
    f.eth.src = goosesec::MacAddress{{0xDC, 0x37, 0x52, 0x0A, 0xCF, 0xC2}};
    f.pdu.appid = 0x3001;
    f.pdu.apdu = canonical_apdu();
    return f;
}

inline goosesec::GooseFrame canonical_vlan_frame() {
    goosesec::GooseFrame f = canonical_frame();
    f.eth.vlan = goosesec::VlanTag{4, 10};
    return f;
}

inline goosesec::GooseFrame canonical_signed_frame() {
    goosesec::GooseFrame f = canonical_frame();
    f.pdu.set_security_extension(true);
    f.extension = bytes_of(fixture::kFixtureIv);
    f.extension.push_back(0xA1);
    f.extension.push_back(0xB2);
    f.extension.push_back(0xC3);
    f.extension.push_back(0xD4);
    Bytes tag = bytes_of(fixture::kFixtureTag);
    f.extension.insert(f.extension.end(), tag.begin(), tag.end());
    return f;
}

// Seeded source of structurally valid frames covering the full field space.
struct FrameGen {
    std::mt19937_64 rng;

    explicit FrameGen(uint64_t seed) : rng(seed) {}

    uint64_t u(uint64_t lo, uint64_t hi) {
        return std::uniform_int_distribution<uint64_t>(lo, hi)(rng);
    }

    std::string str(size_t max_len) {
        static const char charset[] =
            "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789$_/.";
        std::string s;
        size_t n = u(0, max_len);
        for (size_t i = 0; i < n; ++i) s += charset[u(0, sizeof(charset) - 2)];
        return s;
    }

    goosesec::GooseFrame frame() {
        goosesec::GooseFrame f;
        for (auto& o : f.eth.dst.octets) o = static_cast<uint8_t>(u(0, 255));
        for (auto& o : f.eth.src.octets) o = static_cast<uint8_t>(u(0, 255));
        if (u(0, 3) == 0)
            f.eth.vlan = goosesec::VlanTag{static_cast<uint8_t>(u(0, 7)),
                                           static_cast<uint16_t>(u(0, 0x0FFF))};
        f.pdu.appid = static_cast<uint16_t>(u(0, 0xFFFF));
        f.pdu.reserved1 = static_cast<uint16_t>(u(0, 0x7FFF)); // bit 15 follows the extension
        f.pdu.reserved2 = static_cast<uint16_t>(u(0, 0xFFFF));

        goosesec::GooseApdu& a = f.pdu.apdu;
        a.gocb_ref = str(goosesec::kMaxVisibleString);
        a.time_allowed_to_live_ms = static_cast<uint32_t>(u(1, 0xFFFFFFFFull));
        a.dat_set = str(goosesec::kMaxVisibleString);
        a.go_id = str(goosesec::kMaxVisibleString);
        a.t_ms = u(0, UINT64_MAX);
        a.st_num = static_cast<uint32_t>(u(0, 0xFFFFFFFFull));
        a.sq_num = static_cast<uint32_t>(u(0, 0xFFFFFFFFull));
        a.test = u(0, 1) == 1;
        a.conf_rev = static_cast<uint32_t>(u(0, 0xFFFFFFFFull));
        a.nds_com = u(0, 1) == 1;
        a.all_data.clear();
        size_t entries = u(0, 64);
        for (size_t i = 0; i < entries; ++i) a.all_data.push_back(u(0, 1) == 1);

        if (u(0, 1) == 1) {
            f.pdu.set_security_extension(true);
            size_t n = u(1, 48);
            for (size_t i = 0; i < n; ++i) f.extension.push_back(static_cast<uint8_t>(u(0, 255)));
        }
        return f;
    }
};

} // namespace testsup
