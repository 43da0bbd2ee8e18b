#pragma once

// Authentication extension carried after the GOOSE PDU:
//   IV(12) = sender tag(4) || send counter(8), both big-endian
//   KeyID(4)
//   Tag(16) = AES-GMAC-128 over the encoded PDU bytes
//
// GMAC is AES-GCM with empty plaintext and the PDU as associated data. The
// PDU is signed with the security bit already set in reserved1 so sender
// and receiver authenticate identical bytes.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include "goosesec/codec.hpp"
#include "goosesec/expected.hpp"
#include "goosesec/frame.hpp"

namespace goosesec {

using Key128 = std::array<uint8_t, 16>;

struct SecurityExtension {
    static constexpr size_t kWireSize = 32;

    std::array<uint8_t, 12> iv{};
    uint32_t key_id = 0;
    std::array<uint8_t, 16> tag{};

    Bytes to_bytes() const {
        Bytes out(iv.begin(), iv.end());
        out.push_back(static_cast<uint8_t>(key_id >> 24));
        out.push_back(static_cast<uint8_t>(key_id >> 16 & 0xFF));
        out.push_back(static_cast<uint8_t>(key_id >> 8 & 0xFF));
        out.push_back(static_cast<uint8_t>(key_id & 0xFF));
        out.insert(out.end(), tag.begin(), tag.end());
        return out;
    }

    static std::optional<SecurityExtension> from_bytes(std::span<const uint8_t> buf) {
        if (buf.size() != kWireSize) return std::nullopt;
        SecurityExtension e;
        std::copy(buf.begin(), buf.begin() + 12, e.iv.begin());
        e.key_id = static_cast<uint32_t>(buf[12]) << 24 | static_cast<uint32_t>(buf[13]) << 16 |
                   static_cast<uint32_t>(buf[14]) << 8 | static_cast<uint32_t>(buf[15]);
        std::copy(buf.begin() + 16, buf.end(), e.tag.begin());
        return e;
    }

    bool operator==(const SecurityExtension&) const = default;
};

inline std::array<uint8_t, 16> aes_gmac_128(const Key128& key, std::span<const uint8_t> iv,
                                            std::span<const uint8_t> aad) {
    // One context per thread, re-initialised per call: avoids the per-packet
    // allocation and provider fetch that dominate EVP setup cost.
    struct Ctx {
        EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
#if OPENSSL_VERSION_NUMBER >= 0x30000000L
        EVP_CIPHER* cipher = EVP_CIPHER_fetch(nullptr, "AES-128-GCM", nullptr);
#else
        const EVP_CIPHER* cipher = EVP_aes_128_gcm();
#endif
        ~Ctx() {
            EVP_CIPHER_CTX_free(ctx);
#if OPENSSL_VERSION_NUMBER >= 0x30000000L
            EVP_CIPHER_free(cipher);
#endif
        }
    };
    thread_local Ctx c;
    if (!c.ctx || !c.cipher) throw std::runtime_error("EVP cipher setup failed");

    std::array<uint8_t, 16> tag{};
    int len = 0;
    bool ok = EVP_EncryptInit_ex(c.ctx, c.cipher, nullptr, nullptr, nullptr) == 1 &&
              EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(iv.size()),
                                  nullptr) == 1 &&
              EVP_EncryptInit_ex(c.ctx, nullptr, nullptr, key.data(), iv.data()) == 1 &&
              (aad.empty() ||
               EVP_EncryptUpdate(c.ctx, nullptr, &len, aad.data(), static_cast<int>(aad.size())) ==
                   1) &&
              EVP_EncryptFinal_ex(c.ctx, nullptr, &len) == 1 &&
              EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_GET_TAG, 16, tag.data()) == 1;
    if (!ok) throw std::runtime_error("AES-GMAC-128 computation failed");
    return tag;
}

enum class AuthVerdict { Authentic, Forged, UnknownKey };

inline const char* to_string(AuthVerdict v) {
    switch (v) {
    case AuthVerdict::Authentic: return "authentic";
    case AuthVerdict::Forged: return "forged";
    case AuthVerdict::UnknownKey: return "unknown key";
    }
    return "?";
}

enum class SignError { UnknownSender, UnknownKey, EncodeFailed };

// Keys by id plus per-sender signing state (tag, key in use, send counter).
class KeyStore {
public:
    void add_key(uint32_t key_id, const Key128& key) { keys_[key_id] = key; }

    std::optional<Key128> find_key(uint32_t key_id) const {
        auto it = keys_.find(key_id);
        if (it == keys_.end()) return std::nullopt;
        return it->second;
    }

    void register_sender(const std::string& name, uint32_t sender_tag, uint32_t key_id) {
        senders_[name] = Sender{sender_tag, key_id, 0};
    }

    bool has_sender(const std::string& name) const { return senders_.count(name) != 0; }
    size_t key_count() const { return keys_.size(); }

    Expected<SecurityExtension, SignError> sign(const std::string& sender,
                                                std::span<const uint8_t> pdu_bytes) {
        auto it = senders_.find(sender);
        if (it == senders_.end()) return SignError::UnknownSender;
        auto key = find_key(it->second.key_id);
        if (!key) return SignError::UnknownKey;

        SecurityExtension ext;
        uint32_t tag32 = it->second.tag;
        uint64_t ctr = it->second.counter++;
        for (int i = 0; i < 4; ++i) ext.iv[i] = static_cast<uint8_t>(tag32 >> (24 - 8 * i) & 0xFF);
        for (int i = 0; i < 8; ++i) ext.iv[4 + i] = static_cast<uint8_t>(ctr >> (56 - 8 * i) & 0xFF);
        ext.key_id = it->second.key_id;
        ext.tag = aes_gmac_128(*key, ext.iv, pdu_bytes);
        return ext;
    }

private:
    struct Sender {
        uint32_t tag = 0;
        uint32_t key_id = 0;
        uint64_t counter = 0;
    };

    std::map<uint32_t, Key128> keys_;
    std::map<std::string, Sender> senders_;
};

inline Expected<SecurityExtension, SignError> sign_pdu(const GoosePdu& pdu, KeyStore& ks,
                                                       const std::string& sender) {
    auto bytes = encode_pdu(pdu);
    if (!bytes) return SignError::EncodeFailed;
    return ks.sign(sender, bytes.value());
}

// Sets the security bit, signs, and attaches the extension.
inline Expected<GooseFrame, SignError> sign_frame(GooseFrame frame, KeyStore& ks,
                                                  const std::string& sender) {
    frame.pdu.set_security_extension(true);
    auto ext = sign_pdu(frame.pdu, ks, sender);
    if (!ext) return ext.error();
    frame.extension = ext.value().to_bytes();
    return frame;
}

inline AuthVerdict verify(const GoosePdu& pdu, const SecurityExtension& ext, const KeyStore& ks) {
    auto key = ks.find_key(ext.key_id);
    if (!key) return AuthVerdict::UnknownKey;
    auto bytes = encode_pdu(pdu);
    if (!bytes) return AuthVerdict::Forged;
    auto expected = aes_gmac_128(*key, ext.iv, bytes.value());
    return CRYPTO_memcmp(expected.data(), ext.tag.data(), expected.size()) == 0
               ? AuthVerdict::Authentic
               : AuthVerdict::Forged;
}

// Keystore file: one `key_id = key` pair per line, both hex (8 and 32
// digits), '#' comments allowed.
inline Expected<KeyStore, std::string> load_keystore_text(const std::string& text,
                                                          const std::string& name) {
    KeyStore ks;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto err = [&](const std::string& msg) {
        return name + ":" + std::to_string(lineno) + ": " + msg;
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);

        auto eq = line.find('=');
        if (eq == std::string::npos) return err("expected `key_id = key`");
        auto strip = [](std::string s) {
            size_t x = s.find_first_not_of(" \t");
            size_t y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        std::string id_hex = strip(line.substr(0, eq));
        std::string key_hex = strip(line.substr(eq + 1));
        if (id_hex.rfind("0x", 0) == 0 || id_hex.rfind("0X", 0) == 0) id_hex = id_hex.substr(2);
        auto is_hex = [](const std::string& s) {
            return !s.empty() && s.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos;
        };
        if (id_hex.size() != 8 || !is_hex(id_hex)) return err("key id must be 8 hex digits");
        if (key_hex.size() != 32 || !is_hex(key_hex)) return err("key must be 32 hex digits");

        uint32_t key_id = static_cast<uint32_t>(std::stoul(id_hex, nullptr, 16));
        Key128 key{};
        for (size_t i = 0; i < 16; ++i)
            key[i] = static_cast<uint8_t>(std::stoul(key_hex.substr(2 * i, 2), nullptr, 16));
        ks.add_key(key_id, key);
    }
    if (ks.key_count() == 0) return name + ": keystore holds no keys";
    return ks;
}

inline Expected<KeyStore, std::string> load_keystore_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) return path + ": cannot open keystore";
    std::ostringstream ss;
    ss << is.rdbuf();
    return load_keystore_text(ss.str(), path);
}

} // namespace goosesec
