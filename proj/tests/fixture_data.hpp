// Generated by tests/oracle/gen_fixtures.py. Do not edit by hand.
#pragma once

namespace fixture {

inline constexpr unsigned char kPlainFrame[] = {
    0x01, 0x0C, 0xCD, 0x01, 0x00, 0x10, 0xDC, 0x37, 0x52, 0x0A, 0xCF, 0xC2,
    0x88, 0xB8, 0x30, 0x01, 0x00, 0x75, 0x00, 0x00, 0x00, 0x00, 0x61, 0x6B,
    0x80, 0x16, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52, 0x4F, 0x54, 0x2F, 0x4C,
    0x4C, 0x4E, 0x30, 0x24, 0x47, 0x4F, 0x24, 0x67, 0x63, 0x62, 0x30, 0x31,
    0x81, 0x02, 0x07, 0xD0, 0x82, 0x14, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52,
    0x4F, 0x54, 0x2F, 0x4C, 0x4C, 0x4E, 0x30, 0x24, 0x45, 0x76, 0x65, 0x6E,
    0x74, 0x73, 0x83, 0x0F, 0x49, 0x45, 0x44, 0x31, 0x5F, 0x50, 0x72, 0x6F,
    0x74, 0x65, 0x63, 0x74, 0x69, 0x6F, 0x6E, 0x84, 0x06, 0x01, 0x8B, 0xCF,
    0xE5, 0x68, 0x00, 0x85, 0x01, 0x01, 0x86, 0x01, 0x00, 0x87, 0x01, 0x00,
    0x88, 0x01, 0x01, 0x89, 0x01, 0x00, 0x8A, 0x01, 0x04, 0xAB, 0x0C, 0x83,
    0x01, 0x01, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00
};

inline constexpr unsigned char kVlanFrame[] = {
    0x01, 0x0C, 0xCD, 0x01, 0x00, 0x10, 0xDC, 0x37, 0x52, 0x0A, 0xCF, 0xC2,
    0x81, 0x00, 0x80, 0x0A, 0x88, 0xB8, 0x30, 0x01, 0x00, 0x75, 0x00, 0x00,
    0x00, 0x00, 0x61, 0x6B, 0x80, 0x16, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52,
    0x4F, 0x54, 0x2F, 0x4C, 0x4C, 0x4E, 0x30, 0x24, 0x47, 0x4F, 0x24, 0x67,
    0x63, 0x62, 0x30, 0x31, 0x81, 0x02, 0x07, 0xD0, 0x82, 0x14, 0x49, 0x45,
    0x44, 0x31, 0x50, 0x52, 0x4F, 0x54, 0x2F, 0x4C, 0x4C, 0x4E, 0x30, 0x24,
    0x45, 0x76, 0x65, 0x6E, 0x74, 0x73, 0x83, 0x0F, 0x49, 0x45, 0x44, 0x31,
    0x5F, 0x50, 0x72, 0x6F, 0x74, 0x65, 0x63, 0x74, 0x69, 0x6F, 0x6E, 0x84,
    0x06, 0x01, 0x8B, 0xCF, 0xE5, 0x68, 0x00, 0x85, 0x01, 0x01, 0x86, 0x01,
    0x00, 0x87, 0x01, 0x00, 0x88, 0x01, 0x01, 0x89, 0x01, 0x00, 0x8A, 0x01,
    0x04, 0xAB, 0x0C, 0x83, 0x01, 0x01, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00,
    0x83, 0x01, 0x00
};

inline constexpr unsigned char kSignedFrame[] = {
    0x01, 0x0C, 0xCD, 0x01, 0x00, 0x10, 0xDC, 0x37, 0x52, 0x0A, 0xCF, 0xC2,
    0x88, 0xB8, 0x30, 0x01, 0x00, 0x75, 0x80, 0x00, 0x00, 0x00, 0x61, 0x6B,
    0x80, 0x16, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52, 0x4F, 0x54, 0x2F, 0x4C,
    0x4C, 0x4E, 0x30, 0x24, 0x47, 0x4F, 0x24, 0x67, 0x63, 0x62, 0x30, 0x31,
    0x81, 0x02, 0x07, 0xD0, 0x82, 0x14, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52,
    0x4F, 0x54, 0x2F, 0x4C, 0x4C, 0x4E, 0x30, 0x24, 0x45, 0x76, 0x65, 0x6E,
    0x74, 0x73, 0x83, 0x0F, 0x49, 0x45, 0x44, 0x31, 0x5F, 0x50, 0x72, 0x6F,
    0x74, 0x65, 0x63, 0x74, 0x69, 0x6F, 0x6E, 0x84, 0x06, 0x01, 0x8B, 0xCF,
    0xE5, 0x68, 0x00, 0x85, 0x01, 0x01, 0x86, 0x01, 0x00, 0x87, 0x01, 0x00,
    0x88, 0x01, 0x01, 0x89, 0x01, 0x00, 0x8A, 0x01, 0x04, 0xAB, 0x0C, 0x83,
    0x01, 0x01, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00, 0x49,
    0x45, 0x44, 0x31, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xA1,
    0xB2, 0xC3, 0xD4, 0x39, 0xBA, 0xC0, 0x03, 0xFF, 0x8F, 0x33, 0xD2, 0x3F,
    0xFD, 0xE9, 0x89, 0x8A, 0xAE, 0x9A, 0xC5
};

inline constexpr unsigned char kSignedPduBytes[] = {
    0x30, 0x01, 0x00, 0x75, 0x80, 0x00, 0x00, 0x00, 0x61, 0x6B, 0x80, 0x16,
    0x49, 0x45, 0x44, 0x31, 0x50, 0x52, 0x4F, 0x54, 0x2F, 0x4C, 0x4C, 0x4E,
    0x30, 0x24, 0x47, 0x4F, 0x24, 0x67, 0x63, 0x62, 0x30, 0x31, 0x81, 0x02,
    0x07, 0xD0, 0x82, 0x14, 0x49, 0x45, 0x44, 0x31, 0x50, 0x52, 0x4F, 0x54,
    0x2F, 0x4C, 0x4C, 0x4E, 0x30, 0x24, 0x45, 0x76, 0x65, 0x6E, 0x74, 0x73,
    0x83, 0x0F, 0x49, 0x45, 0x44, 0x31, 0x5F, 0x50, 0x72, 0x6F, 0x74, 0x65,
    0x63, 0x74, 0x69, 0x6F, 0x6E, 0x84, 0x06, 0x01, 0x8B, 0xCF, 0xE5, 0x68,
    0x00, 0x85, 0x01, 0x01, 0x86, 0x01, 0x00, 0x87, 0x01, 0x00, 0x88, 0x01,
    0x01, 0x89, 0x01, 0x00, 0x8A, 0x01, 0x04, 0xAB, 0x0C, 0x83, 0x01, 0x01,
    0x83, 0x01, 0x00, 0x83, 0x01, 0x00, 0x83, 0x01, 0x00
};

inline constexpr unsigned char kFixtureKey[] = {
    0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07, 0x08, 0x09, 0x0A, 0x0B,
    0x0C, 0x0D, 0x0E, 0x0F
};

inline constexpr unsigned char kFixtureIv[] = {
    0x49, 0x45, 0x44, 0x31, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00
};

inline constexpr unsigned char kFixtureTag[] = {
    0x39, 0xBA, 0xC0, 0x03, 0xFF, 0x8F, 0x33, 0xD2, 0x3F, 0xFD, 0xE9, 0x89,
    0x8A, 0xAE, 0x9A, 0xC5
};

inline constexpr unsigned int kFixtureKeyId = 0xA1B2C3D4u;
inline constexpr unsigned int kFixtureSenderTag = 0x49454431u;

} // namespace fixture
