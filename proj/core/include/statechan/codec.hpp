#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statechan/bytes.hpp"

namespace statechan {

/// Canonical binary encoding shared by every signed protocol payload and
/// ledger witness. All integers are big-endian; byte strings are u32
/// length-prefixed. A given logical message has exactly one encoding.
class Encoder {
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u32(uint32_t v) {
        for (int i = 3; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 7; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void i64(int64_t v) { u64(static_cast<uint64_t>(v)); }
    void bytes(const Bytes& b) {
        u32(static_cast<uint32_t>(b.size()));
        out_.insert(out_.end(), b.begin(), b.end());
    }
    /// Raw bytes with no length prefix; for fixed-width fields only.
    void raw(const Bytes& b) { out_.insert(out_.end(), b.begin(), b.end()); }

    const Bytes& take() const { return out_; }

private:
    Bytes out_;
};

/// Decoder over a byte buffer. Any read past the end marks the decoder
/// failed; callers check ok() once after the last field.
class Decoder {
public:
    explicit Decoder(const Bytes& in) : in_(in) {}

    uint8_t u8() {
        if (!need(1)) return 0;
        return in_[pos_++];
    }
    uint32_t u32() {
        if (!need(4)) return 0;
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
        return v;
    }
    uint64_t u64() {
        if (!need(8)) return 0;
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
        return v;
    }
    int64_t i64() { return static_cast<int64_t>(u64()); }
    Bytes bytes() {
        uint32_t len = u32();
        if (!need(len)) return {};
        Bytes b(in_.begin() + pos_, in_.begin() + pos_ + len);
        pos_ += len;
        return b;
    }
    Bytes raw(size_t len) {
        if (!need(len)) return {};
        Bytes b(in_.begin() + pos_, in_.begin() + pos_ + len);
        pos_ += len;
        return b;
    }

    bool ok() const { return ok_; }
    bool at_end() const { return ok_ && pos_ == in_.size(); }

private:
    bool need(size_t n) {
        if (!ok_ || in_.size() - pos_ < n) {
            ok_ = false;
            return false;
        }
        return true;
    }

    const Bytes& in_;
    size_t pos_ = 0;
    bool ok_ = true;
};

}  // namespace statechan
