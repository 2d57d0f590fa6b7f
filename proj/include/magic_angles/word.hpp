#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"

namespace magic_angles {

// Finite word over {0,1}; the empty word is the identity for
// concatenation.  Digits are indexed from the left, starting at 0.
class BinaryWord {
public:
    BinaryWord() = default;

    explicit BinaryWord(std::string bits) : bits_(std::move(bits)) {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] != '0' && bits_[i] != '1')
                throw hypothesis_error("binary word digit must be 0 or 1");
    }

    // The |width| low bits of |value|, most significant digit first.
    static BinaryWord from_integer(Integer value, std::size_t width) {
        if (value < 0) throw hypothesis_error("binary word value must be non-negative");
        std::string bits(width, '0');
        for (std::size_t i = width; i-- > 0 && value != 0; value >>= 1)
            bits[i] = (value & 1) != 0 ? '1' : '0';
        if (value != 0) throw hypothesis_error("binary word width too small for value");
        return BinaryWord(std::move(bits));
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    int digit(std::size_t i) const { return bits_.at(i) == '1' ? 1 : 0; }
    const std::string& bits() const noexcept { return bits_; }

    // Value of the digits read as a base-2 integer.
    Integer to_integer() const {
        Integer v = 0;
        for (char c : bits_) v = (v << 1) | (c == '1' ? 1 : 0);
        return v;
    }

    BinaryWord operator+(const BinaryWord& rhs) const {
        return BinaryWord(bits_ + rhs.bits_);
    }

    BinaryWord repeated(std::size_t n) const {
        std::string out;
        out.reserve(bits_.size() * n);
        for (std::size_t i = 0; i < n; ++i) out += bits_;
        return BinaryWord(std::move(out));
    }

    BinaryWord drop_front(std::size_t n) const {
        if (n > bits_.size()) throw hypothesis_error("cannot drop past end of word");
        return BinaryWord(bits_.substr(n));
    }

    BinaryWord complemented() const {
        std::string out = bits_;
        for (char& c : out) c = (c == '0') ? '1' : '0';
        return BinaryWord(std::move(out));
    }

    bool all_zero() const {
        return bits_.find('1') == std::string::npos;
    }

    friend bool operator==(const BinaryWord& a, const BinaryWord& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BinaryWord& a, const BinaryWord& b) { return a.bits_ != b.bits_; }
    friend bool operator<(const BinaryWord& a, const BinaryWord& b)  { return a.bits_ < b.bits_; }

private:
    std::string bits_;
};

} // namespace magic_angles
