#pragma once

#include <cstddef>
#include <string>

#include "magic_angles/angle.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/expansion.hpp"

namespace magic_angles {

// Accepted angle formats:
//   "p/q"          fraction, not necessarily reduced, value taken mod 1
//   ".bits"        terminating binary expansion, e.g. ".0011"
//   ".pre~per"     eventually periodic expansion, e.g. ".~01" or ".10~0011"
inline Angle parse_angle(const std::string& text) {
    std::size_t b = 0, e = text.size();
    while (b < e && text[b] == ' ') ++b;
    while (e > b && text[e - 1] == ' ') --e;
    if (b == e) throw parse_error("empty angle", b);

    if (text[b] == '.') {
        std::string pre, per;
        bool in_period = false;
        for (std::size_t i = b + 1; i < e; ++i) {
            char c = text[i];
            if (c == '~') {
                if (in_period) throw parse_error("second '~' in binary literal", i);
                in_period = true;
            } else if (c == '0' || c == '1') {
                (in_period ? per : pre) += c;
            } else {
                throw parse_error("expected binary digit", i);
            }
        }
        if (pre.empty() && per.empty())
            throw parse_error("binary literal has no digits", e);
        return Expansion::from_words(BinaryWord(pre), BinaryWord(per)).to_angle();
    }

    std::size_t slash = text.find('/', b);
    if (slash == std::string::npos || slash >= e)
        throw parse_error("expected 'p/q' or a '.' binary literal", b);

    auto read_uint = [&](std::size_t from, std::size_t to) {
        if (from == to) throw parse_error("missing integer", from);
        Integer v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (text[i] < '0' || text[i] > '9')
                throw parse_error("expected decimal digit", i);
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };

    Integer num = read_uint(b, slash);
    Integer den = read_uint(slash + 1, e);
    if (den == 0) throw parse_error("denominator must be positive", slash + 1);
    return Angle(num, den);
}

inline std::string format_angle(const Angle& theta) { return theta.str(); }

} // namespace magic_angles
