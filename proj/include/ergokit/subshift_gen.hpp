#pragma once

#include <string>

namespace ergokit {

// A point of a subshift, addressable by position. One-sided generators
// serve positions >= 0; two-sided ones serve negative positions as well.
// Symbols are printable chars ('a'.., '0'.., '1'..) so windows are plain
// strings and the word operations apply directly.
struct SubshiftGen {
    virtual ~SubshiftGen() = default;

    virtual std::string alphabet() const = 0;  // canonical letter order
    virtual bool two_sided() const = 0;
    virtual char at(long long i) const = 0;

    virtual std::string window(long long start, long long len) const {
        std::string out;
        out.reserve(static_cast<size_t>(len));
        for (long long i = 0; i < len; ++i) out.push_back(at(start + i));
        return out;
    }

    virtual std::string describe() const = 0;
};

}  // namespace ergokit
