#pragma once

#include <stdexcept>
#include <string>

namespace needle {

// Thrown for any input outside an operation's domain (non-positive sizes,
// negative temperatures, degenerate grids, ...).
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw InvalidParameter(what);
}

}  // namespace needle
