#pragma once

#include <stdexcept>
#include <string>

namespace tritangle {

enum class ErrorKind {
    InvalidArgument,
    Domain,
    Rank,
    NotConverged,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// range check helper used by every constructor taking a physical parameter
inline void require_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        throw Error(ErrorKind::Domain, std::string(name) + " = " + std::to_string(v) + " outside [" +
                                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

}  // namespace tritangle
