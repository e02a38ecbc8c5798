#pragma once

#include "../oracle.hpp"
#include "states.hpp"

namespace tt = tritangle;

inline tt::PureState to_lib(const oracle::V8& v) {
    tt::PureState s;
    for (int i = 0; i < 8; ++i) s.amp[i] = v[i];
    return s;
}

inline oracle::V8 to_oracle(const tt::PureState& s) {
    oracle::V8 v;
    for (int i = 0; i < 8; ++i) v[i] = s.amp[i];
    return v;
}

inline tt::Matrix to_lib(const oracle::M8& m) {
    tt::Matrix r(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) r(i, j) = m[i * 8 + j];
    return r;
}

inline double max_diff(const tt::Matrix& a, const oracle::M8& b) {
    double d = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) d = std::max(d, std::abs(a(i, j) - b[i * 8 + j]));
    return d;
}
