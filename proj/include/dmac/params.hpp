#pragma once

// Scenario descriptor shared by the channel simulator and the closed-form
// bounds: Q subchannels split into subranges of q, m subranges per user,
// t tacts per codeword, S active users, k information symbols, target
// failure probability p_r.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dmac {

struct SystemParams {
    uint64_t Q = 0;
    uint64_t q = 0;
    uint32_t m = 1;
    uint32_t t = 1;
    uint32_t S = 1;
    uint32_t k = 1;
    double p_r = 1e-10;

    uint64_t n() const { return static_cast<uint64_t>(m) * t; }

    void validate() const {
        if (q < 2) throw std::invalid_argument("q must be at least 2");
        if (Q < q) throw std::invalid_argument("Q must be at least q");
        if (m < 1 || static_cast<uint64_t>(m) * q > Q)
            throw std::invalid_argument("m must satisfy 1 <= m <= Q/q");
        if (S < 1) throw std::invalid_argument("S must be at least 1");
        if (!(p_r > 0.0 && p_r < 1.0))
            throw std::invalid_argument("p_r must lie in (0, 1)");
    }
};

}  // namespace dmac
