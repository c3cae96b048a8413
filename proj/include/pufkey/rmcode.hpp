#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pufkey/rng.hpp"

namespace pufkey {

using Bits = std::vector<uint8_t>; // one bit per byte, values 0/1

int rm_dimension(int r, int m);

// RM(r, m): length 2^m, minimum distance 2^(m-r). Encoding is the (a | a+b)
// recursion with three base cases: r = 0 repetition, r = m - 1 single parity
// check (message bits first, parity bit last), r = m identity. The first
// rm_dimension(r, m-1) message bits feed the left half.
class RmSpec {
  public:
    RmSpec(int r, int m);

    int r() const { return r_; }
    int m() const { return m_; }
    int n() const { return n_; }
    int k() const { return k_; }
    int min_distance() const { return 1 << (m_ - r_); }
    int words_per_cw() const { return (n_ + 63) / 64; }

    bool has_codebook() const { return !codebook_.empty(); }
    // packed codewords, message-indexed; bit j of codeword i lives at
    // codebook()[i * words_per_cw() + j/64] bit (j % 64)
    const std::vector<uint64_t>& codebook() const;

  private:
    int r_, m_, n_, k_;
    std::vector<uint64_t> codebook_;
};

// message bit i = bit i of msg (so codebook index == message value)
Bits rm_encode(const RmSpec& spec, uint32_t msg);
Bits rm_encode(const RmSpec& spec, const Bits& msg);

// Full-codebook minimum-distance scan in a fresh random order; the scan
// always touches every codeword. A unique minimizer decodes to its message,
// a tie reports an erasure (nullopt).
std::optional<uint32_t> ml_decode(const RmSpec& spec, const Bits& received, Rng& rng);

// histogram over distances to all codewords: profile[d] = #codewords at d
std::vector<int> distance_profile(const RmSpec& spec, const Bits& received);

} // namespace pufkey
