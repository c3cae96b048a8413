#include "pufkey/rmcode.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "pufkey/errors.hpp"
#include "pufkey/opcount.hpp"

namespace pufkey {

namespace {

constexpr uint64_t kMaxCodebookWords = 1ull << 24;

void encode_rec(int r, int m, const uint8_t* msg, uint8_t* out) {
    const int n = 1 << m;
    if (r == m) {
        for (int i = 0; i < n; i++) out[i] = msg[i];
        return;
    }
    if (r == 0) {
        for (int i = 0; i < n; i++) out[i] = msg[0];
        return;
    }
    if (r == m - 1) {
        uint8_t parity = 0;
        for (int i = 0; i < n - 1; i++) {
            out[i] = msg[i];
            parity ^= msg[i];
        }
        out[n - 1] = parity;
        return;
    }
    const int ka = rm_dimension(r, m - 1);
    const int half = n / 2;
    encode_rec(r, m - 1, msg, out);
    encode_rec(r - 1, m - 1, msg + ka, out + half);
    for (int i = 0; i < half; i++) out[half + i] ^= out[i];
}

void pack_bits(const Bits& bits, std::vector<uint64_t>& words) {
    for (uint64_t& w : words) w = 0;
    for (size_t j = 0; j < bits.size(); j++)
        words[j / 64] |= static_cast<uint64_t>(bits[j] & 1) << (j % 64);
}

} // namespace

int rm_dimension(int r, int m) {
    int64_t k = 0, c = 1;
    for (int i = 0; i <= r; i++) {
        k += c;
        c = c * (m - i) / (i + 1);
    }
    return static_cast<int>(k);
}

RmSpec::RmSpec(int r, int m) : r_(r), m_(m) {
    if (m < 1 || m > 20 || r < 0 || r > m)
        throw std::invalid_argument("rm: need 1 <= m <= 20 and 0 <= r <= m");
    n_ = 1 << m_;
    k_ = rm_dimension(r_, m_);
    if (k_ <= 16) {
        const uint64_t words = (1ull << k_) * words_per_cw();
        if (words <= kMaxCodebookWords) {
            codebook_.assign(words, 0);
            Bits cw(n_);
            std::vector<uint64_t> packed(words_per_cw());
            for (uint32_t msg = 0; msg < (1u << k_); msg++) {
                cw = rm_encode(*this, msg);
                pack_bits(cw, packed);
                for (int w = 0; w < words_per_cw(); w++)
                    codebook_[static_cast<uint64_t>(msg) * words_per_cw() + w] = packed[w];
            }
        }
    }
}

const std::vector<uint64_t>& RmSpec::codebook() const {
    if (codebook_.empty())
        throw InstanceTooLarge("no codebook for RM(" + std::to_string(r_) + "," +
                               std::to_string(m_) + ")");
    return codebook_;
}

Bits rm_encode(const RmSpec& spec, const Bits& msg) {
    if (static_cast<int>(msg.size()) != spec.k())
        throw std::invalid_argument("rm_encode: message must have k bits");
    Bits out(spec.n(), 0);
    encode_rec(spec.r(), spec.m(), msg.data(), out.data());
    return out;
}

Bits rm_encode(const RmSpec& spec, uint32_t msg) {
    if (spec.k() < 32 && (msg >> spec.k()) != 0)
        throw std::invalid_argument("rm_encode: message out of range");
    Bits m(spec.k());
    for (int i = 0; i < spec.k(); i++) m[i] = (msg >> i) & 1;
    return rm_encode(spec, m);
}

std::optional<uint32_t> ml_decode(const RmSpec& spec, const Bits& received, Rng& rng) {
    if (static_cast<int>(received.size()) != spec.n())
        throw std::invalid_argument("ml_decode: word must have n bits");
    const std::vector<uint64_t>& book = spec.codebook();
    const int wpc = spec.words_per_cw();
    const uint32_t count = 1u << spec.k();

    std::vector<uint32_t> order(count);
    for (uint32_t i = 0; i < count; i++) order[i] = i;
    for (uint32_t i = count - 1; i > 0; i--) std::swap(order[i], order[rng.below(i + 1)]);

    std::vector<uint64_t> packed(wpc);
    pack_bits(received, packed);

    int best = spec.n() + 1;
    uint32_t best_msg = 0;
    bool tie = false;
    for (uint32_t i = 0; i < count; i++) {
        const uint32_t msg = order[i];
        const uint64_t* cw = book.data() + static_cast<uint64_t>(msg) * wpc;
        int dist = 0;
        for (int w = 0; w < wpc; w++) dist += std::popcount(cw[w] ^ packed[w]);
        if (dist < best) {
            best = dist;
            best_msg = msg;
            tie = false;
        } else if (dist == best) {
            tie = true;
        }
    }
    count_bit_ops(static_cast<uint64_t>(count) * wpc);
    if (tie) return std::nullopt;
    return best_msg;
}

std::vector<int> distance_profile(const RmSpec& spec, const Bits& received) {
    if (static_cast<int>(received.size()) != spec.n())
        throw std::invalid_argument("distance_profile: word must have n bits");
    const std::vector<uint64_t>& book = spec.codebook();
    const int wpc = spec.words_per_cw();
    std::vector<uint64_t> packed(wpc);
    pack_bits(received, packed);
    std::vector<int> profile(spec.n() + 1, 0);
    for (uint32_t msg = 0; msg < (1u << spec.k()); msg++) {
        const uint64_t* cw = book.data() + static_cast<uint64_t>(msg) * wpc;
        int dist = 0;
        for (int w = 0; w < wpc; w++) dist += std::popcount(cw[w] ^ packed[w]);
        profile[dist]++;
    }
    return profile;
}

} // namespace pufkey
