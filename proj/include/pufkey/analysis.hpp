#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pufkey/keyflow.hpp"
#include "pufkey/rmcode.hpp"
#include "pufkey/rng.hpp"

namespace pufkey {

struct BscModel {
    double p = 0.0;
};

Bits bsc_sample(Rng& rng, double p, size_t n);

// symbol-level channel seen by the outer decoder after inner ML decoding
struct InnerChannel {
    double pe = 0.0; // wrong symbol
    double pz = 0.0; // declared erasure
};

struct InnerChannelEstimate {
    InnerChannel channel;
    double se_pe = 0.0;
    double se_pz = 0.0;
    uint64_t trials = 0;
};

// zero-codeword Monte Carlo (the code is linear, the channel symmetric);
// trial i draws from stream i of the seed, so results do not depend on jobs
InnerChannelEstimate inner_channel_mc(const RmSpec& spec, const BscModel& model, uint64_t trials,
                                      uint64_t seed, int jobs = 1);

// exact enumeration of all 2^n error patterns
InnerChannel inner_channel_exact(const RmSpec& spec, const BscModel& model);

// Outer-block failure probability in the independent-blocks model: each of n
// positions erases with pz, errs with pe, and the decoder survives t errors
// among nu = n - erasures surviving positions up to its radius at effective
// length nu. Thresholds are integer-exact; accumulation is in log domain.
double block_error_probability(int n, int k, const InnerChannel& channel);            // full radius
double block_error_probability(int n, int k, const InnerChannel& channel, int s_cap); // policy-capped
double block_error_probability_unique(int n, int k, const InnerChannel& channel);

double capacity(const BscModel& model);   // 1 - h(p)
double dispersion(const BscModel& model); // p(1-p) log2^2((1-p)/p)
double q_func(double x);
double q_inverse(double y); // bisection, absolute accuracy 1e-9 in x

// finite-length achievable rate: C - sqrt(V/n) Qinv(p_err) + log2(n)/(2n)
double max_rate(int n, const BscModel& model, double p_err);

struct RateRow {
    std::string label;
    int n = 0;
    int k = 0;
    double p_err = 0.0;
};

struct RateEntry {
    RateRow row;
    double rate = 0.0;  // k/n
    double max = 0.0;   // max_rate at (n, p_err)
    double ratio = 0.0; // rate / max
};

std::vector<RateEntry> rate_table(const std::vector<RateRow>& rows, const BscModel& model);

struct SmallCode {
    int n = 0;
    std::vector<uint32_t> codewords;
};

// H(r | (c' + c + e, w)) in bits by exhaustive joint enumeration: r uniform,
// c uniform on the code, w = r + c, e from the BSC, and c' either 0 (no
// masking) or uniform on the code (codeword masking).
double entropy_bruteforce(const SmallCode& code, const BscModel& model, MaskKind masking);

} // namespace pufkey
