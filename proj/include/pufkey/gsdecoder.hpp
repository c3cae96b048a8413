#pragma once

#include <cstdint>
#include <vector>

#include "pufkey/opcount.hpp"
#include "pufkey/polyring.hpp"
#include "pufkey/rng.hpp"
#include "pufkey/rscode.hpp"

namespace pufkey {

// Interpolation parameters for list decoding at radius tau: multiplicity s,
// y-degree l, x-degree caps d_eta = s(n-tau)-1-eta(k-1).
struct GsParams {
    int tau = 0;
    int s = 0;
    int l = 0;
    std::vector<int> d_eta;
};

// Minimal s, then minimal l for that s, satisfying the degree nonnegativity
// and solvability constraints. Throws RadiusTooLarge when tau reaches the
// n - sqrt(n(k-1)) limit (checked integer-exactly).
GsParams select_params(int n, int k, int tau);
GsParams select_params(const RsSpec& spec, int tau);

int unique_radius(int n, int k); // floor((d-1)/2)

// Largest tau accepted by select_params whose multiplicity stays <= s_cap;
// -1 when no radius is feasible (n <= k).
int max_list_radius(int n, int k, int s_cap = 0x7fffffff);

// ByErasureCount: the constraint system covers the non-erased positions and
// (s, l) are re-derived for the effective length, so op counts are a function
// of how many positions are erased but not which. Strict: nominal parameters,
// all n positions processed with erased rows masked to zero, so counts do not
// depend on the erasure count either; the guaranteed list radius degrades to
// tau - (erasure count) in exchange.
enum class PaddingMode { ByErasureCount, Strict };

BivarPoly gs_interpolate(const RsSpec& spec, const GsParams& params, const Word& r,
                         PaddingMode mode = PaddingMode::ByErasureCount);

// All f with (y - f(x)) | Q and deg f < k, via the fixed-width breadth-first
// schedule (l(k-1) slots per depth, random padding excluded from the result).
std::vector<UniPoly> gs_root_find(const RsSpec& spec, const BivarPoly& Q, uint64_t seed);

struct GsCandidate {
    UniPoly message;
    int distance = 0;
    bool operator==(const GsCandidate&) const = default;
};

struct DecodeResult {
    std::vector<GsCandidate> candidates; // sorted by distance, then message lex order
    OpCountReport ops;
};

DecodeResult decode_list(const RsSpec& spec, const GsParams& params, const Word& r, uint64_t seed,
                         PaddingMode mode = PaddingMode::ByErasureCount);

// decode_list at radius floor((d-1-erasures)/2), where the parameter search
// lands on (s=1, l=1); at most one candidate survives
DecodeResult decode_unique(const RsSpec& spec, const Word& r, uint64_t seed);

// Closed-form mirror of decode_list's operation schedule; audit checks
// measured == predicted.
OpCountReport predict_counts(const RsSpec& spec, const GsParams& params, int erasures,
                             PaddingMode mode = PaddingMode::ByErasureCount);

} // namespace pufkey
