#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pufkey/concat.hpp"
#include "pufkey/gsdecoder.hpp"
#include "pufkey/opcount.hpp"
#include "pufkey/rmcode.hpp"
#include "pufkey/rng.hpp"

namespace pufkey {

struct AuditVerdict {
    bool pass = false;
    std::vector<OpCountReport> reports;
    int first_divergent = -1; // first run whose report differs from run 0
};

// One audited decode: generate an input for this run index from the provided
// stream, execute, and hand back the measured counts.
using AuditedRun = std::function<OpCountReport(int run, Rng& rng)>;

// PASS iff every report is component-wise identical. Run i draws from
// stream i, so runs are reproducible and independent.
AuditVerdict audit(const AuditedRun& run, int runs, uint64_t seed);

// The factories cycle the run index through five input classes: uniform
// random words, codeword plus bounded-weight error, all-zero, all-max,
// and a far (undecodable) word.
AuditedRun gs_audit_run(const RsSpec& spec, const GsParams& params, int erasures,
                        PaddingMode mode = PaddingMode::ByErasureCount);
AuditedRun rm_audit_run(const RmSpec& spec);
AuditedRun concat_audit_run(const ConcatSpec& spec, const ConcatDecodeOptions& opts);

// Same interpolation system, eliminated the textbook way: pivot searches stop
// early and zero factors skip row updates, so counts track the data. The
// harness must flag it.
AuditedRun negative_control_run(const RsSpec& spec, const GsParams& params, int erasures);

} // namespace pufkey
