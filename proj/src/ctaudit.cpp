#include "pufkey/ctaudit.hpp"

#include <algorithm>
#include <stdexcept>

namespace pufkey {

AuditVerdict audit(const AuditedRun& run, int runs, uint64_t seed) {
    if (runs < 2) throw std::invalid_argument("audit: need at least two runs");
    AuditVerdict verdict;
    verdict.reports.reserve(runs);
    for (int i = 0; i < runs; i++) {
        Rng rng(seed, static_cast<uint64_t>(i));
        verdict.reports.push_back(run(i, rng));
    }
    verdict.pass = true;
    for (int i = 1; i < runs; i++) {
        if (!(verdict.reports[i] == verdict.reports[0])) {
            verdict.pass = false;
            verdict.first_divergent = i;
            break;
        }
    }
    return verdict;
}

namespace {

std::vector<int> pick_positions(Rng& rng, int n, int count) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; i++) idx[i] = i;
    for (int i = 0; i < count; i++) {
        const int j = i + static_cast<int>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    return idx;
}

// five generator classes shared by the RS-word audits
Word make_rs_input(const RsSpec& spec, const GsParams& prm, int erasures, int run, Rng& rng) {
    const Field& f = spec.field();
    const int n = spec.n();
    const uint32_t q = f.q();
    Word w;
    w.symbols.assign(n, 0);
    w.erased.assign(n, 0);
    switch (run % 5) {
    case 0:
        for (int i = 0; i < n; i++) w.symbols[i] = rng.below(q);
        break;
    case 1: {
        w.symbols = rs_encode(spec, rs_random_message(spec, rng)).symbols;
        const int weight = static_cast<int>(rng.below(prm.tau + 1));
        for (int pos : pick_positions(rng, n, weight))
            w.symbols[pos] = f.add_uncounted(w.symbols[pos], 1 + rng.below(q - 1));
        break;
    }
    case 2:
        break; // all zero
    case 3:
        for (int i = 0; i < n; i++) w.symbols[i] = q - 1;
        break;
    default: {
        w.symbols = rs_encode(spec, rs_random_message(spec, rng)).symbols;
        const int weight = std::min(n, prm.tau + spec.d() / 2 + 1);
        for (int pos : pick_positions(rng, n, weight))
            w.symbols[pos] = f.add_uncounted(w.symbols[pos], 1 + rng.below(q - 1));
        break;
    }
    }
    for (int pos : pick_positions(rng, n, erasures)) {
        w.erased[pos] = 1;
        w.symbols[pos] = 0;
    }
    return w;
}

Bits make_bit_input(int n, int dist_bound, const std::function<Bits(Rng&)>& codeword, int run,
                    Rng& rng) {
    Bits b(n, 0);
    switch (run % 5) {
    case 0:
        for (int i = 0; i < n; i++) b[i] = static_cast<uint8_t>(rng.below(2));
        break;
    case 1: {
        b = codeword(rng);
        const int weight = static_cast<int>(rng.below(dist_bound / 2 + 1));
        for (int pos : pick_positions(rng, n, weight)) b[pos] ^= 1;
        break;
    }
    case 2:
        break;
    case 3:
        b.assign(n, 1);
        break;
    default: {
        b = codeword(rng);
        for (int pos : pick_positions(rng, n, std::min(n, dist_bound))) b[pos] ^= 1;
        break;
    }
    }
    return b;
}

} // namespace

AuditedRun gs_audit_run(const RsSpec& spec, const GsParams& params, int erasures,
                        PaddingMode mode) {
    return [spec, params, erasures, mode](int run, Rng& rng) {
        const Word w = make_rs_input(spec, params, erasures, run, rng);
        return decode_list(spec, params, w, rng.next_u64(), mode).ops;
    };
}

AuditedRun rm_audit_run(const RmSpec& spec) {
    auto codeword = [spec](Rng& rng) { return rm_encode(spec, rng.below(1u << spec.k())); };
    return [spec, codeword](int run, Rng& rng) {
        const Bits b = make_bit_input(spec.n(), spec.min_distance(), codeword, run, rng);
        CountScope scope;
        ml_decode(spec, b, rng);
        return scope.counts();
    };
}

AuditedRun concat_audit_run(const ConcatSpec& spec, const ConcatDecodeOptions& opts) {
    auto codeword = [spec](Rng& rng) {
        Bits msg(spec.k());
        for (uint8_t& bit : msg) bit = static_cast<uint8_t>(rng.below(2));
        return concat_encode(spec, msg);
    };
    return [spec, opts, codeword](int run, Rng& rng) {
        const Bits b = make_bit_input(spec.n(), spec.min_distance_bound(), codeword, run, rng);
        return concat_decode(spec, b, rng.next_u64(), opts).ops;
    };
}

AuditedRun negative_control_run(const RsSpec& spec, const GsParams& params, int erasures) {
    return [spec, params, erasures](int run, Rng& rng) {
        const Field& f = spec.field();
        const Word w = make_rs_input(spec, params, erasures, run, rng);

        // same constraint system as the hardened path, built without counting
        std::vector<std::vector<uint32_t>> a;
        const int dmax = params.d_eta[0];
        std::vector<int> col_of(params.l + 1);
        int cols = 0;
        for (int eta = 0; eta <= params.l; eta++) {
            col_of[eta] = cols;
            cols += params.d_eta[eta] + 1;
        }
        std::vector<uint32_t> pa(dmax + 1), pr(params.l + 1);
        for (int i = 0; i < spec.n(); i++) {
            if (w.erased[i]) continue;
            pa[0] = 1;
            for (int e = 1; e <= dmax; e++) pa[e] = f.mul_uncounted(pa[e - 1], spec.locators()[i]);
            pr[0] = 1;
            for (int e = 1; e <= params.l; e++) pr[e] = f.mul_uncounted(pr[e - 1], w.symbols[i]);
            for (int h = 0; h < params.s; h++)
                for (int j = 0; j < params.s - h; j++) {
                    std::vector<uint32_t> row(cols, 0);
                    for (int eta = h; eta <= params.l; eta++) {
                        if (!binom_odd(eta, h)) continue;
                        for (int mu = j; mu <= params.d_eta[eta]; mu++)
                            if (binom_odd(mu, j))
                                row[col_of[eta] + mu] = f.mul_uncounted(pa[mu - j], pr[eta - h]);
                    }
                    a.push_back(std::move(row));
                }
        }

        // textbook elimination: first-hit pivot search, zero factors skipped
        CountScope scope;
        const int rows = static_cast<int>(a.size());
        std::vector<uint8_t> used(rows, 0);
        for (int c = 0; c < cols; c++) {
            int sel = -1;
            for (int r = 0; r < rows; r++) {
                if (!used[r] && a[r][c] != 0) {
                    sel = r;
                    break;
                }
            }
            if (sel < 0) continue;
            used[sel] = 1;
            const uint32_t ipv = f.inv(a[sel][c]);
            for (int j = 0; j < cols; j++)
                if (a[sel][j] != 0) a[sel][j] = f.mul(ipv, a[sel][j]);
            for (int r = 0; r < rows; r++) {
                if (r == sel || a[r][c] == 0) continue;
                const uint32_t factor = a[r][c];
                for (int j = 0; j < cols; j++)
                    if (a[sel][j] != 0) a[r][j] = f.add(a[r][j], f.mul(factor, a[sel][j]));
            }
        }
        (void)run;
        return scope.counts();
    };
}

} // namespace pufkey
