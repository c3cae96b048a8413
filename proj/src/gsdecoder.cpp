#include "pufkey/gsdecoder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pufkey/errors.hpp"

namespace pufkey {

namespace {

constexpr int kMaxMultiplicity = 4096;

bool radius_feasible(int n, int k, int tau) {
    if (tau < 0 || tau >= n) return false;
    return static_cast<int64_t>(n - tau) * (n - tau) > static_cast<int64_t>(n) * (k - 1);
}

} // namespace

GsParams select_params(int n, int k, int tau) {
    if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("select_params: need 1 <= k < n");
    if (!radius_feasible(n, k, tau))
        throw RadiusTooLarge("radius " + std::to_string(tau) + " infeasible for (" +
                             std::to_string(n) + "," + std::to_string(k) + ")");
    for (int s = 1; s <= kMaxMultiplicity; s++) {
        const int64_t r_cnt = static_cast<int64_t>(n) * s * (s + 1) / 2;
        int64_t cols = 0;
        for (int eta = 0;; eta++) {
            const int64_t d = static_cast<int64_t>(s) * (n - tau) - 1 -
                              static_cast<int64_t>(eta) * (k - 1);
            if (d < 0) break;
            cols += d + 1;
            if (cols > r_cnt) {
                GsParams p;
                p.tau = tau;
                p.s = s;
                p.l = eta;
                p.d_eta.resize(eta + 1);
                for (int e = 0; e <= eta; e++)
                    p.d_eta[e] = s * (n - tau) - 1 - e * (k - 1);
                return p;
            }
        }
    }
    throw RadiusTooLarge("no multiplicity up to " + std::to_string(kMaxMultiplicity));
}

GsParams select_params(const RsSpec& spec, int tau) {
    return select_params(spec.n(), spec.k(), tau);
}

int unique_radius(int n, int k) {
    return (n - k) / 2;
}

int max_list_radius(int n, int k, int s_cap) {
    if (k < 1 || n <= k) return -1;
    for (int tau = n - k; tau >= 0; tau--) {
        if (!radius_feasible(n, k, tau)) continue;
        if (select_params(n, k, tau).s <= s_cap) return tau;
    }
    return -1;
}

namespace {

struct Layout {
    int n_proc = 0;          // positions contributing constraint rows
    int rows = 0;
    int cols = 0;
    std::vector<int> col_of; // prefix offsets: column of (eta, mu) = col_of[eta] + mu
};

Layout make_layout(int n, int erasures, const GsParams& prm, PaddingMode mode) {
    Layout lay;
    lay.n_proc = (mode == PaddingMode::Strict) ? n : n - erasures;
    lay.rows = lay.n_proc * prm.s * (prm.s + 1) / 2;
    lay.col_of.resize(prm.l + 1);
    int c = 0;
    for (int eta = 0; eta <= prm.l; eta++) {
        lay.col_of[eta] = c;
        c += prm.d_eta[eta] + 1;
    }
    lay.cols = c;
    return lay;
}

} // namespace

BivarPoly gs_interpolate(const RsSpec& spec, const GsParams& prm, const Word& r, PaddingMode mode) {
    const Field& f = spec.field();
    const int n = spec.n();
    if (static_cast<int>(r.symbols.size()) != n) throw std::invalid_argument("word length mismatch");
    const Layout lay = make_layout(n, r.erasure_count(), prm, mode);
    const int R = lay.rows, C = lay.cols;
    if (C <= R) throw InternalSolvabilityViolation("interpolation system is not underdetermined");

    // Constraint rows, position-major, (h, j) lexicographic within a position.
    // An erased position in Strict mode gets its rows masked to zero after the
    // same multiplications as a live one.
    std::vector<std::vector<uint32_t>> A;
    A.reserve(R);
    const int dmax = prm.d_eta[0];
    std::vector<uint32_t> pa(dmax + 1), pr(prm.l + 1);
    for (int i = 0; i < n; i++) {
        const bool erased = r.erased[i] != 0;
        if (mode == PaddingMode::ByErasureCount && erased) continue;
        const uint32_t live = erased ? 0 : ~0u;
        pa[0] = 1;
        for (int e = 1; e <= dmax; e++) pa[e] = f.mul(pa[e - 1], spec.locators()[i]);
        pr[0] = 1;
        for (int e = 1; e <= prm.l; e++) pr[e] = f.mul(pr[e - 1], r.symbols[i]);
        for (int h = 0; h < prm.s; h++) {
            for (int j = 0; j < prm.s - h; j++) {
                std::vector<uint32_t> row(C, 0);
                for (int eta = h; eta <= prm.l; eta++) {
                    if (!binom_odd(eta, h)) continue;
                    for (int mu = j; mu <= prm.d_eta[eta]; mu++) {
                        if (!binom_odd(mu, j)) continue;
                        row[lay.col_of[eta] + mu] = f.mul(pa[mu - j], pr[eta - h]) & live;
                    }
                }
                A.push_back(std::move(row));
            }
        }
    }

    // Gauss-Jordan sweep with an unconditional operation pattern: every column
    // gets one inversion, C normalizing multiplications, and a full R-row
    // elimination pass. Pivotless columns run the same pass against a zero
    // scratch row; the already-reduced row eliminates against factor 0.
    std::vector<int> pivot_of_col(C, -1);
    std::vector<uint8_t> used(R, 0);
    std::vector<uint32_t> piv_row(C), zero_row(C, 0);
    for (int c = 0; c < C; c++) {
        int sel = -1;
        for (int row = 0; row < R; row++)
            if (sel < 0 && !used[row] && A[row][c] != 0) sel = row;
        const uint32_t pivot = (sel >= 0) ? A[sel][c] : 1u;
        const uint32_t ipv = f.inv(pivot);
        const std::vector<uint32_t>& src = (sel >= 0) ? A[sel] : zero_row;
        for (int j = 0; j < C; j++) piv_row[j] = f.mul(ipv, src[j]);
        if (sel >= 0) {
            A[sel] = piv_row;
            used[sel] = 1;
            pivot_of_col[c] = sel;
        }
        for (int row = 0; row < R; row++) {
            const uint32_t factor = (row == sel) ? 0 : A[row][c];
            std::vector<uint32_t>& dst = A[row];
            for (int j = 0; j < C; j++) dst[j] = f.add(dst[j], f.mul(factor, piv_row[j]));
        }
    }

    int cstar = -1;
    for (int c = 0; c < C; c++)
        if (pivot_of_col[c] < 0) { cstar = c; break; }
    if (cstar < 0) throw InternalSolvabilityViolation("no free column after elimination");
    std::vector<uint32_t> x(C, 0);
    x[cstar] = 1;
    for (int c = 0; c < C; c++)
        if (pivot_of_col[c] >= 0) x[c] = A[pivot_of_col[c]][cstar];

    BivarPoly q;
    q.rows.reserve(prm.l + 1);
    for (int eta = 0; eta <= prm.l; eta++) {
        UniPoly row = UniPoly::zero(prm.d_eta[eta]);
        for (int mu = 0; mu <= prm.d_eta[eta]; mu++) row.coeffs[mu] = x[lay.col_of[eta] + mu];
        q.rows.push_back(std::move(row));
    }
    return q;
}

namespace {

// One y <- x*y + gamma substitution. Output row h collects gamma^(eta-h) times
// row eta over eta >= h with odd binomial (eta, h), shifted up by x^h.
BivarPoly rr_substitute(const Field& f, const BivarPoly& m, uint32_t gamma) {
    const int l = m.y_cap();
    std::vector<uint32_t> pg(l + 1);
    pg[0] = 1;
    for (int j = 1; j <= l; j++) pg[j] = f.mul(pg[j - 1], gamma);
    BivarPoly out;
    out.rows.reserve(l + 1);
    for (int h = 0; h <= l; h++) {
        int base = 0;
        for (int eta = h; eta <= l; eta++) base = std::max(base, m.x_cap(eta));
        UniPoly dst = UniPoly::zero(h + base);
        for (int eta = h; eta <= l; eta++) {
            if (!binom_odd(eta, h)) continue;
            const uint32_t scale = pg[eta - h];
            const std::vector<uint32_t>& src = m.rows[eta].coeffs;
            for (size_t t = 0; t < src.size(); t++)
                dst.coeffs[h + t] = f.add(dst.coeffs[h + t], f.mul(scale, src[t]));
        }
        out.rows.push_back(std::move(dst));
    }
    return out;
}

// Values c with p(c) = 0, evaluating p over the whole field (full Horner at
// every element, ascending order).
std::vector<uint32_t> roots_of_slice(const Field& f, const UniPoly& p) {
    std::vector<uint32_t> roots;
    for (uint32_t c = 0; c < f.q(); c++) {
        uint32_t acc = 0;
        for (int t = p.capacity(); t >= 0; t--) acc = f.add(f.mul(acc, c), p.coeffs[t]);
        if (acc == 0) roots.push_back(c);
    }
    return roots;
}

BivarPoly random_with_shape(const Field& f, const std::vector<int>& caps, Rng& rng) {
    BivarPoly out;
    out.rows.reserve(caps.size());
    for (int cap : caps) {
        UniPoly row = UniPoly::zero(cap);
        for (uint32_t& v : row.coeffs) v = rng.below(f.q());
        out.rows.push_back(std::move(row));
    }
    out.rows[0].coeffs[0] = 1 + rng.below(f.q() - 1); // keep the pad nonzero
    return out;
}

struct RrSlot {
    BivarPoly m; // substitution output entering this depth, pre-strip
    UniPoly g;   // message prefix, capacity k-1
    bool real = false;
};

// Fixed breadth-first schedule: W = l(k-1) slots at every depth 1..k. Depth d
// in 1..k-1 strips each slot and finds the roots of its y-slice; real slots
// spawn one child per root (ascending) and the depth is padded back to W with
// substitutions on freshly drawn polynomials of the same shape. Depth k only
// checks row 0 for identical vanishing. Each slot visit is one rr step.
std::vector<RrSlot> rr_candidate_slots(const Field& f, const BivarPoly& q_poly, int k, Rng& rng) {
    const int l = q_poly.y_cap();
    const int w_slots = l * (k - 1);

    auto stripped = strip_x_power(q_poly).first;
    std::vector<int> caps(l + 1);
    for (int eta = 0; eta <= l; eta++) caps[eta] = stripped.x_cap(eta);

    std::vector<RrSlot> slots;
    slots.reserve(w_slots);
    auto spawn = [&](const BivarPoly& parent, const UniPoly& g, int depth, uint32_t gamma,
                     bool real) {
        RrSlot child;
        child.m = rr_substitute(f, parent, gamma);
        child.g = g;
        child.g.coeffs[depth] = gamma;
        child.real = real;
        slots.push_back(std::move(child));
    };

    const UniPoly g0 = UniPoly::zero(k - 1);
    for (uint32_t root : roots_of_slice(f, y_slice_at_zero(stripped)))
        spawn(stripped, g0, 0, root, true);
    if (static_cast<int>(slots.size()) > w_slots)
        throw InternalSolvabilityViolation("root count exceeds slot width");
    while (static_cast<int>(slots.size()) < w_slots) {
        const BivarPoly pad_src = random_with_shape(f, caps, rng);
        spawn(pad_src, g0, 0, rng.below(f.q()), false);
    }

    for (int depth = 1; depth < k; depth++) {
        // caps evolve identically for every slot at a depth
        std::vector<int> next_caps(l + 1);
        for (int h = 0; h <= l; h++) {
            int base = 0;
            for (int eta = h; eta <= l; eta++) base = std::max(base, caps[eta]);
            next_caps[h] = h + base;
        }
        caps = std::move(next_caps);

        std::vector<RrSlot> next;
        next.reserve(w_slots);
        for (RrSlot& slot : slots) {
            count_rr();
            auto body = strip_x_power(slot.m).first;
            std::vector<uint32_t> roots = roots_of_slice(f, y_slice_at_zero(body));
            if (slot.real) {
                if (static_cast<int>(next.size()) + static_cast<int>(roots.size()) > w_slots)
                    throw InternalSolvabilityViolation("root count exceeds slot width");
                for (uint32_t root : roots) {
                    RrSlot child;
                    child.m = rr_substitute(f, body, root);
                    child.g = slot.g;
                    child.g.coeffs[depth] = root;
                    child.real = true;
                    next.push_back(std::move(child));
                }
            }
        }
        while (static_cast<int>(next.size()) < w_slots) {
            RrSlot pad;
            const BivarPoly pad_src = random_with_shape(f, caps, rng);
            pad.m = rr_substitute(f, pad_src, rng.below(f.q()));
            pad.g = g0;
            pad.real = false;
            next.push_back(std::move(pad));
        }
        slots = std::move(next);
    }

    for (RrSlot& slot : slots) {
        count_rr();
        bool vanishes = true;
        for (uint32_t v : slot.m.rows[0].coeffs) vanishes &= (v == 0);
        slot.real = slot.real && vanishes;
    }
    return slots;
}

// f(x) with deg f < k determined by messages in slots; pads carry real=false.
std::vector<RrSlot> message_slots(const Field& f, const BivarPoly& q_poly, int k, Rng& rng) {
    if (q_poly.is_zero()) throw ZeroPolynomial();
    const int l = q_poly.y_cap();
    if (k >= 2 && l >= 1) return rr_candidate_slots(f, q_poly, k, rng);

    // k == 1: no substitution depth; scan the constants directly. A slot per
    // field element, valid when q(x, c) is identically zero.
    std::vector<RrSlot> slots;
    slots.reserve(f.q());
    int acc_cap = 0;
    for (int eta = 0; eta <= l; eta++) acc_cap = std::max(acc_cap, q_poly.x_cap(eta));
    for (uint32_t c = 0; c < f.q(); c++) {
        std::vector<uint32_t> pg(l + 1);
        pg[0] = 1;
        for (int j = 1; j <= l; j++) pg[j] = f.mul(pg[j - 1], c);
        std::vector<uint32_t> acc(acc_cap + 1, 0);
        for (int eta = 0; eta <= l; eta++) {
            const std::vector<uint32_t>& src = q_poly.rows[eta].coeffs;
            for (size_t t = 0; t < src.size(); t++) acc[t] = f.add(acc[t], f.mul(pg[eta], src[t]));
        }
        bool zero = true;
        for (uint32_t v : acc) zero &= (v == 0);
        RrSlot slot;
        slot.g = UniPoly::zero(std::max(k - 1, 0));
        slot.g.coeffs[0] = c;
        slot.real = zero && k == 1;
        slots.push_back(std::move(slot));
    }
    return slots;
}

} // namespace

std::vector<UniPoly> gs_root_find(const RsSpec& spec, const BivarPoly& q_poly, uint64_t seed) {
    Rng rng(seed);
    std::vector<UniPoly> out;
    for (RrSlot& slot : message_slots(spec.field(), q_poly, spec.k(), rng))
        if (slot.real) out.push_back(std::move(slot.g));
    return out;
}

DecodeResult decode_list(const RsSpec& spec, const GsParams& params, const Word& r, uint64_t seed,
                         PaddingMode mode) {
    const Field& f = spec.field();
    const int n = spec.n(), k = spec.k();
    if (static_cast<int>(r.symbols.size()) != n) throw std::invalid_argument("word length mismatch");
    const int eps = r.erasure_count();
    if (mode == PaddingMode::ByErasureCount && eps > n - k - 1)
        throw std::invalid_argument("erasure count " + std::to_string(eps) + " exceeds n-k-1");

    CountScope scope;
    GsParams prm =
        (mode == PaddingMode::ByErasureCount) ? select_params(n - eps, k, params.tau) : params;

    BivarPoly q_poly = gs_interpolate(spec, prm, r, mode);
    Rng rng(seed);
    std::vector<RrSlot> slots = message_slots(f, q_poly, k, rng);

    // Every slot is re-encoded and scored; only real slots within radius make
    // the list. Strict mode walks all n positions and masks erased mismatches.
    DecodeResult res;
    for (const RrSlot& slot : slots) {
        int dist = 0;
        for (int i = 0; i < n; i++) {
            const bool erased = r.erased[i] != 0;
            if (mode == PaddingMode::ByErasureCount && erased) continue;
            uint32_t v = 0;
            for (int t = k - 1; t >= 0; t--)
                v = f.add(f.mul(v, spec.locators()[i]), slot.g.coeffs[t]);
            const int mism = (v != r.symbols[i]) & static_cast<int>(erased ? 0u : 1u);
            dist += mism;
        }
        if (slot.real && dist <= prm.tau) res.candidates.push_back({slot.g, dist});
    }
    std::sort(res.candidates.begin(), res.candidates.end(),
              [](const GsCandidate& a, const GsCandidate& b) {
                  if (a.distance != b.distance) return a.distance < b.distance;
                  return a.message.coeffs < b.message.coeffs;
              });
    res.ops = scope.counts();
    return res;
}

DecodeResult decode_unique(const RsSpec& spec, const Word& r, uint64_t seed) {
    const int eps = r.erasure_count();
    const int tau = std::max(0, (spec.n() - spec.k() - eps) / 2);
    GsParams prm;
    prm.tau = tau;
    // (s, l) and the degree caps are re-derived inside decode_list; at this
    // radius the search always lands on s = 1, l = 1.
    DecodeResult res = decode_list(spec, prm, r, seed, PaddingMode::ByErasureCount);
    if (res.candidates.size() > 1)
        throw InternalSolvabilityViolation("multiple candidates inside the unique radius");
    return res;
}

OpCountReport predict_counts(const RsSpec& spec, const GsParams& params, int erasures,
                             PaddingMode mode) {
    const int n = spec.n(), k = spec.k();
    const uint32_t q = spec.field().q();
    if (erasures < 0 || erasures > n ||
        (mode == PaddingMode::ByErasureCount && erasures > n - k - 1))
        throw std::invalid_argument("bad erasure count");
    const GsParams prm = (mode == PaddingMode::ByErasureCount)
                             ? select_params(n - erasures, k, params.tau)
                             : params;
    const Layout lay = make_layout(n, erasures, prm, mode);
    const int l = prm.l;

    OpCountReport ops;
    // interpolation matrix: locator and symbol power tables plus one product
    // per odd-binomial (h, j, eta, mu) tuple, per processed position
    uint64_t tuples = 0;
    for (int h = 0; h < prm.s; h++)
        for (int j = 0; j < prm.s - h; j++)
            for (int eta = h; eta <= l; eta++) {
                if (!binom_odd(eta, h)) continue;
                for (int mu = j; mu <= prm.d_eta[eta]; mu++)
                    if (binom_odd(mu, j)) tuples++;
            }
    ops.muls += static_cast<uint64_t>(lay.n_proc) * (prm.d_eta[0] + l + tuples);

    // elimination: per column one inversion, C normalizations, and C products
    // plus C additions for each of the R rows
    const uint64_t R = lay.rows, C = lay.cols;
    ops.invs += C;
    ops.muls += C * C * (1 + R);
    ops.adds += C * C * R;

    std::vector<int> caps = prm.d_eta;
    auto eval_cost = [](int capacity) { return static_cast<uint64_t>(capacity) + 1; };
    if (k >= 2 && l >= 1) {
        const uint64_t w_slots = static_cast<uint64_t>(l) * (k - 1);
        // depth-0 slice roots
        ops.muls += q * eval_cost(l);
        ops.adds += q * eval_cost(l);
        for (int depth = 1; depth <= k; depth++) {
            // W substitutions from the previous depth's shape
            uint64_t sub_m = l, sub_a = 0;
            for (int h = 0; h <= l; h++)
                for (int eta = h; eta <= l; eta++)
                    if (binom_odd(eta, h)) {
                        sub_m += caps[eta] + 1;
                        sub_a += caps[eta] + 1;
                    }
            ops.muls += w_slots * sub_m;
            ops.adds += w_slots * sub_a;
            std::vector<int> next_caps(l + 1);
            for (int h = 0; h <= l; h++) {
                int base = 0;
                for (int eta = h; eta <= l; eta++) base = std::max(base, caps[eta]);
                next_caps[h] = h + base;
            }
            caps = std::move(next_caps);
            ops.rr_calls += w_slots;
            if (depth < k) {
                ops.muls += w_slots * q * eval_cost(l);
                ops.adds += w_slots * q * eval_cost(l);
            }
        }
        // validation: every slot re-encoded over the processed positions
        ops.muls += w_slots * lay.n_proc * k;
        ops.adds += w_slots * lay.n_proc * k;
    } else {
        // k == 1 constant scan plus validation of q slots
        uint64_t row_terms = 0;
        for (int eta = 0; eta <= l; eta++) row_terms += caps[eta] + 1;
        ops.muls += static_cast<uint64_t>(q) * (l + row_terms);
        ops.adds += static_cast<uint64_t>(q) * row_terms;
        ops.muls += static_cast<uint64_t>(q) * lay.n_proc * k;
        ops.adds += static_cast<uint64_t>(q) * lay.n_proc * k;
    }
    return ops;
}

} // namespace pufkey
