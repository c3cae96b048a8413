#include "pufkey/analysis.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pufkey/errors.hpp"
#include "pufkey/gsdecoder.hpp"

namespace pufkey {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double log_binom_pmf(int n, int k, double p) {
    if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
    if (p >= 1.0) return k == n ? 0.0 : kNegInf;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           k * std::log(p) + (n - k) * std::log1p(-p);
}

// log P(X >= t_min) for X ~ Binom(nu, p)
double log_binom_tail(int nu, double p, int t_min) {
    if (t_min <= 0) return 0.0;
    if (t_min > nu) return kNegInf;
    double acc = kNegInf;
    for (int t = t_min; t <= nu; t++) acc = log_add(acc, log_binom_pmf(nu, t, p));
    return acc;
}

int johnson_radius(int nu, int k) {
    int best = -1;
    for (int tau = 0; tau < nu; tau++) {
        if (static_cast<int64_t>(nu - tau) * (nu - tau) > static_cast<int64_t>(nu) * (k - 1))
            best = tau;
        else
            break;
    }
    return best;
}

void check_channel(const InnerChannel& ch) {
    if (ch.pe < 0 || ch.pz < 0 || ch.pe + ch.pz > 1)
        throw std::invalid_argument("channel probabilities out of range");
}

// shared trinomial accumulator: fail_from(eps) gives the smallest failing
// error count at that erasure level (<= 0 means certain failure)
template <typename FailFrom>
double trinomial_failure(int n, const InnerChannel& ch, FailFrom fail_from) {
    check_channel(ch);
    const double cond_pe = (ch.pz >= 1.0) ? 0.0 : ch.pe / (1.0 - ch.pz);
    double acc = kNegInf;
    for (int eps = 0; eps <= n; eps++) {
        const double lw = log_binom_pmf(n, eps, ch.pz);
        if (lw == kNegInf) continue;
        const double tail = log_binom_tail(n - eps, cond_pe, fail_from(eps));
        if (tail == kNegInf) continue;
        acc = log_add(acc, lw + tail);
    }
    return std::exp(acc);
}

} // namespace

Bits bsc_sample(Rng& rng, double p, size_t n) {
    if (p < 0 || p > 1) throw std::invalid_argument("bsc_sample: p out of range");
    Bits e(n);
    for (uint8_t& b : e) b = rng.next_double() < p ? 1 : 0;
    return e;
}

InnerChannelEstimate inner_channel_mc(const RmSpec& spec, const BscModel& model, uint64_t trials,
                                      uint64_t seed, int jobs) {
    if (trials == 0) throw std::invalid_argument("inner_channel_mc: need trials > 0");
    if (jobs < 1) jobs = 1;
    const uint64_t workers = std::min<uint64_t>(jobs, trials);

    std::vector<uint64_t> errs(workers, 0), eras(workers, 0);
    auto body = [&](uint64_t w) {
        const uint64_t lo = trials * w / workers, hi = trials * (w + 1) / workers;
        uint64_t e_cnt = 0, z_cnt = 0;
        Bits word(spec.n());
        for (uint64_t t = lo; t < hi; t++) {
            Rng rng(seed, t);
            for (int i = 0; i < spec.n(); i++)
                word[i] = rng.next_double() < model.p ? 1 : 0;
            const std::optional<uint32_t> out = ml_decode(spec, word, rng);
            if (!out)
                z_cnt++;
            else if (*out != 0)
                e_cnt++;
        }
        errs[w] = e_cnt;
        eras[w] = z_cnt;
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (uint64_t w = 0; w < workers; w++) pool.emplace_back(body, w);
        for (std::thread& th : pool) th.join();
    }

    uint64_t e_total = 0, z_total = 0;
    for (uint64_t w = 0; w < workers; w++) {
        e_total += errs[w];
        z_total += eras[w];
    }
    InnerChannelEstimate est;
    est.trials = trials;
    est.channel.pe = static_cast<double>(e_total) / trials;
    est.channel.pz = static_cast<double>(z_total) / trials;
    est.se_pe = std::sqrt(est.channel.pe * (1 - est.channel.pe) / trials);
    est.se_pz = std::sqrt(est.channel.pz * (1 - est.channel.pz) / trials);
    return est;
}

InnerChannel inner_channel_exact(const RmSpec& spec, const BscModel& model) {
    const int n = spec.n();
    if (n > 24 || static_cast<uint64_t>(spec.words_per_cw()) << (n + spec.k()) > (1ull << 28))
        throw InstanceTooLarge("inner channel enumeration over 2^" + std::to_string(n) +
                               " patterns");
    const std::vector<uint64_t>& book = spec.codebook();

    std::vector<double> pw(n + 1);
    for (int w = 0; w <= n; w++)
        pw[w] = std::pow(model.p, w) * std::pow(1 - model.p, n - w);

    InnerChannel ch;
    const uint32_t count = 1u << spec.k();
    for (uint64_t pattern = 0; pattern < (1ull << n); pattern++) {
        int best = n + 1, ties = 0;
        uint32_t best_msg = 0;
        for (uint32_t msg = 0; msg < count; msg++) {
            const int dist = std::popcount(book[msg] ^ pattern); // single-word codebooks only
            if (dist < best) {
                best = dist;
                best_msg = msg;
                ties = 1;
            } else if (dist == best) {
                ties++;
            }
        }
        const double prob = pw[std::popcount(pattern)];
        if (ties > 1)
            ch.pz += prob;
        else if (best_msg != 0)
            ch.pe += prob;
    }
    return ch;
}

double block_error_probability(int n, int k, const InnerChannel& ch) {
    return trinomial_failure(n, ch, [&](int eps) { return johnson_radius(n - eps, k) + 1; });
}

double block_error_probability(int n, int k, const InnerChannel& ch, int s_cap) {
    return trinomial_failure(n, ch, [&](int eps) {
        if (eps > n - k - 1) return 0; // outer decoder cannot even start
        return max_list_radius(n - eps, k, s_cap) + 1;
    });
}

double block_error_probability_unique(int n, int k, const InnerChannel& ch) {
    return trinomial_failure(n, ch, [&](int eps) {
        const int num = n - k + 1 - eps; // failure iff 2t + eps >= n-k+1
        return num <= 0 ? 0 : (num + 1) / 2;
    });
}

double capacity(const BscModel& model) {
    const double p = model.p;
    if (p < 0 || p > 0.5) throw std::invalid_argument("capacity: need 0 <= p <= 0.5");
    if (p == 0) return 1.0;
    const double h = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    return 1.0 - h;
}

double dispersion(const BscModel& model) {
    const double p = model.p;
    if (p < 0 || p > 0.5) throw std::invalid_argument("dispersion: need 0 <= p <= 0.5");
    if (p == 0) return 0.0;
    const double lr = std::log2((1 - p) / p);
    return p * (1 - p) * lr * lr;
}

double q_func(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double q_inverse(double y) {
    if (y <= 0 || y >= 1) throw std::invalid_argument("q_inverse: need 0 < y < 1");
    double lo = -10.0, hi = 60.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (q_func(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double max_rate(int n, const BscModel& model, double p_err) {
    if (n < 2) throw std::invalid_argument("max_rate: need n >= 2");
    const double c = capacity(model);
    const double v = dispersion(model);
    return c - std::sqrt(v / n) * q_inverse(p_err) + std::log2(static_cast<double>(n)) / (2.0 * n);
}

std::vector<RateEntry> rate_table(const std::vector<RateRow>& rows, const BscModel& model) {
    std::vector<RateEntry> out;
    out.reserve(rows.size());
    for (const RateRow& row : rows) {
        RateEntry e;
        e.row = row;
        e.rate = static_cast<double>(row.k) / row.n;
        e.max = max_rate(row.n, model, row.p_err);
        e.ratio = e.rate / e.max;
        out.push_back(std::move(e));
    }
    return out;
}

double entropy_bruteforce(const SmallCode& code, const BscModel& model, MaskKind masking) {
    if (masking == MaskKind::Permutation)
        throw std::invalid_argument("entropy_bruteforce: codeword masking or none");
    const int n = code.n;
    const uint64_t size = code.codewords.size();
    if (n < 1 || n > 20 || size < 1) throw std::invalid_argument("entropy_bruteforce: bad code");
    const uint64_t masks = (masking == MaskKind::Codeword) ? size : 1;
    if ((1ull << (2 * n)) * size * masks > (1ull << 24))
        throw InstanceTooLarge("entropy enumeration too large");

    std::vector<double> pw(n + 1);
    for (int w = 0; w <= n; w++)
        pw[w] = std::pow(model.p, w) * std::pow(1 - model.p, n - w);

    // With w = r + c and r uniform, p(r = w + c, v, w) factors through
    // d(c, v) = avg over masks c' of P(e = v + c' + c); summing the helper w
    // out leaves H = -(1/|C|) sum_{v,c} d log2(d / s(v)) with s(v) = sum_c d.
    double entropy = 0.0;
    std::vector<double> d(size);
    for (uint32_t v = 0; v < (1u << n); v++) {
        double s = 0.0;
        for (uint64_t ci = 0; ci < size; ci++) {
            double acc = 0.0;
            if (masking == MaskKind::Codeword) {
                for (uint64_t mi = 0; mi < size; mi++)
                    acc += pw[std::popcount(v ^ code.codewords[mi] ^ code.codewords[ci])];
                acc /= static_cast<double>(size);
            } else {
                acc = pw[std::popcount(v ^ code.codewords[ci])];
            }
            d[ci] = acc;
            s += acc;
        }
        for (uint64_t ci = 0; ci < size; ci++)
            if (d[ci] > 0) entropy -= d[ci] * std::log2(d[ci] / s);
    }
    return entropy / static_cast<double>(size);
}

} // namespace pufkey
