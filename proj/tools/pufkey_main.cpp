#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pufkey/analysis.hpp"
#include "pufkey/concat.hpp"
#include "pufkey/ctaudit.hpp"
#include "pufkey/errors.hpp"
#include "pufkey/gsdecoder.hpp"
#include "pufkey/keyflow.hpp"
#include "pufkey/textio.hpp"

using namespace pufkey;

namespace {

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Options {
    uint64_t seed = 1;
    std::string code;
    int jobs = 1;
    std::string out;

    int tau = -1;
    std::string mask = "none";
    std::string helper_path;
    std::string response_path;
    double p = 0.14;
    double p_repro = 0.0;
    uint64_t trials = 100000;
    int runs = 20;
    int erasures = 0;
    int s_cap = 3;
    bool strict = false;
    bool negative = false;
    bool table1 = false;
    bool tau_set = false;
};

std::string load_config_text(const std::string& arg) {
    if (arg.empty()) throw std::invalid_argument("--code is required");
    if (arg.find('=') != std::string::npos) return arg; // inline config
    return read_text_file(arg);
}

MaskKind mask_from_name(const std::string& name) {
    if (name == "none") return MaskKind::None;
    if (name == "codeword") return MaskKind::Codeword;
    if (name == "permutation") return MaskKind::Permutation;
    throw std::invalid_argument("unknown mask kind: " + name);
}

Bits random_bits(Rng& rng, size_t count) {
    Bits out(count);
    for (uint8_t& b : out) b = static_cast<uint8_t>(rng.below(2));
    return out;
}

void print_ops(const OpCountReport& ops) {
    std::cout << "adds=" << ops.adds << " muls=" << ops.muls << " invs=" << ops.invs
              << " rr=" << ops.rr_calls << " bits=" << ops.bit_ops << "\n";
}

int run_params(const Options& opt) {
    const ParsedConfig cfg = parse_kv(load_config_text(opt.code));
    const RsSpec spec = rs_from_config(cfg);
    std::cout << "n=" << spec.n() << " k=" << spec.k() << " d=" << spec.d() << "\n";
    std::cout << "unique_radius=" << unique_radius(spec.n(), spec.k()) << "\n";
    std::cout << "list_radius=" << max_list_radius(spec.n(), spec.k()) << "\n";
    if (opt.tau_set) {
        const GsParams prm = select_params(spec, opt.tau);
        std::cout << "tau=" << prm.tau << " s=" << prm.s << " l=" << prm.l << "\n";
    }
    return 0;
}

int run_enroll(const Options& opt) {
    const ConcatSpec spec = concat_from_config(parse_kv(load_config_text(opt.code)));
    Rng resp_rng(opt.seed, 7);
    const Bits response = random_bits(resp_rng, spec.n());
    const HelperBundle bundle = enroll(spec, response, opt.seed, mask_from_name(opt.mask));

    const std::filesystem::path dir = opt.out.empty() ? "." : opt.out;
    std::filesystem::create_directories(dir);
    write_text_file((dir / "helper.txt").string(), helper_bundle_to_text(bundle));
    write_text_file((dir / "response.txt").string(), bits_to_hex(response) + "\n");
    std::cout << "helper=" << (dir / "helper.txt").string() << "\n";
    std::cout << "response=" << (dir / "response.txt").string() << "\n";
    return 0;
}

int run_reproduce(const Options& opt) {
    const ConcatSpec spec = concat_from_config(parse_kv(load_config_text(opt.code)));
    if (opt.helper_path.empty() || opt.response_path.empty())
        throw std::invalid_argument("reproduce needs --helper and --response");
    const HelperBundle bundle =
        helper_bundle_from_text(read_text_file(opt.helper_path), spec.n(), spec.outer().n());

    std::string resp_text = read_text_file(opt.response_path);
    while (!resp_text.empty() && (resp_text.back() == '\n' || resp_text.back() == '\r'))
        resp_text.pop_back();
    const Bits response = hex_to_bits(resp_text, spec.n());

    Rng noise_rng(opt.seed, 99);
    const Bits noisy = xor_bits(response, bsc_sample(noise_rng, opt.p_repro, spec.n()));

    ConcatDecodeOptions dopts;
    dopts.s_cap = opt.s_cap;
    dopts.mode = opt.strict ? PaddingMode::Strict : PaddingMode::ByErasureCount;
    const ReproductionOutcome out = reproduce(spec, bundle, noisy, opt.tau, opt.seed, {}, dopts);

    const bool ok = out.status == ReproduceStatus::Success;
    std::cout << "status=" << (ok ? "success" : "failure") << "\n";
    std::cout << "inner_erasures=" << out.inner_erasures << "\n";
    print_ops(out.ops);
    const std::string key_text = ok ? bits_to_hex(out.key) : "FAILURE";
    if (!opt.out.empty()) {
        const std::filesystem::path dir = opt.out;
        std::filesystem::create_directories(dir);
        write_text_file((dir / "key.txt").string(), key_text + "\n");
    }
    std::cout << "key=" << key_text << "\n";
    return ok ? 0 : 1;
}

int run_analyze(const Options& opt) {
    const BscModel model{opt.p};
    if (opt.table1) {
        const std::vector<RateRow> rows = {
            {"bch-rep", 2226, 174, 1.0e-9},
            {"rs-rm-unique", 1152, 132, 1.2e-10},
            {"rs-rm-list", 1088, 132, 2.0e-10},
        };
        std::cout << fmt("%-14s %6s %8s %8s %8s\n", "label", "n", "R", "R*", "R/R*");
        for (const RateEntry& e : rate_table(rows, model)) {
            std::cout << fmt("%-14s %6d %8.4f %8.4f %8.4f\n", e.row.label.c_str(), e.row.n,
                             e.rate, e.max, e.ratio);
            std::cout << e.row.label << ".r_star=" << fmt("%.4f", e.max) << "\n";
            std::cout << e.row.label << ".ratio=" << fmt("%.4f", e.ratio) << "\n";
        }
        return 0;
    }

    const ConcatSpec spec = concat_from_config(parse_kv(load_config_text(opt.code)));
    const InnerChannelEstimate est =
        inner_channel_mc(spec.inner(), model, opt.trials, opt.seed, opt.jobs);
    const int n = spec.outer().n(), k = spec.outer().k();
    const double p_list = block_error_probability(n, k, est.channel);
    const double p_capped = block_error_probability(n, k, est.channel, opt.s_cap);
    const double p_unique = block_error_probability_unique(n, k, est.channel);

    std::cout << fmt("%-22s %s\n", "inner code", fmt("RM(%d,%d)", spec.inner().r(),
                                                     spec.inner().m()).c_str());
    std::cout << fmt("%-22s %s\n", "outer code",
                     fmt("RS(%d,%d) over GF(2^%d)", n, k, spec.outer().field().m()).c_str());
    std::cout << fmt("%-22s %.6f\n", "crossover p", model.p);
    std::cout << fmt("%-22s %.6e (se %.1e)\n", "symbol error pe", est.channel.pe, est.se_pe);
    std::cout << fmt("%-22s %.6e (se %.1e)\n", "symbol erasure pz", est.channel.pz, est.se_pz);
    std::cout << fmt("%-22s %.4e\n", "block fail (list)", p_list);
    std::cout << fmt("%-22s %.4e\n", "block fail (capped)", p_capped);
    std::cout << fmt("%-22s %.4e\n", "block fail (unique)", p_unique);

    std::cout << "pe=" << fmt("%.6e", est.channel.pe) << "\n";
    std::cout << "pz=" << fmt("%.6e", est.channel.pz) << "\n";
    std::cout << "trials=" << est.trials << "\n";
    std::cout << "p_err_list=" << fmt("%.4e", p_list) << "\n";
    std::cout << "p_err_capped=" << fmt("%.4e", p_capped) << "\n";
    std::cout << "p_err_unique=" << fmt("%.4e", p_unique) << "\n";
    std::cout << "capacity=" << fmt("%.4f", capacity(model)) << "\n";
    std::cout << "dispersion=" << fmt("%.4f", dispersion(model)) << "\n";
    const double rate = static_cast<double>(spec.k()) / spec.n();
    std::cout << "rate=" << fmt("%.4f", rate) << "\n";
    if (p_list > 0 && p_list < 1) {
        const double rs = max_rate(spec.n(), model, p_list);
        std::cout << "r_star=" << fmt("%.4f", rs) << "\n";
        std::cout << "ratio=" << fmt("%.4f", rate / rs) << "\n";
    }
    return 0;
}

int run_ct_audit(const Options& opt) {
    const ParsedConfig cfg = parse_kv(load_config_text(opt.code));
    const std::string type = cfg.require("type");
    AuditedRun runner;
    if (opt.negative || type == "rs") {
        const RsSpec spec = rs_from_config(cfg);
        const PaddingMode mode = opt.strict ? PaddingMode::Strict : PaddingMode::ByErasureCount;
        const int eff = (mode == PaddingMode::Strict) ? spec.n() : spec.n() - opt.erasures;
        int tau = opt.tau;
        if (!opt.tau_set || tau < 0) tau = max_list_radius(eff, spec.k(), opt.s_cap);
        const GsParams prm = select_params(eff, spec.k(), tau);
        runner = opt.negative ? negative_control_run(spec, prm, opt.erasures)
                              : gs_audit_run(spec, prm, opt.erasures, mode);
    } else if (type == "rm") {
        runner = rm_audit_run(rm_from_config(cfg));
    } else if (type == "concat") {
        ConcatDecodeOptions copts;
        copts.tau = opt.tau_set ? opt.tau : -1;
        copts.s_cap = opt.s_cap;
        copts.mode = PaddingMode::Strict; // erasure-count independence
        runner = concat_audit_run(concat_from_config(cfg), copts);
    } else {
        throw std::invalid_argument("unknown code type: " + type);
    }

    const AuditVerdict verdict = audit(runner, opt.runs, opt.seed);
    for (size_t i = 0; i < verdict.reports.size(); i++) {
        const OpCountReport& r = verdict.reports[i];
        std::cout << "run=" << i << " adds=" << r.adds << " muls=" << r.muls
                  << " invs=" << r.invs << " rr=" << r.rr_calls << " bits=" << r.bit_ops << "\n";
    }
    std::cout << "verdict=" << (verdict.pass ? "PASS" : "FAIL") << "\n";
    return verdict.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing-balanced key reproduction from noisy responses"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--seed", opt.seed, "rng seed");
    app.add_option("--code", opt.code, "code config: file path or inline key=value text");
    app.add_option("--jobs", opt.jobs, "worker threads for Monte Carlo");
    app.add_option("--out", opt.out, "output directory");

    CLI::App* c_params = app.add_subcommand("params", "decoding radii and (s, l) selection");
    c_params->add_option("--tau", opt.tau, "list radius to solve for")
        ->each([&](const std::string&) { opt.tau_set = true; });

    CLI::App* c_enroll = app.add_subcommand("enroll", "draw a response, write helper data");
    c_enroll->add_option("--mask", opt.mask, "none|codeword|permutation");

    CLI::App* c_repro = app.add_subcommand("reproduce", "recover the key from a noisy response");
    c_repro->add_option("--helper", opt.helper_path, "helper bundle file");
    c_repro->add_option("--response", opt.response_path, "reference response file");
    c_repro->add_option("--p", opt.p_repro, "BSC crossover for the fresh noise");
    c_repro->add_option("--tau", opt.tau, "outer list radius (-1: widest within s-cap)");
    c_repro->add_option("--s-cap", opt.s_cap, "multiplicity cap for auto radius");
    c_repro->add_flag("--strict", opt.strict, "erasure-independent op schedule");

    CLI::App* c_analyze = app.add_subcommand("analyze", "channel and failure-rate report");
    c_analyze->add_option("--p", opt.p, "BSC crossover");
    c_analyze->add_option("--trials", opt.trials, "Monte Carlo trials");
    c_analyze->add_option("--s-cap", opt.s_cap, "multiplicity cap for the capped failure rate");
    c_analyze->add_flag("--table1", opt.table1, "finite-length rate comparison rows");

    CLI::App* c_audit = app.add_subcommand("ct-audit", "operation-count constancy check");
    c_audit->add_option("--runs", opt.runs, "audited runs");
    c_audit->add_option("--tau", opt.tau, "list radius")
        ->each([&](const std::string&) { opt.tau_set = true; });
    c_audit->add_option("--erasures", opt.erasures, "erasures per input");
    c_audit->add_option("--s-cap", opt.s_cap, "multiplicity cap for auto radius");
    c_audit->add_flag("--strict", opt.strict, "strict padding mode");
    c_audit->add_flag("--negative-control", opt.negative, "audit the leaky reference eliminator");

    for (CLI::App* sub : {c_params, c_enroll, c_repro, c_analyze, c_audit}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_params) return run_params(opt);
        if (*c_enroll) return run_enroll(opt);
        if (*c_repro) return run_reproduce(opt);
        if (*c_analyze) return run_analyze(opt);
        if (*c_audit) return run_ct_audit(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
