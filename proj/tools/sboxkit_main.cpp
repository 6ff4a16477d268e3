// sboxkit: evaluate, generate and search bijective S-boxes, or serve the
// same operations over HTTP.
//
// Exit codes: 0 success, 1 input parse error, 2 invalid argument or
// invariant violation, 3 search budget exhausted (or cancelled).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sboxkit/analysis.hpp"
#include "sboxkit/dataset.hpp"
#include "sboxkit/generation.hpp"
#include "sboxkit/search.hpp"
#include "sboxkit/service/json_codec.hpp"
#include "sboxkit/service/server.hpp"

namespace {

using sboxkit::service::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitExhausted = 3;

int exit_code_for(const sboxkit::Error& e) {
    return e.code() == sboxkit::ErrorCode::parse_error ? kExitParse : kExitInvalid;
}

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    return static_cast<bool>(out);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct EvaluateArgs {
    std::string in;
    std::string property = "all";
    bool as_json = false;
    std::optional<unsigned> n;
    std::optional<unsigned> m;
    std::int64_t wcf_x = 0;
    unsigned wcf_r = 3;
};

json property_value(const std::string& p, const sboxkit::SBox& s, sboxkit::WcfParams params) {
    using namespace sboxkit;
    if (p == "nl") return nonlinearity(s);
    if (p == "du") return differential_uniformity(s);
    if (p == "ccv") return ccv(s);
    if (p == "mto") return mto(s);
    if (p == "rto") return rto(s);
    if (p == "wcf") return wcf(s, params);
    if (p == "bijective") return is_bijective(s);
    if (p == "hw-signature") return hw_signature(s);
    return service::report_to_json(evaluate_all(s, params));
}

void print_human(const std::string& property, const json& v) {
    if (property == "all") {
        auto field = [&](const char* name) {
            const json& f = v[name];
            std::cout << name << ": ";
            if (f.is_null()) {
                std::cout << "n/a (" << v["errors"].value(name, std::string("unavailable")) << ")";
            } else if (f.is_number_float()) {
                std::cout << format_double(f.get<double>());
            } else {
                std::cout << f.dump();
            }
            std::cout << '\n';
        };
        std::cout << "size: " << v["n"] << "x" << v["m"] << '\n';
        for (const char* name : {"bijective", "nl", "du", "ccv", "mto", "rto", "wcf"}) field(name);
        std::cout << "hw_signature:";
        for (const auto& h : v["hw_signature"]) std::cout << ' ' << h.get<unsigned>();
        std::cout << '\n';
        return;
    }
    if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k) std::cout << (k ? " " : "") << v[k].get<unsigned>();
        std::cout << '\n';
    } else if (v.is_number_float()) {
        std::cout << format_double(v.get<double>()) << '\n';
    } else {
        std::cout << v.dump() << '\n';
    }
}

int run_evaluate(const EvaluateArgs& a) {
    try {
        const sboxkit::SBox s = sboxkit::load_sbox_file(a.in, a.n, a.m);
        const json v = property_value(a.property, s, {a.wcf_x, a.wcf_r});
        if (a.as_json) {
            json out{{"property", a.property}, {"value", v}};
            if (a.property == "wcf") out["params"] = {{"x", a.wcf_x}, {"r", a.wcf_r}};
            std::cout << out.dump() << '\n';
        } else {
            print_human(a.property, v);
        }
        return kExitOk;
    } catch (const sboxkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

struct GenerateArgs {
    unsigned n = 8;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    if (a.n < 1 || a.n > sboxkit::kMaxBits) {
        std::cerr << "error: --n must be in [1, 16], got " << a.n << '\n';
        return kExitInvalid;
    }
    const std::uint64_t seed = a.seed.value_or(sboxkit::entropy_seed());
    sboxkit::RandomSource rng(seed);
    const sboxkit::SBox s = sboxkit::random_bijective(a.n, rng);
    const std::string text = "# random bijective S-box, n=" + std::to_string(a.n) + ", seed=" +
                             std::to_string(seed) + "\n" + sboxkit::format_sbox(s);
    if (a.out.empty()) {
        std::cout << text;
    } else if (!write_text(a.out, text)) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kExitInvalid;
    }
    return kExitOk;
}

struct SearchArgs {
    sboxkit::SearchConfig config;
    std::string out;
    bool quiet = false;
};

int run_search(SearchArgs a) {
    using namespace sboxkit;
    try {
        validate(a.config);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    int printed_best = -1;
    auto sink = [&](const SearchState& s, SearchEvent event) {
        if (a.quiet) return;
        const bool improved = s.best_nl > printed_best;
        if (!improved && event != SearchEvent::heartbeat) return;
        printed_best = std::max(printed_best, s.best_nl);
        std::cout << "iteration=" << s.iteration << " restart=" << s.restart << " best_nl=" << s.best_nl
                  << " nl=" << s.current_nl << " wcf=" << format_double(s.current_wcf)
                  << " progress=" << format_double(progress(s, a.config)) << '\n';
    };
    const SearchState result = local_search(a.config, sink);
    std::cout << "status=" << to_string(result.status) << " iteration=" << result.iteration
              << " best_nl=" << result.best_nl << '\n';
    if (result.status != SearchStatus::succeeded) return kExitExhausted;

    const std::string text = "# local search result, n=" + std::to_string(a.config.n) + ", seed=" +
                             std::to_string(a.config.seed) + ", nl=" + std::to_string(result.current_nl) +
                             "\n" + format_sbox(result.current);
    if (a.out.empty()) {
        std::cout << text;
    } else if (!write_text(a.out, text)) {
        std::cerr << "error: cannot write '" << a.out << "'\n";
        return kExitInvalid;
    }
    return kExitOk;
}

int run_classical(const std::string& name, bool as_json) {
    try {
        const auto& ds = sboxkit::Dataset::builtin();
        if (name.empty()) {
            if (as_json) {
                json arr = json::array();
                for (const auto& e : ds.entries()) arr.push_back(sboxkit::service::classical_to_json(e));
                std::cout << arr.dump() << '\n';
            } else {
                for (const auto& e : ds.entries()) {
                    std::cout << e.name << ' ' << e.table.n() << 'x' << e.table.m() << " nl=" << e.ref_nl
                              << " du=" << e.ref_du << '\n';
                }
            }
            return kExitOk;
        }
        const auto& e = ds.find(name);
        if (as_json) {
            std::cout << sboxkit::service::classical_to_json(e).dump() << '\n';
        } else {
            std::cout << "# " << e.name << " (" << e.citation << ")\n" << sboxkit::format_sbox(e.table);
        }
        return kExitOk;
    } catch (const sboxkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == sboxkit::ErrorCode::not_found ? kExitInvalid : exit_code_for(e);
    }
}

int run_serve(sboxkit::service::ServiceOptions options, unsigned ttl_seconds) {
    options.experiment_ttl = std::chrono::seconds(ttl_seconds);
    try {
        sboxkit::service::Service svc(options, sboxkit::Dataset::builtin());
        std::cout << "listening on http://" << options.host << ':' << options.port << std::endl;
        if (!svc.listen()) {
            std::cerr << "error: cannot bind " << options.host << ':' << options.port << '\n';
            return kExitInvalid;
        }
    } catch (const sboxkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-box generation and evaluation toolkit"};
    app.require_subcommand(1);

    EvaluateArgs eval;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate an S-box file");
    evaluate->add_option("--in", eval.in, "S-box text file")->required();
    evaluate->add_option("--property,-p", eval.property, "Property to compute")
        ->check(CLI::IsMember({"nl", "du", "ccv", "mto", "rto", "wcf", "bijective", "hw-signature", "all"}));
    evaluate->add_flag("--json", eval.as_json, "Print JSON");
    evaluate->add_option("--n", eval.n, "Input bit-width (default: inferred from entry count)");
    evaluate->add_option("--m", eval.m, "Output bit-width (default: n, widened to fit)");
    evaluate->add_option("--wcf-x", eval.wcf_x, "WCF offset X");
    evaluate->add_option("--wcf-r", eval.wcf_r, "WCF exponent R")->check(CLI::Range(0u, 16u));

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a random bijective S-box");
    generate->add_option("--n", gen.n, "Bit-width");
    generate->add_option("--seed", gen.seed, "RNG seed (default: from entropy)");
    generate->add_option("--out", gen.out, "Output file (default: stdout)");

    SearchArgs srch;
    auto* search = app.add_subcommand("search", "WCF-guided local search for high nonlinearity");
    search->add_option("--target-nl", srch.config.target_nl, "Target nonlinearity")->required();
    search->add_option("--n", srch.config.n, "Bit-width");
    search->add_option("--seed", srch.config.seed, "RNG seed");
    search->add_option("--max-iter", srch.config.max_iterations, "Iterations per restart");
    search->add_option("--restarts", srch.config.restarts, "Additional restarts from fresh random S-boxes");
    search->add_option("--wcf-x", srch.config.wcf_x, "WCF offset X");
    search->add_option("--wcf-r", srch.config.wcf_r, "WCF exponent R");
    search->add_option("--nl-cadence", srch.config.nl_cadence, "Recompute NL every k accepted moves");
    search->add_option("--out", srch.out, "Write the result here on success (default: stdout)");
    search->add_flag("--quiet,-q", srch.quiet, "Suppress progress lines");

    std::string classical_name;
    bool classical_json = false;
    auto* classical = app.add_subcommand("classical", "List or print the classical S-boxes");
    classical->add_option("--name", classical_name, "Entry to print (case-insensitive)");
    classical->add_flag("--json", classical_json, "Print JSON");

    sboxkit::service::ServiceOptions svc;
    unsigned ttl_seconds = 600;
    auto* serve = app.add_subcommand("serve", "Run the REST service");
    serve->add_option("--host", svc.host, "Bind address")->envname("SBOXKIT_HOST");
    serve->add_option("--port", svc.port, "Port")->envname("SBOXKIT_PORT");
    serve->add_option("--max-experiments", svc.max_experiments, "Concurrent experiment cap")
        ->envname("SBOXKIT_MAX_EXPERIMENTS");
    serve->add_option("--experiment-ttl", ttl_seconds, "Seconds a finished experiment is kept")
        ->envname("SBOXKIT_EXPERIMENT_TTL");
    serve->add_option("--cors-origin", svc.cors_origin, "Access-Control-Allow-Origin value (empty disables)")
        ->envname("SBOXKIT_CORS_ORIGIN");
    serve->add_option("--max-eval-bits", svc.max_eval_bits, "Largest n accepted by evaluate endpoints")
        ->envname("SBOXKIT_MAX_EVAL_BITS");
    serve->add_option("--static-dir", svc.static_dir, "Directory served at /")->envname("SBOXKIT_STATIC_DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    if (*evaluate) return run_evaluate(eval);
    if (*generate) return run_generate(gen);
    if (*search) return run_search(srch);
    if (*classical) return run_classical(classical_name, classical_json);
    if (*serve) return run_serve(svc, ttl_seconds);
    return kExitInvalid;
}
