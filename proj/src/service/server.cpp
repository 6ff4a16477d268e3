#include "sboxkit/service/server.hpp"

#include <ctime>

#include <httplib.h>

#include "sboxkit/analysis.hpp"
#include "sboxkit/generation.hpp"
#include "sboxkit/random.hpp"
#include "sboxkit/service/json_codec.hpp"

namespace sboxkit::service {

namespace {

// Server-chosen seeds fit in a JavaScript number.
constexpr std::uint64_t kJsSafeSeedMask = (std::uint64_t{1} << 53) - 1;

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_found: return 404;
        case ErrorCode::capacity_exceeded: return 429;
        case ErrorCode::parse_error:
        case ErrorCode::invalid_argument:
        case ErrorCode::not_bijective:
        case ErrorCode::unsupported_shape: return 422;
    }
    return 422;
}

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
    send_json(res, status, json{{"error", {{"code", code}, {"message", message}}}});
}

void send_error(httplib::Response& res, const Error& e) {
    send_error(res, status_for(e.code()), to_string(e.code()), e.what());
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

/// Runs a handler, mapping library errors and malformed JSON onto 4xx.
template <typename F>
httplib::Server::Handler guarded(F&& f) {
    return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const json::parse_error& e) {
            send_error(res, 400, "malformed_json", e.what());
        } catch (const json::exception& e) {
            send_error(res, 422, "invalid_payload", e.what());
        } catch (const Error& e) {
            send_error(res, e);
        }
    };
}

std::string iso8601(std::chrono::system_clock::time_point t) {
    const std::time_t secs = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json experiment_to_json(const ExperimentView& v) {
    json out{
        {"id", v.id},
        {"status", to_string(v.state.status)},
        {"iteration", v.state.iteration},
        {"restart", v.state.restart},
        {"accepted", v.state.accepted},
        {"best_nl", v.state.best_nl},
        {"current_nl", v.state.current_nl},
        {"current_wcf", v.state.current_wcf},
        {"progress", v.progress},
        {"config", search_config_to_json(v.config)},
        {"created_at", iso8601(v.created_at)},
    };
    if (v.state.status == SearchStatus::succeeded) {
        out["result"] = sbox_to_json(v.state.current);
    } else if (v.state.best.n() == v.config.n) {
        out["best"] = sbox_to_json(v.state.best);
    }
    return out;
}

WcfParams wcf_params_from(const httplib::Request& req, const json& body) {
    WcfParams p;
    auto read = [&](const char* key, auto& dst) {
        using T = std::decay_t<decltype(dst)>;
        if (body.contains(key)) {
            const json& v = body[key];
            if (!v.is_number_integer() || (std::is_unsigned_v<T> && !v.is_number_unsigned())) {
                throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be an integer");
            }
            dst = v.get<T>();
        } else if (req.has_param(key)) {
            const std::string raw = req.get_param_value(key);
            try {
                std::size_t used = 0;
                const long long value = std::stoll(raw, &used);
                if (used != raw.size() || (std::is_unsigned_v<T> && value < 0)) throw std::invalid_argument(raw);
                dst = static_cast<T>(value);
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be an integer");
            }
        }
    };
    read("x", p.x);
    read("r", p.r);
    if (p.r > 16) throw Error(ErrorCode::invalid_argument, "'r' must be at most 16");
    return p;
}

json evaluate_property(const std::string& property, const SBox& s, const WcfParams& params,
                       unsigned max_bits) {
    if (property == "bijective") return is_bijective(s);
    if (property == "hw-signature") return hw_signature(s);

    if (s.n() > max_bits || s.m() > max_bits) {
        throw Error(ErrorCode::invalid_argument, "S-box too large for evaluation on this server (limit " +
                                                     std::to_string(max_bits) + " bits)");
    }
    if (property == "nl") return nonlinearity(s);
    if (property == "du") return differential_uniformity(s);
    if (property == "ccv") return ccv(s);
    if (property == "mto") return mto(s);
    if (property == "rto") return rto(s);
    if (property == "wcf") return wcf(s, params);
    if (property == "all") return report_to_json(evaluate_all(s, params));
    throw Error(ErrorCode::not_found, "unknown property '" + property + "'");
}

}  // namespace

Service::Service(ServiceOptions options, const Dataset& dataset)
    : options_(std::move(options)),
      dataset_(dataset),
      registry_(options_.max_experiments, options_.experiment_ttl),
      server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

Service::~Service() { stop(); }

void Service::install_routes() {
    httplib::Server& svr = *server_;
    const std::string origin = options_.cors_origin;

    svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        if (!origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
    });
    svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        send_error(res, 500, "internal_error", message);
    });

    svr.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, json{{"status", "ok"}});
    });

    auto list_classical = guarded([this](const httplib::Request&, httplib::Response& res) {
        json arr = json::array();
        for (const auto& e : dataset_.entries()) arr.push_back(classical_to_json(e));
        send_json(res, 200, arr);
    });
    svr.Get("/api/classical", list_classical);
    svr.Get("/classicalSBoxes.php", list_classical);

    svr.Get(R"(/api/classical/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, classical_to_json(dataset_.find(req.matches[1].str())));
    }));

    svr.Post("/api/generate", guarded([](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        if (!body.is_object()) throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
        const json& n_field = body.contains("n") ? body["n"] : json(8);
        if (!n_field.is_number_unsigned() || n_field.get<std::uint64_t>() < 1 ||
            n_field.get<std::uint64_t>() > kMaxBits) {
            throw Error(ErrorCode::invalid_argument, "'n' must be an integer in [1, 16]");
        }
        std::uint64_t seed = 0;
        if (body.contains("seed")) {
            if (!body["seed"].is_number_unsigned()) {
                throw Error(ErrorCode::invalid_argument, "'seed' must be a nonnegative integer");
            }
            seed = body["seed"].get<std::uint64_t>();
        } else {
            seed = entropy_seed() & kJsSafeSeedMask;
        }
        RandomSource rng(seed);
        json out = sbox_to_json(random_bijective(n_field.get<unsigned>(), rng));
        out["seed"] = seed;
        send_json(res, 200, out);
    }));

    const unsigned max_bits = options_.max_eval_bits;
    auto evaluate = [max_bits](const std::string& property, const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const SBox s = sbox_from_json(body);
        const WcfParams params = wcf_params_from(req, body);
        json out{{"property", property}, {"value", evaluate_property(property, s, params, max_bits)}};
        if (property == "wcf") out["params"] = {{"x", params.x}, {"r", params.r}};
        send_json(res, 200, out);
    };
    svr.Post(R"(/api/evaluate/([A-Za-z\-]+))", guarded([evaluate](const httplib::Request& req, httplib::Response& res) {
        const std::string property = req.matches[1].str();
        static const char* known[] = {"nl", "du", "ccv", "mto", "rto", "wcf", "bijective", "hw-signature", "all"};
        if (std::find(std::begin(known), std::end(known), property) == std::end(known)) {
            throw Error(ErrorCode::not_found, "unknown property '" + property + "'");
        }
        evaluate(property, req, res);
    }));
    svr.Post("/wcfSBox.php", guarded([evaluate](const httplib::Request& req, httplib::Response& res) {
        evaluate("wcf", req, res);
    }));

    svr.Post("/api/experiments", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        SearchConfig config = search_config_from_json(body);
        if (!body.contains("seed")) config.seed = entropy_seed() & kJsSafeSeedMask;
        const std::string id = registry_.start(config);
        send_json(res, 201, json{{"id", id}, {"seed", config.seed}});
    }));
    svr.Get(R"(/api/experiments/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1].str();
        const auto view = registry_.get(id);
        if (!view) throw Error(ErrorCode::not_found, "no experiment with id '" + id + "'");
        send_json(res, 200, experiment_to_json(*view));
    }));
    svr.Delete(R"(/api/experiments/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1].str();
        if (!registry_.cancel(id)) throw Error(ErrorCode::not_found, "no experiment with id '" + id + "'");
        send_json(res, 202, json{{"id", id}, {"cancel_requested", true}});
    }));

    if (!options_.static_dir.empty()) {
        svr.set_mount_point("/", options_.static_dir);
    }
    svr.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (res.body.empty() && res.status == 404) {
            send_error(res, 404, "not_found", "no route for " + req.method + " " + req.path);
        }
    });
}

bool Service::listen() { return server_->listen(options_.host, options_.port); }

int Service::bind_to_any_port() { return server_->bind_to_any_port(options_.host); }

bool Service::listen_after_bind() { return server_->listen_after_bind(); }

void Service::stop() {
    if (server_) server_->stop();
}

bool Service::is_running() const { return server_->is_running(); }

void Service::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace sboxkit::service
