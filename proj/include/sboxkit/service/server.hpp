#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

#include "sboxkit/dataset.hpp"
#include "sboxkit/service/experiments.hpp"

namespace httplib {
class Server;
}

namespace sboxkit::service {

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_experiments = 4;
    std::chrono::seconds experiment_ttl{600};
    std::string cors_origin = "*";
    /// Metrics other than bijectivity and the HW signature are refused above
    /// this input width.
    unsigned max_eval_bits = 10;
    /// When non-empty, files under this directory are served at "/".
    std::string static_dir;
};

/// HTTP front end. Routes:
///   GET    /api/health
///   GET    /api/classical            GET /api/classical/{name}
///   POST   /api/generate             {n, seed?}
///   POST   /api/evaluate/{property}  {n?, m?, sbox, x?, r?}
///   POST   /api/experiments          SearchConfig fields
///   GET    /api/experiments/{id}
///   DELETE /api/experiments/{id}
/// plus /classicalSBoxes.php and /wcfSBox.php as aliases.
class Service {
public:
    Service(ServiceOptions options, const Dataset& dataset);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Blocks until stop(); false if the address cannot be bound.
    bool listen();
    /// Binds an ephemeral port on options.host and returns it (or -1).
    int bind_to_any_port();
    /// Serves on a socket previously bound by bind_to_any_port.
    bool listen_after_bind();
    void stop();
    bool is_running() const;
    void wait_until_ready() const;

    ExperimentRegistry& experiments() noexcept { return registry_; }

private:
    void install_routes();

    ServiceOptions options_;
    const Dataset& dataset_;
    ExperimentRegistry registry_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace sboxkit::service
