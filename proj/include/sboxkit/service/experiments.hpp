#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "sboxkit/search.hpp"

namespace sboxkit::service {

struct ExperimentView {
    std::string id;
    SearchConfig config;
    SearchState state;
    double progress = 0.0;
    std::chrono::system_clock::time_point created_at;
};

/// In-memory registry of local-search runs, one worker thread each. Finished
/// runs are evicted once they are older than the configured TTL.
class ExperimentRegistry {
public:
    ExperimentRegistry(std::size_t max_running, std::chrono::seconds ttl);
    ~ExperimentRegistry();

    ExperimentRegistry(const ExperimentRegistry&) = delete;
    ExperimentRegistry& operator=(const ExperimentRegistry&) = delete;

    /// Throws capacity_exceeded when max_running runs are still active.
    std::string start(const SearchConfig& config);

    std::optional<ExperimentView> get(const std::string& id);

    /// Requests cancellation; false if the id is unknown.
    bool cancel(const std::string& id);

    std::size_t running() const;
    std::size_t size() const;

private:
    struct Experiment;

    void evict_expired_locked();
    std::string fresh_id_locked();

    std::size_t max_running_;
    std::chrono::seconds ttl_;
    mutable std::mutex mutex_;
    std::map<std::string, std::unique_ptr<Experiment>> experiments_;
    std::uint64_t id_counter_ = 0;
    std::uint64_t id_salt_;
};

}  // namespace sboxkit::service
