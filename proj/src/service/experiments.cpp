#include "sboxkit/service/experiments.hpp"

#include <condition_variable>
#include <cstdio>

#include "sboxkit/random.hpp"

namespace sboxkit::service {

struct ExperimentRegistry::Experiment {
    std::string id;
    SearchConfig config;
    std::chrono::system_clock::time_point created_at;

    mutable std::mutex mutex;
    std::condition_variable settled_cv;
    bool settled = false;
    SearchState state;
    std::optional<std::chrono::steady_clock::time_point> finished_at;

    // Declared last so it is joined before the members it touches go away.
    std::jthread worker;

    bool finished() const {
        std::lock_guard lock(mutex);
        return finished_at.has_value();
    }
};

ExperimentRegistry::ExperimentRegistry(std::size_t max_running, std::chrono::seconds ttl)
    : max_running_(max_running), ttl_(ttl), id_salt_(entropy_seed()) {}

ExperimentRegistry::~ExperimentRegistry() {
    std::lock_guard lock(mutex_);
    for (auto& [id, e] : experiments_) e->worker.request_stop();
    experiments_.clear();
}

std::string ExperimentRegistry::fresh_id_locked() {
    for (;;) {
        RandomSource rng(id_salt_ ^ (++id_counter_ * 0x9e3779b97f4a7c15ull));
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng.next()));
        if (!experiments_.contains(buf)) return buf;
    }
}

void ExperimentRegistry::evict_expired_locked() {
    const auto now = std::chrono::steady_clock::now();
    for (auto it = experiments_.begin(); it != experiments_.end();) {
        bool expired = false;
        {
            std::lock_guard lock(it->second->mutex);
            expired = it->second->finished_at && now - *it->second->finished_at >= ttl_;
        }
        it = expired ? experiments_.erase(it) : std::next(it);
    }
}

std::string ExperimentRegistry::start(const SearchConfig& config) {
    validate(config);
    std::lock_guard lock(mutex_);
    evict_expired_locked();
    std::size_t active = 0;
    for (const auto& [id, e] : experiments_) active += e->finished() ? 0 : 1;
    if (active >= max_running_) {
        throw Error(ErrorCode::capacity_exceeded,
                    "too many running experiments (limit " + std::to_string(max_running_) + ")");
    }

    auto exp = std::make_unique<Experiment>();
    exp->id = fresh_id_locked();
    exp->config = config;
    exp->created_at = std::chrono::system_clock::now();
    Experiment* raw = exp.get();
    raw->worker = std::jthread([raw](std::stop_token stop) {
        auto sink = [raw](const SearchState& s, SearchEvent event) {
            std::lock_guard lock(raw->mutex);
            raw->state = s;
            if (event == SearchEvent::finished) raw->finished_at = std::chrono::steady_clock::now();
            if (event != SearchEvent::restart && !raw->settled) {
                raw->settled = true;
                raw->settled_cv.notify_all();
            }
        };
        SearchState final_state;
        try {
            final_state = local_search(raw->config, sink, stop);
        } catch (const std::exception&) {
            // validate() ran before the thread started; treat anything
            // else as an exhausted run rather than terminating the server.
            std::lock_guard lock(raw->mutex);
            final_state = raw->state;
            final_state.status = SearchStatus::exhausted;
        }
        std::lock_guard lock(raw->mutex);
        raw->state = std::move(final_state);
        if (!raw->finished_at) raw->finished_at = std::chrono::steady_clock::now();
        raw->settled = true;
        raw->settled_cv.notify_all();
    });
    // Return once the run is past its initial S-box.
    {
        std::unique_lock state_lock(raw->mutex);
        raw->settled_cv.wait(state_lock, [raw] { return raw->settled; });
    }
    std::string id = exp->id;
    experiments_.emplace(id, std::move(exp));
    return id;
}

std::optional<ExperimentView> ExperimentRegistry::get(const std::string& id) {
    std::lock_guard lock(mutex_);
    evict_expired_locked();
    const auto it = experiments_.find(id);
    if (it == experiments_.end()) return std::nullopt;
    const Experiment& e = *it->second;
    ExperimentView view;
    view.id = e.id;
    view.config = e.config;
    view.created_at = e.created_at;
    {
        std::lock_guard state_lock(e.mutex);
        view.state = e.state;
    }
    view.progress = progress(view.state, view.config);
    return view;
}

bool ExperimentRegistry::cancel(const std::string& id) {
    std::lock_guard lock(mutex_);
    const auto it = experiments_.find(id);
    if (it == experiments_.end()) return false;
    it->second->worker.request_stop();
    return true;
}

std::size_t ExperimentRegistry::running() const {
    std::lock_guard lock(mutex_);
    std::size_t active = 0;
    for (const auto& [id, e] : experiments_) active += e->finished() ? 0 : 1;
    return active;
}

std::size_t ExperimentRegistry::size() const {
    std::lock_guard lock(mutex_);
    return experiments_.size();
}

}  // namespace sboxkit::service
