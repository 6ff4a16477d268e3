#include "sboxkit/search.hpp"

#include <algorithm>
#include <cstdlib>

#include "sboxkit/generation.hpp"

namespace sboxkit {

std::string_view to_string(SearchStatus status) noexcept {
    switch (status) {
        case SearchStatus::running: return "running";
        case SearchStatus::succeeded: return "succeeded";
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::cancelled: return "cancelled";
    }
    return "unknown";
}

SpectrumTracker::SpectrumTracker(const SBox& s, WcfParams params)
    : n_(s.n()),
      table_(s.table().begin(), s.table().end()),
      spectra_(component_spectra(s)),
      terms_(wcf_terms(s.n(), params)) {
    if (s.n() != s.m()) {
        throw Error(ErrorCode::unsupported_shape, "spectrum tracking requires n == m");
    }
    wcf_ = wcf_from_spectra(n_, n_, spectra_, terms_);
}

// Exchanging F(i) and F(j) flips component b at both points iff b.(F(i) ^ F(j))
// is odd. For such b, W_b(w) moves by -4 (-1)^(b.F(i)) (-1)^(w.i) when
// w.(i ^ j) is odd and is unchanged otherwise.
double SpectrumTracker::wcf_after_swap(std::size_t i, std::size_t j) const {
    const std::size_t len = table_.size();
    const auto out_diff = table_[i] ^ table_[j];
    const auto in_diff = static_cast<std::uint32_t>(i ^ j);
    if (out_diff == 0 || in_diff == 0) return wcf_;

    std::vector<std::uint32_t> ws;
    std::vector<std::int32_t> steps;
    ws.reserve(len / 2);
    steps.reserve(len / 2);
    for (std::uint32_t w = 0; w < len; ++w) {
        if (parity(w & in_diff)) {
            ws.push_back(w);
            steps.push_back(parity(w & static_cast<std::uint32_t>(i)) ? 4 : -4);
        }
    }

    double delta = 0.0;
    for (std::uint32_t b = 1; b < len; ++b) {
        if (!parity(b & out_diff)) continue;
        const std::int32_t* row = spectra_.data() + static_cast<std::size_t>(b) * len;
        const bool negate = parity(b & table_[i]) != 0;
        for (std::size_t k = 0; k < ws.size(); ++k) {
            const std::int32_t old_v = row[ws[k]];
            const std::int32_t new_v = old_v + (negate ? -steps[k] : steps[k]);
            delta += terms_[static_cast<std::size_t>(std::abs(new_v))] -
                     terms_[static_cast<std::size_t>(std::abs(old_v))];
        }
    }
    return wcf_ + delta;
}

void SpectrumTracker::apply_swap(std::size_t i, std::size_t j) {
    const std::size_t len = table_.size();
    const auto out_diff = table_[i] ^ table_[j];
    const auto in_diff = static_cast<std::uint32_t>(i ^ j);
    if (out_diff != 0 && in_diff != 0) {
        for (std::uint32_t b = 1; b < len; ++b) {
            if (!parity(b & out_diff)) continue;
            std::int32_t* row = spectra_.data() + static_cast<std::size_t>(b) * len;
            const std::int32_t sign = parity(b & table_[i]) ? -1 : 1;
            for (std::uint32_t w = 0; w < len; ++w) {
                if (!parity(w & in_diff)) continue;
                const std::int32_t sig = parity(w & static_cast<std::uint32_t>(i)) ? -1 : 1;
                row[w] -= 4 * sign * sig;
            }
        }
    }
    std::swap(table_[i], table_[j]);
    wcf_ = wcf_from_spectra(n_, n_, spectra_, terms_);
}

int SpectrumTracker::nonlinearity() const { return nonlinearity_from_spectra(n_, n_, spectra_); }

SBox SpectrumTracker::sbox() const { return SBox(n_, n_, table_); }

void validate(const SearchConfig& c) {
    // The tracker holds 2^(2n) spectrum coefficients.
    if (c.n < 2 || c.n > 12) {
        throw Error(ErrorCode::invalid_argument, "search n must be in [2, 12], got " + std::to_string(c.n));
    }
    if (c.target_nl < 0 || c.target_nl > (1 << (c.n - 1))) {
        throw Error(ErrorCode::invalid_argument,
                    "target_nl must be in [0, 2^(n-1)] = [0, " + std::to_string(1 << (c.n - 1)) + "]");
    }
    if (c.max_iterations < 1) {
        throw Error(ErrorCode::invalid_argument, "max_iterations must be at least 1");
    }
    if (c.nl_cadence < 1) {
        throw Error(ErrorCode::invalid_argument, "nl_cadence must be at least 1");
    }
    if (c.wcf_r > 16) {
        throw Error(ErrorCode::invalid_argument, "wcf_r must be at most 16");
    }
}

namespace {

void emit(const ProgressSink& sink, const SearchState& state, SearchEvent event) {
    if (sink) sink(state, event);
}

void record_nl(SearchState& state, int nl) {
    state.current_nl = nl;
    if (nl > state.best_nl || state.best.n() != state.current.n()) {
        state.best_nl = std::max(state.best_nl, nl);
        state.best = state.current;
    }
}

}  // namespace

SearchState local_search(const SearchConfig& config, const ProgressSink& sink, std::stop_token stop) {
    validate(config);
    RandomSource rng(config.seed);
    const WcfParams params{config.wcf_x, config.wcf_r};
    const std::size_t len = std::size_t{1} << config.n;

    SearchState state;
    auto finish = [&](SearchStatus status) {
        state.status = status;
        emit(sink, state, SearchEvent::finished);
        return state;
    };

    for (unsigned r = 0; r <= config.restarts; ++r) {
        state.restart = r;
        SpectrumTracker tracker(random_bijective(config.n, rng), params);
        state.current = tracker.sbox();
        state.current_wcf = tracker.wcf();
        record_nl(state, tracker.nonlinearity());
        emit(sink, state, SearchEvent::restart);
        if (state.current_nl >= config.target_nl) return finish(SearchStatus::succeeded);

        std::uint64_t since_nl = 0;
        for (std::uint64_t k = 0; k < config.max_iterations; ++k) {
            if (stop.stop_requested()) return finish(SearchStatus::cancelled);
            const auto i = static_cast<std::size_t>(rng.below(len));
            auto j = static_cast<std::size_t>(rng.below(len - 1));
            if (j >= i) ++j;
            ++state.iteration;

            const double candidate = tracker.wcf_after_swap(i, j);
            if (candidate < tracker.wcf()) {
                tracker.apply_swap(i, j);
                ++state.accepted;
                state.current = tracker.sbox();
                state.current_wcf = tracker.wcf();
                if (++since_nl >= config.nl_cadence) {
                    since_nl = 0;
                    record_nl(state, tracker.nonlinearity());
                }
                emit(sink, state, SearchEvent::accepted);
                if (state.current_nl >= config.target_nl) return finish(SearchStatus::succeeded);
            }
            if (state.iteration % 1000 == 0) emit(sink, state, SearchEvent::heartbeat);
        }
        if (since_nl != 0) {
            record_nl(state, tracker.nonlinearity());
            if (state.current_nl >= config.target_nl) return finish(SearchStatus::succeeded);
        }
    }
    return finish(SearchStatus::exhausted);
}

double progress(const SearchState& state, const SearchConfig& config) noexcept {
    if (config.target_nl <= 0) return 1.0;
    const double ratio = static_cast<double>(state.best_nl) / static_cast<double>(config.target_nl);
    return std::clamp(ratio, 0.0, 1.0);
}

}  // namespace sboxkit
