#pragma once

#include <cstdint>
#include <functional>
#include <stop_token>
#include <string_view>
#include <vector>

#include "sboxkit/analysis.hpp"
#include "sboxkit/random.hpp"
#include "sboxkit/sbox.hpp"

namespace sboxkit {

/// Component spectra of a bijective S-box kept up to date under swaps, so a
/// candidate swap costs O(2^(m-1) * 2^(n-1)) instead of a full recomputation.
class SpectrumTracker {
public:
    SpectrumTracker(const SBox& s, WcfParams params);

    /// WCF the S-box would have with entries i and j exchanged.
    double wcf_after_swap(std::size_t i, std::size_t j) const;
    void apply_swap(std::size_t i, std::size_t j);

    double wcf() const noexcept { return wcf_; }
    int nonlinearity() const;
    SBox sbox() const;
    std::span<const std::int32_t> spectra() const noexcept { return spectra_; }

private:
    unsigned n_;
    std::vector<std::uint32_t> table_;
    std::vector<std::int32_t> spectra_;
    std::vector<double> terms_;
    double wcf_;
};

enum class SearchStatus { running, succeeded, exhausted, cancelled };

std::string_view to_string(SearchStatus status) noexcept;

struct SearchConfig {
    unsigned n = 8;
    int target_nl = 100;
    /// Per restart; the whole run may take max_iterations * (restarts + 1).
    std::uint64_t max_iterations = 1'000'000;
    unsigned restarts = 4;
    std::int64_t wcf_x = 0;
    unsigned wcf_r = 3;
    std::uint64_t seed = 0;
    /// NL is recomputed after every nl_cadence-th accepted move.
    unsigned nl_cadence = 1;
};

/// Throws invalid_argument describing the first violated constraint.
void validate(const SearchConfig& config);

struct SearchState {
    SBox current = SBox::identity(1);
    double current_wcf = 0.0;
    int current_nl = 0;
    std::uint64_t iteration = 0;
    unsigned restart = 0;
    std::uint64_t accepted = 0;
    int best_nl = 0;
    SBox best = SBox::identity(1);
    SearchStatus status = SearchStatus::running;
};

/// Why a snapshot was delivered: a (re)start, an accepted swap, the
/// periodic heartbeat every 1000 iterations, or the final state.
enum class SearchEvent { restart, accepted, heartbeat, finished };

using ProgressSink = std::function<void(const SearchState&, SearchEvent)>;

/// Strict-descent WCF hill climbing over random transpositions. The stop
/// token is polled once per iteration.
SearchState local_search(const SearchConfig& config, const ProgressSink& sink = {},
                         std::stop_token stop = {});

double progress(const SearchState& state, const SearchConfig& config) noexcept;

}  // namespace sboxkit
