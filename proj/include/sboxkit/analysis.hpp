#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sboxkit/sbox.hpp"

namespace sboxkit {

/// Walsh-Hadamard spectrum, values[w] = sum_x (-1)^(f(x) xor w.x).
struct WalshSpectrum {
    unsigned n = 0;
    std::vector<std::int32_t> values;
};

/// Cross-correlation of coordinate functions, C_{f_i,f_j}(alpha), with
/// f_i = bit i of F(x) (LSB is coordinate 0).
class CrossCorrelationTable {
public:
    CrossCorrelationTable(unsigned m, unsigned n, std::vector<std::int32_t> values);

    unsigned m() const noexcept { return m_; }
    unsigned n() const noexcept { return n_; }
    std::int32_t at(unsigned i, unsigned j, std::uint32_t alpha) const noexcept {
        return values_[(static_cast<std::size_t>(i) * m_ + j) << n_ | alpha];
    }
    std::span<const std::int32_t> values() const noexcept { return values_; }

private:
    unsigned m_;
    unsigned n_;
    std::vector<std::int32_t> values_;
};

/// Parameters of the spectrum-flattening cost sum_{b!=0} sum_w ||W_b(w)| - x|^r.
struct WcfParams {
    std::int64_t x = 0;
    unsigned r = 3;
};

bool is_bijective(const SBox& s);

/// Truth table of b.F; b must be a nonzero mask below 2^m.
BooleanFunction component_function(const SBox& s, std::uint32_t b);

/// In-place fast transform over a +/-1 (or any integer) vector whose length
/// is a power of two.
void fast_walsh_hadamard(std::span<std::int32_t> values) noexcept;

WalshSpectrum walsh_spectrum(const BooleanFunction& f);

int nonlinearity(const BooleanFunction& f);
int nonlinearity(const SBox& s);

/// ddt[a * 2^m + b] = #{x : F(x xor a) xor F(x) = b}; requires n == m.
std::vector<std::uint32_t> difference_distribution(const SBox& s);

/// Throws not_bijective for non-permutations.
int differential_uniformity(const SBox& s);

double ccv(const SBox& s);

CrossCorrelationTable cross_correlation(const SBox& s);

double mto(const SBox& s);
double mto(const CrossCorrelationTable& table);
double rto(const SBox& s);
double rto(const CrossCorrelationTable& table);

/// Per-beta value inside the max of MTO/RTO, exposed for the complement
/// symmetry property.
double mto_at(const CrossCorrelationTable& table, std::uint32_t beta);
double rto_at(const CrossCorrelationTable& table, std::uint32_t beta);

double wcf(const SBox& s, WcfParams params = {});

/// Spectra of every component b.F, row b at offset b * 2^n. Row 0 is the
/// spectrum of the zero combination and is ignored by every consumer.
std::vector<std::int32_t> component_spectra(const SBox& s);

/// term[v] = | v - x |^r for v in [0, 2^n], the per-coefficient WCF cost.
std::vector<double> wcf_terms(unsigned n, WcfParams params);

int nonlinearity_from_spectra(unsigned n, unsigned m, std::span<const std::int32_t> spectra);
double wcf_from_spectra(unsigned n, unsigned m, std::span<const std::int32_t> spectra,
                        std::span<const double> terms);

std::vector<unsigned> hw_signature(const SBox& s);
bool same_hw_class(const SBox& a, const SBox& b);

struct PropertyReport {
    unsigned n = 0;
    unsigned m = 0;
    bool bijective = false;
    int nl = 0;
    std::optional<int> du;
    double ccv = 0.0;
    std::optional<double> mto;
    std::optional<double> rto;
    double wcf = 0.0;
    WcfParams wcf_params;
    std::vector<unsigned> hw_signature;
    /// Field name -> reason, for every field left empty.
    std::map<std::string, std::string> errors;
};

PropertyReport evaluate_all(const SBox& s, WcfParams params = {});

}  // namespace sboxkit
