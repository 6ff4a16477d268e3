#include "sboxkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace sboxkit {

namespace {

__extension__ typedef unsigned __int128 uint128;

template <typename T>
void butterfly(std::span<T> v) noexcept {
    const std::size_t len = v.size();
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t k = i; k < i + h; ++k) {
                const T a = v[k];
                const T b = v[k + h];
                v[k] = a + b;
                v[k + h] = a - b;
            }
        }
    }
}

void require_square(const SBox& s, const char* what) {
    if (s.n() != s.m()) {
        throw Error(ErrorCode::unsupported_shape,
                    std::string(what) + " requires n == m (got " + std::to_string(s.n()) + "x" +
                        std::to_string(s.m()) + ")");
    }
}

void require_bijective(const SBox& s, const char* what) {
    if (!is_bijective(s)) {
        throw Error(ErrorCode::not_bijective, std::string(what) + " requires a bijective S-box");
    }
}

}  // namespace

CrossCorrelationTable::CrossCorrelationTable(unsigned m, unsigned n, std::vector<std::int32_t> values)
    : m_(m), n_(n), values_(std::move(values)) {
    if (values_.size() != (static_cast<std::size_t>(m) * m << n)) {
        throw Error(ErrorCode::invalid_argument, "cross-correlation table has wrong size");
    }
}

bool is_bijective(const SBox& s) {
    if (s.n() != s.m()) return false;
    std::vector<bool> seen(s.size(), false);
    for (const std::uint32_t y : s.table()) {
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

BooleanFunction component_function(const SBox& s, std::uint32_t b) {
    if (b == 0 || b >= (std::uint32_t{1} << s.m())) {
        throw Error(ErrorCode::invalid_argument,
                    "component mask must be in [1, 2^m - 1], got " + std::to_string(b));
    }
    std::vector<std::uint8_t> bits(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        bits[x] = static_cast<std::uint8_t>(parity(b & s[x]));
    }
    return BooleanFunction(s.n(), std::move(bits));
}

void fast_walsh_hadamard(std::span<std::int32_t> values) noexcept { butterfly(values); }

WalshSpectrum walsh_spectrum(const BooleanFunction& f) {
    WalshSpectrum out{f.n(), std::vector<std::int32_t>(f.size())};
    for (std::size_t x = 0; x < f.size(); ++x) {
        out.values[x] = f[x] ? -1 : 1;
    }
    butterfly(std::span<std::int32_t>(out.values));
    return out;
}

int nonlinearity(const BooleanFunction& f) {
    const WalshSpectrum w = walsh_spectrum(f);
    std::int32_t peak = 0;
    for (const std::int32_t v : w.values) peak = std::max(peak, std::abs(v));
    return (static_cast<int>(f.size()) - peak) / 2;
}

std::vector<std::int32_t> component_spectra(const SBox& s) {
    const std::size_t len = s.size();
    const std::size_t rows = std::size_t{1} << s.m();
    std::vector<std::int32_t> spectra(rows * len);
    for (std::size_t b = 0; b < rows; ++b) {
        std::span<std::int32_t> row(spectra.data() + b * len, len);
        for (std::size_t x = 0; x < len; ++x) {
            row[x] = parity(static_cast<std::uint32_t>(b) & s[x]) ? -1 : 1;
        }
        butterfly(row);
    }
    return spectra;
}

int nonlinearity_from_spectra(unsigned n, unsigned m, std::span<const std::int32_t> spectra) {
    const std::size_t len = std::size_t{1} << n;
    const std::size_t rows = std::size_t{1} << m;
    std::int32_t peak = 0;
    for (std::size_t i = len; i < rows * len; ++i) {
        peak = std::max(peak, std::abs(spectra[i]));
    }
    return (static_cast<int>(len) - peak) / 2;
}

int nonlinearity(const SBox& s) {
    return nonlinearity_from_spectra(s.n(), s.m(), component_spectra(s));
}

std::vector<std::uint32_t> difference_distribution(const SBox& s) {
    require_square(s, "difference distribution");
    const std::size_t len = s.size();
    std::vector<std::uint32_t> ddt(len * len, 0);
    for (std::size_t a = 0; a < len; ++a) {
        std::uint32_t* row = ddt.data() + a * len;
        for (std::size_t x = 0; x < len; ++x) {
            ++row[s[x ^ a] ^ s[x]];
        }
    }
    return ddt;
}

int differential_uniformity(const SBox& s) {
    require_bijective(s, "differential uniformity");
    const std::size_t len = s.size();
    std::vector<std::uint32_t> row(len);
    std::uint32_t du = 0;
    for (std::size_t a = 1; a < len; ++a) {
        std::fill(row.begin(), row.end(), 0u);
        for (std::size_t x = 0; x < len; ++x) {
            ++row[s[x ^ a] ^ s[x]];
        }
        du = std::max(du, *std::max_element(row.begin(), row.end()));
    }
    return static_cast<int>(du);
}

// kappa(k_i, k_j) only depends on d = k_i ^ k_j and each nonzero d covers
// the same number of unordered key pairs, so the variance over pairs is the
// variance over d. With S(d) = sum_x (HW(F(x)) - HW(F(x ^ d)))^2 and K the
// number of differences: Var = (K * sum S^2 - (sum S)^2) / (K^2 * 2^2n).
double ccv(const SBox& s) {
    const std::size_t len = s.size();
    if (len < 2) return 0.0;
    std::vector<int> hw(len);
    for (std::size_t x = 0; x < len; ++x) hw[x] = static_cast<int>(popcount(s[x]));

    uint128 sum = 0;
    uint128 sum_sq = 0;
    for (std::size_t d = 1; d < len; ++d) {
        std::uint64_t sd = 0;
        for (std::size_t x = 0; x < len; ++x) {
            const int diff = hw[x] - hw[x ^ d];
            sd += static_cast<std::uint64_t>(diff * diff);
        }
        sum += sd;
        sum_sq += static_cast<uint128>(sd) * sd;
    }
    const auto k = static_cast<uint128>(len - 1);
    const uint128 numerator = k * sum_sq - sum * sum;
    const double denom = static_cast<double>(len - 1) * static_cast<double>(len - 1) *
                         static_cast<double>(len) * static_cast<double>(len);
    return static_cast<double>(numerator) / denom;
}

// C_{f,g}(alpha) = 2^-n sum_w W_f(w) W_g(w) (-1)^(w.alpha): one inverse
// transform per coordinate pair instead of a 2^2n direct sum.
CrossCorrelationTable cross_correlation(const SBox& s) {
    const unsigned n = s.n();
    const unsigned m = s.m();
    const std::size_t len = s.size();

    std::vector<std::vector<std::int64_t>> coord(m, std::vector<std::int64_t>(len));
    for (unsigned i = 0; i < m; ++i) {
        for (std::size_t x = 0; x < len; ++x) coord[i][x] = (s[x] >> i) & 1u ? -1 : 1;
        butterfly(std::span<std::int64_t>(coord[i]));
    }

    std::vector<std::int32_t> values(static_cast<std::size_t>(m) * m * len);
    std::vector<std::int64_t> prod(len);
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < m; ++j) {
            for (std::size_t w = 0; w < len; ++w) prod[w] = coord[i][w] * coord[j][w];
            butterfly(std::span<std::int64_t>(prod));
            std::int32_t* out = values.data() + ((static_cast<std::size_t>(i) * m + j) << n);
            for (std::size_t a = 0; a < len; ++a) out[a] = static_cast<std::int32_t>(prod[a] >> n);
        }
    }
    return CrossCorrelationTable(m, n, std::move(values));
}

namespace {

double transparency_denominator(unsigned n) {
    const double len = std::ldexp(1.0, static_cast<int>(n));
    return len * len - len;
}

void require_transparency_shape(const CrossCorrelationTable& t) {
    if (t.n() != t.m()) {
        throw Error(ErrorCode::unsupported_shape, "transparency order requires n == m");
    }
}

// Sum over alpha != 0 of sum_j |sum_i s_i C_ij(alpha)|; the s_j factor of
// (-1)^(beta_i ^ beta_j) drops out under the absolute value.
std::int64_t mto_sum(const CrossCorrelationTable& t, std::uint32_t beta) {
    const unsigned m = t.m();
    const std::size_t len = std::size_t{1} << t.n();
    std::int64_t total = 0;
    for (std::size_t a = 1; a < len; ++a) {
        for (unsigned j = 0; j < m; ++j) {
            std::int64_t inner = 0;
            for (unsigned i = 0; i < m; ++i) {
                const std::int32_t c = t.at(i, j, static_cast<std::uint32_t>(a));
                inner += (beta >> i) & 1u ? -c : c;
            }
            total += inner < 0 ? -inner : inner;
        }
    }
    return total;
}

std::int64_t rto_sum(const CrossCorrelationTable& t, std::uint32_t beta) {
    const unsigned m = t.m();
    const std::size_t len = std::size_t{1} << t.n();
    std::int64_t total = 0;
    for (std::size_t a = 1; a < len; ++a) {
        std::int64_t outer = 0;
        for (unsigned j = 0; j < m; ++j) {
            std::int64_t inner = 0;
            for (unsigned i = 0; i < m; ++i) {
                const std::int32_t c = t.at(i, j, static_cast<std::uint32_t>(a));
                inner += (beta >> i) & 1u ? -c : c;
            }
            outer += (beta >> j) & 1u ? -inner : inner;
        }
        total += outer < 0 ? -outer : outer;
    }
    return total;
}

}  // namespace

double mto_at(const CrossCorrelationTable& t, std::uint32_t beta) {
    require_transparency_shape(t);
    return static_cast<double>(t.m()) -
           static_cast<double>(mto_sum(t, beta)) / transparency_denominator(t.n());
}

double rto_at(const CrossCorrelationTable& t, std::uint32_t beta) {
    require_transparency_shape(t);
    return static_cast<double>(t.m()) -
           static_cast<double>(rto_sum(t, beta)) / transparency_denominator(t.n());
}

// The inner value is invariant under beta -> ~beta, so only betas with the
// top coordinate clear are visited.
double mto(const CrossCorrelationTable& t) {
    require_transparency_shape(t);
    const std::uint32_t half = std::uint32_t{1} << (t.m() - 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t beta = 0; beta < half; ++beta) best = std::min(best, mto_sum(t, beta));
    return static_cast<double>(t.m()) - static_cast<double>(best) / transparency_denominator(t.n());
}

double rto(const CrossCorrelationTable& t) {
    require_transparency_shape(t);
    const std::uint32_t half = std::uint32_t{1} << (t.m() - 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t beta = 0; beta < half; ++beta) best = std::min(best, rto_sum(t, beta));
    return static_cast<double>(t.m()) - static_cast<double>(best) / transparency_denominator(t.n());
}

double mto(const SBox& s) {
    require_square(s, "MTO");
    return mto(cross_correlation(s));
}

double rto(const SBox& s) {
    require_square(s, "RTO");
    return rto(cross_correlation(s));
}

std::vector<double> wcf_terms(unsigned n, WcfParams params) {
    const std::size_t len = std::size_t{1} << n;
    std::vector<double> terms(len + 1);
    for (std::size_t v = 0; v <= len; ++v) {
        const double base = std::fabs(static_cast<double>(static_cast<std::int64_t>(v) - params.x));
        double p = 1.0;
        for (unsigned k = 0; k < params.r; ++k) p *= base;
        terms[v] = p;
    }
    return terms;
}

double wcf_from_spectra(unsigned n, unsigned m, std::span<const std::int32_t> spectra,
                        std::span<const double> terms) {
    const std::size_t len = std::size_t{1} << n;
    const std::size_t rows = std::size_t{1} << m;
    double total = 0.0;
    for (std::size_t i = len; i < rows * len; ++i) {
        total += terms[static_cast<std::size_t>(std::abs(spectra[i]))];
    }
    return total;
}

double wcf(const SBox& s, WcfParams params) {
    return wcf_from_spectra(s.n(), s.m(), component_spectra(s), wcf_terms(s.n(), params));
}

std::vector<unsigned> hw_signature(const SBox& s) {
    std::vector<unsigned> sig(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) sig[x] = popcount(s[x]);
    return sig;
}

bool same_hw_class(const SBox& a, const SBox& b) {
    return a.n() == b.n() && hw_signature(a) == hw_signature(b);
}

PropertyReport evaluate_all(const SBox& s, WcfParams params) {
    PropertyReport r;
    r.n = s.n();
    r.m = s.m();
    r.bijective = is_bijective(s);
    r.wcf_params = params;

    const std::vector<std::int32_t> spectra = component_spectra(s);
    r.nl = nonlinearity_from_spectra(s.n(), s.m(), spectra);
    r.wcf = wcf_from_spectra(s.n(), s.m(), spectra, wcf_terms(s.n(), params));
    r.ccv = ccv(s);
    r.hw_signature = hw_signature(s);

    if (r.bijective) {
        r.du = differential_uniformity(s);
    } else {
        r.errors["du"] = "differential uniformity requires a bijective S-box";
    }
    if (s.n() == s.m()) {
        const CrossCorrelationTable table = cross_correlation(s);
        r.mto = mto(table);
        r.rto = rto(table);
    } else {
        r.errors["mto"] = "transparency order requires n == m";
        r.errors["rto"] = "transparency order requires n == m";
    }
    return r;
}

}  // namespace sboxkit
