#pragma once

// rho-MNK landscapes: m maximized objectives over bit strings of length n,
// each the mean of n epistatic component functions of k+1 bits. All
// objectives share one set of epistatic links; the m component tables are
// drawn jointly so paired entries have Pearson correlation rho.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plo/rng.hpp"

namespace plo {

inline constexpr int kMaxBits = 30;

using ObjectiveVector = std::vector<double>;

/// Raised when an instance file cannot be parsed or violates an invariant.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InstanceParams {
    int n = 0;
    int m = 0;
    int k = 0;
    double rho = 0.0;
    std::uint64_t gen_seed = 0;

    /// Throws std::invalid_argument unless 1 <= n <= 30, m >= 2, 0 <= k < n
    /// and rho lies strictly between -1/(m-1) and 1.
    void validate() const;

    friend bool operator==(const InstanceParams&, const InstanceParams&) = default;
};

/// Fixed-length bit string. Bit j (0-based) of `bits()` holds variable
/// x_{j+1}; the text form lists x_1 first.
class Solution {
public:
    Solution() = default;
    Solution(std::uint32_t bits, int n);

    static Solution from_string(std::string_view text);

    std::uint32_t bits() const { return bits_; }
    int size() const { return n_; }
    bool bit(int j) const { return (bits_ >> j) & 1U; }
    Solution flipped(int j) const { return Solution(bits_ ^ (1U << j), n_); }
    std::string to_string() const;

    friend bool operator==(const Solution&, const Solution&) = default;

private:
    std::uint32_t bits_ = 0;
    int n_ = 0;
};

class Instance {
public:
    /// `links[j]` holds the k 0-based partners of variable j. `tables` is laid
    /// out objective-major: tables[(i * n + j) * 2^(k+1) + row].
    Instance(InstanceParams params, std::vector<std::vector<int>> links,
             std::vector<double> tables);

    const InstanceParams& params() const { return params_; }
    int n() const { return params_.n; }
    int m() const { return params_.m; }
    int k() const { return params_.k; }
    std::size_t rows() const { return std::size_t{1} << (params_.k + 1); }

    std::span<const int> links(int j) const { return links_[j]; }
    std::span<const double> table(int objective, int variable) const {
        return {tables_.data() + (static_cast<std::size_t>(objective) * params_.n + variable) * rows(),
                rows()};
    }
    std::span<const double> tables() const { return tables_; }

    /// Row index of component j under `bits`: (x_j, x_{j1}, ..., x_{jk}) read
    /// as a binary number with x_j most significant.
    std::uint32_t component_row(std::uint32_t bits, int j) const;

    ObjectiveVector evaluate(const Solution& x) const;

    /// Hot-path evaluation into a caller-provided buffer of size m.
    void evaluate(std::uint32_t bits, std::span<double> out) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    InstanceParams params_;
    std::vector<std::vector<int>> links_;
    std::vector<double> tables_;
};

/// Normal correlation that a Gaussian copula needs so its uniform marginals
/// have Pearson correlation `rho`: 2 sin(pi rho / 6).
double copula_normal_correlation(double rho);

/// Standard normal CDF, evaluated through std::erfc.
double normal_cdf(double x);

/// Draws m-dimensional vectors with U[0,1) marginals and constant pairwise
/// Pearson correlation rho, via a Gaussian copula with Cholesky factor.
class CorrelatedUniformSampler {
public:
    /// Throws std::invalid_argument if the adjusted normal correlation
    /// matrix is not positive definite.
    CorrelatedUniformSampler(int m, double rho);

    int dimension() const { return m_; }
    void sample(Rng& rng, std::span<double> out);

private:
    int m_;
    std::vector<double> chol_;  // lower triangular, row-major m x m
    std::vector<double> normals_;
};

/// Row-major count x m matrix of correlated uniforms.
std::vector<double> sample_correlated_uniforms(int m, double rho, std::size_t count, Rng& rng);

/// Deterministic in params (including gen_seed). Stream consumption order:
/// for j = 1..n the k links by partial Fisher-Yates shuffle; then for each
/// variable j and each row, one m-dimensional correlated draw.
Instance generate_instance(const InstanceParams& params);

/// The 1-bit-flip neighborhood; the j-th neighbor flips bit j.
std::vector<Solution> neighbors(const Solution& x);

void write_instance(const Instance& instance, std::ostream& out);
Instance read_instance(std::istream& in);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double value);

}  // namespace plo
