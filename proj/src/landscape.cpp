#include "plo/landscape.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace plo {

namespace {

void check_links(const std::vector<std::vector<int>>& links, int n, int k) {
    if (static_cast<int>(links.size()) != n) {
        throw std::invalid_argument("instance: expected one link list per variable");
    }
    for (int j = 0; j < n; ++j) {
        const auto& partners = links[j];
        if (static_cast<int>(partners.size()) != k) {
            throw std::invalid_argument("instance: link list of variable " + std::to_string(j + 1) +
                                        " does not have k partners");
        }
        for (std::size_t a = 0; a < partners.size(); ++a) {
            if (partners[a] < 0 || partners[a] >= n || partners[a] == j) {
                throw std::invalid_argument("instance: invalid partner index for variable " +
                                            std::to_string(j + 1));
            }
            for (std::size_t b = 0; b < a; ++b) {
                if (partners[a] == partners[b]) {
                    throw std::invalid_argument("instance: repeated partner for variable " +
                                                std::to_string(j + 1));
                }
            }
        }
    }
}

}  // namespace

void InstanceParams::validate() const {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("n must lie in [1, 30], got " + std::to_string(n));
    }
    if (m < 2) {
        throw std::invalid_argument("m must be at least 2, got " + std::to_string(m));
    }
    if (k < 0 || k >= n) {
        throw std::invalid_argument("k must satisfy 0 <= k < n, got k=" + std::to_string(k) +
                                    " n=" + std::to_string(n));
    }
    const double bound = -1.0 / (m - 1);
    if (!(rho > bound) || !(rho < 1.0)) {
        throw std::invalid_argument("rho must satisfy -1/(m-1) < rho < 1, got rho=" +
                                    format_real(rho) + " m=" + std::to_string(m));
    }
}

Solution::Solution(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("Solution: length must lie in [1, 30]");
    }
    if (n < 32 && (bits >> n) != 0) {
        throw std::invalid_argument("Solution: bits set beyond length");
    }
}

Solution Solution::from_string(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxBits)) {
        throw std::invalid_argument("Solution: bit string length must lie in [1, 30]");
    }
    std::uint32_t bits = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '1') {
            bits |= 1U << j;
        } else if (text[j] != '0') {
            throw std::invalid_argument("Solution: bit string may only contain 0 and 1");
        }
    }
    return Solution(bits, static_cast<int>(text.size()));
}

std::string Solution::to_string() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int j = 0; j < n_; ++j) {
        if (bit(j)) out[j] = '1';
    }
    return out;
}

Instance::Instance(InstanceParams params, std::vector<std::vector<int>> links,
                   std::vector<double> tables)
    : params_(params), links_(std::move(links)), tables_(std::move(tables)) {
    params_.validate();
    check_links(links_, params_.n, params_.k);
    const std::size_t expected =
        static_cast<std::size_t>(params_.m) * params_.n * rows();
    if (tables_.size() != expected) {
        throw std::invalid_argument("instance: table storage has wrong size");
    }
    for (double t : tables_) {
        if (!(t >= 0.0 && t < 1.0)) {
            throw std::invalid_argument("instance: table entry outside [0,1)");
        }
    }
}

std::uint32_t Instance::component_row(std::uint32_t bits, int j) const {
    std::uint32_t row = (bits >> j) & 1U;
    for (int partner : links_[j]) {
        row = (row << 1) | ((bits >> partner) & 1U);
    }
    return row;
}

void Instance::evaluate(std::uint32_t bits, std::span<double> out) const {
    const int n = params_.n;
    const std::size_t stride = rows();
    std::uint32_t row_of[kMaxBits];
    for (int j = 0; j < n; ++j) {
        row_of[j] = component_row(bits, j);
    }
    for (int i = 0; i < params_.m; ++i) {
        const double* base = tables_.data() + static_cast<std::size_t>(i) * n * stride;
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            sum += base[j * stride + row_of[j]];
        }
        out[i] = sum / n;
    }
}

ObjectiveVector Instance::evaluate(const Solution& x) const {
    if (x.size() != params_.n) {
        throw std::invalid_argument("evaluate: solution length does not match instance");
    }
    ObjectiveVector out(static_cast<std::size_t>(params_.m));
    evaluate(x.bits(), out);
    return out;
}

double copula_normal_correlation(double rho) {
    return 2.0 * std::sin(std::numbers::pi * rho / 6.0);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

CorrelatedUniformSampler::CorrelatedUniformSampler(int m, double rho)
    : m_(m), chol_(static_cast<std::size_t>(m) * m, 0.0), normals_(static_cast<std::size_t>(m)) {
    if (m < 1) {
        throw std::invalid_argument("correlated sampler: dimension must be positive");
    }
    if (m >= 2 && !(rho > -1.0 / (m - 1))) {
        throw std::invalid_argument("correlated sampler: rho must exceed -1/(m-1)");
    }
    const double r = copula_normal_correlation(rho);
    // Cholesky of the matrix with unit diagonal and constant off-diagonal r.
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b <= a; ++b) {
            double s = (a == b) ? 1.0 : r;
            for (int c = 0; c < b; ++c) {
                s -= chol_[a * m + c] * chol_[b * m + c];
            }
            if (a == b) {
                if (!(s > 0.0)) {
                    throw std::invalid_argument(
                        "correlated sampler: adjusted normal correlation matrix is not positive definite");
                }
                chol_[a * m + a] = std::sqrt(s);
            } else {
                chol_[a * m + b] = s / chol_[b * m + b];
            }
        }
    }
}

void CorrelatedUniformSampler::sample(Rng& rng, std::span<double> out) {
    for (int a = 0; a < m_; ++a) {
        normals_[a] = rng.standard_normal();
    }
    for (int a = 0; a < m_; ++a) {
        double z = 0.0;
        for (int c = 0; c <= a; ++c) {
            z += chol_[a * m_ + c] * normals_[c];
        }
        double u = normal_cdf(z);
        if (u >= 1.0) {
            u = std::nextafter(1.0, 0.0);
        }
        out[a] = u;
    }
}

std::vector<double> sample_correlated_uniforms(int m, double rho, std::size_t count, Rng& rng) {
    CorrelatedUniformSampler sampler(m, rho);
    std::vector<double> out(count * static_cast<std::size_t>(m));
    for (std::size_t s = 0; s < count; ++s) {
        sampler.sample(rng, std::span<double>(out).subspan(s * m, m));
    }
    return out;
}

Instance generate_instance(const InstanceParams& params) {
    params.validate();
    const int n = params.n;
    const int m = params.m;
    const int k = params.k;
    Rng rng(params.gen_seed);

    std::vector<std::vector<int>> links(static_cast<std::size_t>(n));
    std::vector<int> pool;
    for (int j = 0; j < n; ++j) {
        pool.clear();
        for (int p = 0; p < n; ++p) {
            if (p != j) pool.push_back(p);
        }
        for (int t = 0; t < k; ++t) {
            const auto r = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(pool.size() - t)));
            std::swap(pool[t], pool[r]);
        }
        links[j].assign(pool.begin(), pool.begin() + k);
    }

    const std::size_t rows = std::size_t{1} << (k + 1);
    std::vector<double> tables(static_cast<std::size_t>(m) * n * rows);
    CorrelatedUniformSampler sampler(m, params.rho);
    std::vector<double> draw(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) {
        for (std::size_t row = 0; row < rows; ++row) {
            sampler.sample(rng, draw);
            for (int i = 0; i < m; ++i) {
                tables[(static_cast<std::size_t>(i) * n + j) * rows + row] = draw[i];
            }
        }
    }
    return Instance(params, std::move(links), std::move(tables));
}

std::vector<Solution> neighbors(const Solution& x) {
    std::vector<Solution> out;
    out.reserve(static_cast<std::size_t>(x.size()));
    for (int j = 0; j < x.size(); ++j) {
        out.push_back(x.flipped(j));
    }
    return out;
}

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, end);
}

void write_instance(const Instance& instance, std::ostream& out) {
    const auto& p = instance.params();
    out << "rmnk 1 " << p.n << ' ' << p.m << ' ' << p.k << ' ' << format_real(p.rho) << ' '
        << p.gen_seed << '\n';
    for (int j = 0; j < p.n; ++j) {
        out << "links " << (j + 1);
        for (int partner : instance.links(j)) {
            out << ' ' << (partner + 1);
        }
        out << '\n';
    }
    for (int i = 0; i < p.m; ++i) {
        for (int j = 0; j < p.n; ++j) {
            out << "table " << (i + 1) << ' ' << (j + 1);
            for (double v : instance.table(i, j)) {
                out << ' ' << format_real(v);
            }
            out << '\n';
        }
    }
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> next(const char* what) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            std::istringstream ss(line);
            std::vector<std::string> tokens;
            for (std::string t; ss >> t;) tokens.push_back(std::move(t));
            if (!tokens.empty()) return tokens;
        }
        throw FormatError(std::string("instance file: unexpected end of input, expected ") + what);
    }

    bool at_end() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
        }
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError("instance file line " + std::to_string(line_no_) + ": " + msg);
    }

    template <class T>
    T number(const std::string& token) const {
        T value{};
        const char* first = token.data();
        const char* last = first + token.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) fail("cannot parse number '" + token + "'");
        return value;
    }

private:
    std::istream& in_;
    int line_no_ = 0;
};

}  // namespace

Instance read_instance(std::istream& in) {
    LineReader reader(in);
    auto header = reader.next("header");
    if (header.size() != 7 || header[0] != "rmnk") {
        reader.fail("malformed header, expected 'rmnk 1 <n> <m> <k> <rho> <gen_seed>'");
    }
    if (header[1] != "1") {
        reader.fail("unsupported format version " + header[1]);
    }
    InstanceParams params;
    params.n = reader.number<int>(header[2]);
    params.m = reader.number<int>(header[3]);
    params.k = reader.number<int>(header[4]);
    params.rho = reader.number<double>(header[5]);
    params.gen_seed = reader.number<std::uint64_t>(header[6]);
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        reader.fail(e.what());
    }

    const int n = params.n;
    const int k = params.k;
    std::vector<std::vector<int>> links(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto tokens = reader.next("links line");
        if (tokens[0] != "links" || static_cast<int>(tokens.size()) != k + 2) {
            reader.fail("expected 'links <j>' followed by k partners");
        }
        if (reader.number<int>(tokens[1]) != j + 1) {
            reader.fail("links lines out of order");
        }
        for (int t = 0; t < k; ++t) {
            const int partner = reader.number<int>(tokens[2 + t]);
            if (partner < 1 || partner > n || partner == j + 1) {
                reader.fail("partner index out of range");
            }
            links[j].push_back(partner - 1);
        }
    }

    const std::size_t rows = std::size_t{1} << (k + 1);
    std::vector<double> tables(static_cast<std::size_t>(params.m) * n * rows);
    for (int i = 0; i < params.m; ++i) {
        for (int j = 0; j < n; ++j) {
            auto tokens = reader.next("table line");
            if (tokens[0] != "table" || tokens.size() != rows + 3) {
                reader.fail("expected 'table <i> <j>' followed by 2^(k+1) values");
            }
            if (reader.number<int>(tokens[1]) != i + 1 || reader.number<int>(tokens[2]) != j + 1) {
                reader.fail("table lines out of order");
            }
            for (std::size_t r = 0; r < rows; ++r) {
                const double v = reader.number<double>(tokens[3 + r]);
                if (!(v >= 0.0 && v < 1.0)) {
                    reader.fail("table entry " + tokens[3 + r] + " outside [0,1)");
                }
                tables[(static_cast<std::size_t>(i) * n + j) * rows + r] = v;
            }
        }
    }
    if (!reader.at_end()) {
        reader.fail("trailing content after tables");
    }
    try {
        return Instance(params, std::move(links), std::move(tables));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("instance file: ") + e.what());
    }
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_instance(instance, out);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_instance(in);
}

}  // namespace plo
