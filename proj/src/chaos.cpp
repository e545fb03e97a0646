#include "namecheck/chaos.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace namecheck {

double fold_to_torus(double v) {
    while (v > 1.0) v -= 2.0;
    while (v < -1.0) v += 2.0;
    return v;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TentRing::TentRing(std::vector<double> x0, std::vector<double> couplings)
    : x_(std::move(x0)), k_(std::move(couplings)) {
    if (x_.empty()) throw std::invalid_argument("TentRing: state must have p >= 1 components");
    if (x_.size() != k_.size())
        throw std::invalid_argument("TentRing: state and coupling dimensions differ");
    for (double v : x_)
        if (!(v >= -1.0 && v <= 1.0))
            throw std::invalid_argument("TentRing: initial state outside [-1,1]");
    for (double k : k_)
        if (!(k >= -1.0 && k <= 1.0))
            throw std::invalid_argument("TentRing: coupling outside [-1,1]");
    next_.resize(x_.size());
}

TentRing TentRing::from_seed(std::uint64_t seed, std::size_t p, double coupling) {
    return from_seed(seed, std::vector<double>(p, coupling));
}

TentRing TentRing::from_seed(std::uint64_t seed, std::vector<double> couplings) {
    std::vector<double> x0(couplings.size());
    std::uint64_t s = seed;
    for (double& v : x0) {
        // top 52 bits -> (u + 0.5) / 2^51 - 1, exact in double, lands in (-1,1)
        const std::uint64_t u = splitmix64(s) >> 12;
        v = (static_cast<double>(u) + 0.5) / 2251799813685248.0 - 1.0;
    }
    return TentRing(std::move(x0), std::move(couplings));
}

void TentRing::step() {
    const std::size_t p = x_.size();
    for (std::size_t j = 0; j < p; ++j) {
        const double neighbor = x_[(j + 1) % p];
        next_[j] = fold_to_torus(1.0 - 2.0 * std::abs(x_[j]) + k_[j] * neighbor);
    }
    x_.swap(next_);
    ++step_count_;
}

double TentRing::uniform01() {
    step();
    const double u = (x_[0] + 1.0) * 0.5;
    if (u >= 1.0) return std::nextafter(1.0, 0.0);
    return u;
}

std::uint64_t TentRing::uniform_int(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("uniform_int: m must be positive");
    const auto v = static_cast<std::uint64_t>(uniform01() * static_cast<double>(m));
    return v >= m ? m - 1 : v;
}

std::vector<std::vector<double>> TentRing::generate(std::size_t n) {
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        step();
        out.push_back(x_);
    }
    return out;
}

std::vector<std::uint8_t> binarize(std::span<const double> seq, double threshold) {
    std::vector<std::uint8_t> bits(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) bits[i] = seq[i] >= threshold ? 1 : 0;
    return bits;
}

double uniformity_chi_square(std::span<const double> seq, std::size_t bins) {
    if (seq.empty()) throw std::invalid_argument("uniformity_chi_square: empty sequence");
    if (bins < 2) throw std::invalid_argument("uniformity_chi_square: need at least 2 bins");
    std::vector<std::size_t> counts(bins, 0);
    for (double v : seq) {
        auto idx = static_cast<std::ptrdiff_t>((v + 1.0) * 0.5 * static_cast<double>(bins));
        if (idx < 0) idx = 0;
        if (idx >= static_cast<std::ptrdiff_t>(bins)) idx = static_cast<std::ptrdiff_t>(bins) - 1;
        ++counts[static_cast<std::size_t>(idx)];
    }
    const double expected = static_cast<double>(seq.size()) / static_cast<double>(bins);
    double stat = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

double autocorrelation(std::span<const double> seq, std::size_t lag) {
    if (lag >= seq.size()) throw std::invalid_argument("autocorrelation: lag >= sequence length");
    const std::size_t n = seq.size() - lag;
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += seq[i];
        mean_b += seq[i + lag];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = seq[i] - mean_a;
        const double db = seq[i + lag] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw std::domain_error("autocorrelation: constant sequence has no defined correlation");
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace namecheck
