#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace namecheck {

/// Ring of p coupled tent maps on the torus [-1,1]^p, driven as a
/// deterministic pseudo-random source.  Each step applies
///   x'_j = 1 - 2|x_j| + k_j * x_{j+1}   (cyclic: x_{p+1} == x_1)
/// simultaneously to all components and folds escapees back into [-1,1].
class TentRing {
public:
    static constexpr std::size_t kDefaultDimension = 4;
    static constexpr double kDefaultCoupling = 0.9;

    /// Throws std::invalid_argument unless p >= 1, |x0| == |couplings|,
    /// every x0_j in [-1,1] and every coupling in [-1,1].
    TentRing(std::vector<double> x0, std::vector<double> couplings);

    /// Expands a 64-bit seed into p initial components in (-1,1) via
    /// splitmix64 and fixed-point scaling; bit-identical on any platform.
    static TentRing from_seed(std::uint64_t seed,
                              std::size_t p = kDefaultDimension,
                              double coupling = kDefaultCoupling);
    static TentRing from_seed(std::uint64_t seed, std::vector<double> couplings);

    /// Advances all components one map iteration.
    void step();

    /// Steps once, then rescales x_1 from [-1,1] to [0,1).
    double uniform01();

    /// Uniform draw in [0,m).  Throws std::invalid_argument on m == 0.
    std::uint64_t uniform_int(std::uint64_t m);

    /// The next n state vectors.  The ring advances n steps.
    std::vector<std::vector<double>> generate(std::size_t n);

    const std::vector<double>& state() const { return x_; }
    const std::vector<double>& couplings() const { return k_; }
    std::size_t dimension() const { return x_.size(); }
    std::uint64_t step_count() const { return step_count_; }

private:
    std::vector<double> x_;
    std::vector<double> k_;
    std::vector<double> next_;
    std::uint64_t step_count_ = 0;
};

/// Folds v into [-1,1]: subtract 2 while above, add 2 while below.
/// Values already inside are returned unchanged.
double fold_to_torus(double v);

/// splitmix64 step; advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// bit_i = 1 iff seq_i >= threshold.
std::vector<std::uint8_t> binarize(std::span<const double> seq, double threshold = 0.0);

/// Chi-square statistic of an equi-width histogram over [-1,1] against the
/// uniform expectation.  Throws std::invalid_argument on empty input or
/// bins < 2.  Out-of-range values are clamped into the end bins.
double uniformity_chi_square(std::span<const double> seq, std::size_t bins);

/// Pearson correlation between the sequence and its lag-shifted self.
/// Throws std::invalid_argument when lag >= |seq| and std::domain_error
/// when either slice has zero variance.
double autocorrelation(std::span<const double> seq, std::size_t lag);

}  // namespace namecheck
