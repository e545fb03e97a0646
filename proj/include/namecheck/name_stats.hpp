#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "namecheck/strsim.hpp"

namespace namecheck {

struct LetterStats {
    std::size_t length = 0;
    double vowel_fraction = 0.0;
    double unique_fraction = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Target ranges a plausible (human) name falls into.  Defaults are the
/// Bulgarian-names parameterization; override per locale.
struct NameProfile {
    Interval unique_range{0.35, 0.45};
    Interval length_range{10.0, 15.0};
    Interval vowel_range{0.45, 0.55};
};

/// 2-D feature point: X = similar names in the corpus, Y = invalidity score.
struct FeatureVector {
    std::size_t similarity_count = 0;
    double p_invalid = 0.0;
};

/// Lower-cases and drops everything outside a-z.
std::string normalize_name(std::string_view raw);

/// Stats over the normalized name; vowels are {a,e,i,o,u}.
/// Throws std::invalid_argument when nothing remains after normalization.
LetterStats letter_stats(std::string_view name);

/// 0 inside [lo,hi], otherwise the overshoot scaled by the interval width,
/// capped at 1.
double interval_penalty(double v, const Interval& iv);

/// Mean of the three interval penalties (length, vowel, unique) in [0,1].
double invalidity_score(const LetterStats& stats, const NameProfile& profile = {});

/// Corpus entries (excluding one occurrence of the name itself) whose
/// Jaro-Winkler similarity reaches the threshold.
std::size_t similarity_count(std::string_view name, const std::vector<std::string>& corpus,
                             double threshold, const WinklerParams& params = {});

FeatureVector featurize(std::string_view name, const std::vector<std::string>& corpus,
                        const NameProfile& profile, double threshold);

}  // namespace namecheck
