#include "namecheck/name_stats.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace namecheck {

std::string normalize_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char ch : raw) {
        if (ch >= 'a' && ch <= 'z') out.push_back(ch);
        else if (ch >= 'A' && ch <= 'Z') out.push_back(static_cast<char>(ch - 'A' + 'a'));
    }
    return out;
}

LetterStats letter_stats(std::string_view name) {
    const std::string s = normalize_name(name);
    if (s.empty())
        throw std::invalid_argument("letter_stats: no alphabetic characters in input");
    std::array<bool, 26> seen{};
    std::size_t vowels = 0, distinct = 0;
    for (char ch : s) {
        if (ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u') ++vowels;
        auto& flag = seen[static_cast<std::size_t>(ch - 'a')];
        if (!flag) {
            flag = true;
            ++distinct;
        }
    }
    const auto n = static_cast<double>(s.size());
    return {s.size(), static_cast<double>(vowels) / n, static_cast<double>(distinct) / n};
}

double interval_penalty(double v, const Interval& iv) {
    if (!(iv.lo < iv.hi))
        throw std::invalid_argument("interval_penalty: interval must satisfy lo < hi");
    if (v >= iv.lo && v <= iv.hi) return 0.0;
    const double overshoot = std::max(iv.lo - v, v - iv.hi);
    return std::min(1.0, overshoot / (iv.hi - iv.lo));
}

double invalidity_score(const LetterStats& stats, const NameProfile& profile) {
    const double len_pen = interval_penalty(static_cast<double>(stats.length), profile.length_range);
    const double vowel_pen = interval_penalty(stats.vowel_fraction, profile.vowel_range);
    const double unique_pen = interval_penalty(stats.unique_fraction, profile.unique_range);
    return (len_pen + vowel_pen + unique_pen) / 3.0;
}

std::size_t similarity_count(std::string_view name, const std::vector<std::string>& corpus,
                             double threshold, const WinklerParams& params) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("similarity_count: threshold must lie in [0,1]");
    std::size_t count = 0;
    bool self_skipped = false;
    for (const std::string& other : corpus) {
        if (!self_skipped && other == name) {
            self_skipped = true;
            continue;
        }
        if (jaro_winkler(name, other, params) >= threshold) ++count;
    }
    return count;
}

FeatureVector featurize(std::string_view name, const std::vector<std::string>& corpus,
                        const NameProfile& profile, double threshold) {
    return {similarity_count(name, corpus, threshold),
            invalidity_score(letter_stats(name), profile)};
}

}  // namespace namecheck
