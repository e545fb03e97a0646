#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace namecheck {

/// Matching characters and half-transpositions between two strings.
struct MatchCounts {
    std::size_t matches = 0;      // c: characters paired inside the Jaro window
    double transpositions = 0.0;  // t: half the matched pairs that are out of order
};

struct WinklerParams {
    double boost_threshold = 0.7;
    double prefix_scale = 0.1;  // must stay in [0, 0.25] so the result stays <= 1
    std::size_t max_prefix = 4;
};

/// Greedy left-to-right pairing inside the window floor(max(|s1|,|s2|)/2) - 1
/// (never negative).  Inputs are compared per Unicode code point.
MatchCounts match_counts(std::string_view s1, std::string_view s2);

/// (c/|s1| + c/|s2| + (c-t)/c) / 3, or 0 when c == 0.
double jaro(std::string_view s1, std::string_view s2);

/// Jaro boosted by the common prefix once the base score reaches the
/// threshold.  Throws std::invalid_argument when params are out of range.
double jaro_winkler(std::string_view s1, std::string_view s2,
                    const WinklerParams& params = {});

/// UTF-8 to code points; malformed bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);

}  // namespace namecheck
