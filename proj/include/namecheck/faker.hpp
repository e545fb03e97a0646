#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "namecheck/chaos.hpp"

namespace namecheck {

enum class NameOrigin { Real, RepeatVariant, Gibberish };

/// Stable tag used in CSV/CLI output: "real", "repeat_variant", "gibberish".
std::string_view origin_tag(NameOrigin origin);

struct NameRecord {
    std::string name;
    NameOrigin origin = NameOrigin::Real;
    std::optional<std::string> parent;  // present iff origin != Real
};

struct LengthRange {
    std::size_t lo = 6;
    std::size_t hi = 12;
};

/// Duplicates one letter 2-4 extra times at a position drawn from the ring,
/// e.g. "johnsmith" -> "johnssssmith".  Draw order: position, then extra
/// copies.  Throws std::invalid_argument on an empty name.
std::string repeat_mutation(std::string_view name, TentRing& prng);

/// Random all-lowercase string, length uniform in [lo,hi], letters uniform
/// over a-z.  The range must sit inside [1,64].
std::string gibberish(TentRing& prng, LengthRange range = {});

/// n fake variants of a name: repeat mutation with probability mix, gibberish
/// otherwise.  One uniform01 draw decides each variant before its draws.
std::vector<NameRecord> variations(std::string_view name, std::size_t n, double mix,
                                   TentRing& prng, LengthRange gibberish_length = {});

}  // namespace namecheck
