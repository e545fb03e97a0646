#include "namecheck/faker.hpp"

#include <stdexcept>

namespace namecheck {

std::string_view origin_tag(NameOrigin origin) {
    switch (origin) {
        case NameOrigin::Real: return "real";
        case NameOrigin::RepeatVariant: return "repeat_variant";
        case NameOrigin::Gibberish: return "gibberish";
    }
    return "unknown";
}

std::string repeat_mutation(std::string_view name, TentRing& prng) {
    if (name.empty()) throw std::invalid_argument("repeat_mutation: empty name");
    const auto pos = static_cast<std::size_t>(prng.uniform_int(name.size()));
    const auto extra = 2 + static_cast<std::size_t>(prng.uniform_int(3));
    std::string out(name);
    out.insert(pos, extra, name[pos]);
    return out;
}

std::string gibberish(TentRing& prng, LengthRange range) {
    if (range.lo < 1 || range.hi > 64 || range.lo > range.hi)
        throw std::invalid_argument("gibberish: length range must sit inside [1,64]");
    const auto span = static_cast<std::uint64_t>(range.hi - range.lo + 1);
    const auto len = range.lo + static_cast<std::size_t>(prng.uniform_int(span));
    std::string out(len, 'a');
    for (char& ch : out) ch = static_cast<char>('a' + prng.uniform_int(26));
    return out;
}

std::vector<NameRecord> variations(std::string_view name, std::size_t n, double mix,
                                   TentRing& prng, LengthRange gibberish_length) {
    if (!(mix >= 0.0 && mix <= 1.0))
        throw std::invalid_argument("variations: mix must lie in [0,1]");
    std::vector<NameRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (prng.uniform01() < mix) {
            out.push_back({repeat_mutation(name, prng), NameOrigin::RepeatVariant,
                           std::string(name)});
        } else {
            out.push_back({gibberish(prng, gibberish_length), NameOrigin::Gibberish,
                           std::string(name)});
        }
    }
    return out;
}

}  // namespace namecheck
