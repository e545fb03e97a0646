#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "namecheck/strsim.hpp"

using namecheck::MatchCounts;
using namecheck::WinklerParams;
using namecheck::jaro;
using namecheck::jaro_winkler;
using namecheck::match_counts;

namespace {

// Plain byte-wise greedy-window reference, no shortcuts.
struct RefCounts {
    std::size_t c = 0;
    double t = 0.0;
};

RefCounts reference_counts(const std::string& s1, const std::string& s2) {
    RefCounts out;
    if (s1.empty() || s2.empty()) return out;
    const int n1 = static_cast<int>(s1.size());
    const int n2 = static_cast<int>(s2.size());
    int window = std::max(n1, n2) / 2 - 1;
    if (window < 0) window = 0;
    std::vector<bool> used1(s1.size(), false), used2(s2.size(), false);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            if (used2[j]) continue;
            if (j < i - window || j > i + window) continue;
            if (s1[i] == s2[j]) {
                used1[i] = true;
                used2[j] = true;
                break;
            }
        }
    }
    std::string a, b;
    for (int i = 0; i < n1; ++i)
        if (used1[i]) a.push_back(s1[i]);
    for (int j = 0; j < n2; ++j)
        if (used2[j]) b.push_back(s2[j]);
    out.c = a.size();
    int swapped = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++swapped;
    out.t = swapped / 2.0;
    return out;
}

double reference_jaro(const std::string& s1, const std::string& s2) {
    const RefCounts rc = reference_counts(s1, s2);
    if (rc.c == 0) return 0.0;
    const double c = static_cast<double>(rc.c);
    return (c / s1.size() + c / s2.size() + (c - rc.t) / c) / 3.0;
}

std::vector<std::string> all_strings_up_to(std::size_t max_len, const std::string& alphabet) {
    std::vector<std::string> out{""};
    std::vector<std::string> frontier{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const std::string& prefix : frontier)
            for (char ch : alphabet) next.push_back(prefix + ch);
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::string random_string(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<int> ch(0, alphabet - 1);
    std::string s(len_dist(rng), 'a');
    for (char& c : s) c = static_cast<char>('a' + ch(rng));
    return s;
}

}  // namespace

TEST_CASE("PAUL/PUAL reproduces the published counts") {
    const MatchCounts mc = match_counts("PAUL", "PUAL");
    CHECK(mc.matches == 4);
    CHECK(mc.transpositions == 1.0);
    CHECK(jaro("PAUL", "PUAL") == doctest::Approx(0.916667).epsilon(1e-6));
}

TEST_CASE("match_counts handles the plain cases") {
    const MatchCounts same = match_counts("abc", "abc");
    CHECK(same.matches == 3);
    CHECK(same.transpositions == 0.0);
    const MatchCounts none = match_counts("abc", "xyz");
    CHECK(none.matches == 0);
    CHECK(none.transpositions == 0.0);
    const MatchCounts empty = match_counts("", "abc");
    CHECK(empty.matches == 0);
    CHECK(empty.transpositions == 0.0);
}

TEST_CASE("jaro matches the worked examples") {
    CHECK(jaro("name", "name") == 1.0);
    CHECK(jaro("MARTHA", "MARHTA") == doctest::Approx(0.944444).epsilon(1e-6));
    CHECK(jaro("", "") == 0.0);
    CHECK(jaro("a", "a") == 1.0);
}

TEST_CASE("jaro_winkler boosts only above the threshold") {
    // c=1, t=0 between abcd/axyz: jaro = (1/4 + 1/4 + 1)/3 = 0.5 < 0.7
    CHECK(jaro("abcd", "axyz") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(jaro_winkler("abcd", "axyz") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(jaro_winkler("MARTHA", "MARHTA") == doctest::Approx(0.961111).epsilon(1e-6));
    CHECK(jaro_winkler("name", "name") == 1.0);
}

TEST_CASE("jaro_winkler validates its parameters") {
    WinklerParams params;
    params.prefix_scale = 0.3;
    CHECK_THROWS_AS(jaro_winkler("a", "a", params), std::invalid_argument);
    params.prefix_scale = -0.1;
    CHECK_THROWS_AS(jaro_winkler("a", "a", params), std::invalid_argument);
}

TEST_CASE("comparison happens per code point") {
    // 'é' is two bytes in UTF-8 but one code point
    const MatchCounts mc = match_counts("n\xc3\xa9" "e", "nee");
    CHECK(mc.matches == 2);
    CHECK(jaro("n\xc3\xa9" "e", "nee") == doctest::Approx((2.0 / 3 + 2.0 / 3 + 1.0) / 3).epsilon(1e-12));
    CHECK(jaro("n\xc3\xa9" "e", "nee") == jaro("nee", "n\xc3\xa9" "e"));
}

TEST_CASE("fuzzed symmetry, bounds and identity") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::string a = random_string(rng, 8, 3);
        const std::string b = random_string(rng, 8, 3);
        const double jab = jaro(a, b);
        const double jba = jaro(b, a);
        CHECK(jab == doctest::Approx(jba).epsilon(1e-12));
        CHECK(jab >= 0.0);
        CHECK(jab <= 1.0);
        const double wab = jaro_winkler(a, b);
        CHECK(wab == doctest::Approx(jaro_winkler(b, a)).epsilon(1e-12));
        CHECK(wab >= jab);
        CHECK(wab <= 1.0);
        if (!a.empty()) CHECK(jaro(a, a) == 1.0);
    }
}

TEST_CASE("agrees with the exhaustive reference on short strings") {
    const auto strings = all_strings_up_to(5, "abc");
    REQUIRE(strings.size() == 364);
    for (const std::string& a : strings) {
        for (const std::string& b : strings) {
            const MatchCounts mc = match_counts(a, b);
            const RefCounts rc = reference_counts(a, b);
            REQUIRE(mc.matches == rc.c);
            REQUIRE(mc.transpositions == rc.t);
            REQUIRE(jaro(a, b) == doctest::Approx(reference_jaro(a, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("runtime grows roughly linearly with input length") {
    std::mt19937_64 rng(7);
    const auto bench = [&](std::size_t len) {
        std::string a(len, 'a'), b(len, 'a');
        std::uniform_int_distribution<int> ch(0, 25);
        for (char& c : a) c = static_cast<char>('a' + ch(rng));
        for (char& c : b) c = static_cast<char>('a' + ch(rng));
        const auto start = std::chrono::steady_clock::now();
        double sink = 0.0;
        for (int rep = 0; rep < 50; ++rep) sink += jaro(a, b);
        const auto stop = std::chrono::steady_clock::now();
        CHECK(sink >= 0.0);
        return std::chrono::duration<double>(stop - start).count();
    };
    bench(2000);  // warm-up
    const double t_short = bench(2000);
    const double t_long = bench(20000);
    // 10x the length should cost nowhere near the 100x of a quadratic scan
    CHECK(t_long < 40.0 * std::max(t_short, 1e-6));
}
