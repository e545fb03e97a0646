#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(NAMECHECK_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture() { return (fs::path(TEST_DATA_DIR) / "names20.txt").string(); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("namecheck_cli_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("missing subcommand is a usage error") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("bogus").exit_code == 1);
    CHECK(run_cli("analyze").exit_code == 1);  // --names is required
}

TEST_CASE("missing names file exits with the I/O code") {
    CHECK(run_cli("analyze --names /does/not/exist.txt").exit_code == 2);
}

TEST_CASE("bad flag values exit with the usage code") {
    CHECK(run_cli("analyze --names " + fixture() + " --method nope").exit_code == 1);
    CHECK(run_cli("analyze --names " + fixture() + " --seed-hex xyz").exit_code == 1);
    CHECK(run_cli("analyze --names " + fixture() + " --k 1").exit_code == 1);
}

TEST_CASE("numeric failures exit with code 3") {
    // two samples at lag 1 leave a single pair: zero variance
    CHECK(run_cli("prng-test --samples 2 --lags 1").exit_code == 3);
}

TEST_CASE("gen emits name and origin tag per line") {
    const auto result = run_cli("gen --name JohnSmith --count 5 --seed-hex 2a");
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        const auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        const std::string tag = line.substr(tab + 1);
        CHECK((tag == "repeat_variant" || tag == "gibberish"));
        ++count;
    }
    CHECK(count == 5);

    const auto replay = run_cli("gen --name JohnSmith --count 5 --seed-hex 2a");
    CHECK(replay.output == result.output);
}

TEST_CASE("prng-test prints the statistics as CSV") {
    const auto result =
        run_cli("prng-test --samples 20000 --bins 20 --lags 3 --seed-hex 1f");
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "metric,value");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("chi_square,", 0) == 0);
    const double chi = std::stod(line.substr(line.find(',') + 1));
    CHECK(chi >= 0.0);
    std::size_t lag_rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.rfind("autocorr_lag_", 0) == 0);
        const double r = std::stod(line.substr(line.find(',') + 1));
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        ++lag_rows;
    }
    CHECK(lag_rows == 3);
}

TEST_CASE("analyze writes the report bundle") {
    TempDir dir("analyze");
    const auto result = run_cli("analyze --names " + fixture() + " --seed-hex c0ffee --out-dir " +
                                (dir.path / "run").string());
    CHECK(result.exit_code == 0);
    for (const char* file : {"features.csv", "clusters.json", "silhouette.csv", "flagged.txt"})
        CHECK(fs::exists(dir.path / "run" / file));
    CHECK(count_lines(slurp(dir.path / "run" / "features.csv")) == 201);
}

TEST_CASE("sweep writes silhouette rows for the grid") {
    TempDir dir("sweep");
    const auto result = run_cli("sweep --names " + fixture() +
                                " --kmin 2 --kmax 4 --methods kmeans,agglomerative" +
                                " --seed-hex c0ffee --out-dir " + (dir.path / "run").string());
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(dir.path / "run" / "silhouette.csv");
    CHECK(count_lines(csv) == 1 + 3 * 2);
    CHECK(csv.rfind("k,method,mean_silhouette\n", 0) == 0);
}
