// Copyright 2026 The qlock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlock/cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "qlock/protocol.h"

using namespace qlock;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

void check_rectangular(const std::vector<std::vector<std::string>> &rows) {
    REQUIRE(rows.size() >= 2);
    for (const auto &r : rows) {
        CHECK(r.size() == rows[0].size());
    }
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qlock_test_cli";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kSeed = "--seed=00000000000000000000000000000001";

}  // namespace

TEST_CASE("ranges") {
    CHECK(parse_range("10:130:10").values().size() == 12);
    CHECK(parse_range("10:130:10").values().back() == 120);
    CHECK(parse_range("3:6").values() == std::vector<long long>{3, 4, 5});
    CHECK(parse_range("7").values() == std::vector<long long>{7});
    CHECK_THROWS_AS(parse_range("5:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("1:5:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("1:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("1:2:3:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("1:"), std::invalid_argument);
}

TEST_CASE("usage errors exit with 1 and print usage on the diagnostic stream") {
    Run r = run({"frobnicate"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);

    r = run({});
    CHECK(r.code == 1);
    CHECK(r.err.find("Usage") != std::string::npos);

    r = run({"keygen", "--K", "abc"});
    CHECK(r.code == 1);
    CHECK(r.err.find("keygen") != std::string::npos);

    CHECK(run({"keygen"}).code == 1);
    CHECK(run({"keygen", "--K", "0"}).code == 1);
    CHECK(run({"keygen", "--K", "4", "--seed", "xyz"}).code == 1);
    CHECK(run({"fig2", "--n", "10:5"}).code == 1);
    CHECK(run({"moments", "--ensemble", "bogus"}).code == 1);
    CHECK(run({"codebook", "--n", "2", "--K", "2", "--delta", "1.5", kSeed}).code == 1);
    CHECK(run({"keygen", "--help"}).code == 0);
}

TEST_CASE("keygen") {
    Run r = run({"keygen", "--K", "256", kSeed});
    CHECK(r.code == 0);
    int k = std::stoi(r.out);
    CHECK(k >= 0);
    CHECK(k < 256);
    CHECK(r.out == std::to_string(k) + "\n");
    CHECK(run({"keygen", "--K", "256", kSeed}).out == r.out);

    Run csv = run({"keygen", "--K", "256", kSeed, "--csv"});
    auto rows = parse_csv(csv.out);
    check_rectangular(rows);
    CHECK(rows[1][1] == "8");

    Run unseeded = run({"keygen", "--K", "256"});
    CHECK(unseeded.code == 0);
    CHECK(unseeded.err.starts_with("# seed "));
}

TEST_CASE("codebook, encrypt and decrypt through files") {
    auto dir = scratch_dir();
    std::string cb = (dir / "cb.txt").string();
    std::string ct = (dir / "ct.txt").string();
    REQUIRE(run({"codebook", "--n", "8", "--K", "16", kSeed, "--out", cb}).code == 0);
    Codebook parsed = Codebook::parse(slurp(cb));
    CHECK(parsed.size() == 16);
    CHECK(parsed.seed().to_hex() == "00000000000000000000000000000001");
    CHECK(run({"codebook", "--n", "8", "--K", "16", kSeed, "--jobs", "3"}).out == slurp(cb));

    REQUIRE(run({"encrypt", "--codebook", cb, "--key", "3", "--x", "10110101", "--out", ct}).code == 0);
    CHECK(slurp(ct).starts_with("QDLCT v1 n=8\n"));
    Run d = run({"decrypt", "--codebook", cb, "--key", "3", "--cipher", ct});
    CHECK(d.code == 0);
    CHECK(d.out == "10110101 deterministic=true\n");
    CHECK(d.err.empty());

    Run wrong = run({"decrypt", "--codebook", cb, "--key", "4", "--cipher", ct, kSeed});
    CHECK(wrong.code == 0);
    CHECK(wrong.out.find("deterministic=false seed=00000000000000000000000000000001") != std::string::npos);
    CHECK(run({"decrypt", "--codebook", cb, "--key", "4", "--cipher", ct, kSeed}).out == wrong.out);

    CHECK(run({"encrypt", "--codebook", cb, "--key", "16", "--x", "10110101"}).code == 1);
    CHECK(run({"encrypt", "--codebook", cb, "--key", "1", "--x", "101"}).code == 1);
    CHECK(run({"decrypt", "--codebook", (dir / "missing.txt").string(), "--key", "1", "--cipher", ct}).code == 1);
    CHECK(run({"decrypt", "--codebook", cb, "--key", "1", "--cipher", cb}).code == 1);
}

TEST_CASE("fig2 crosses below the one-time pad between n = 40 and n = 70") {
    Run r = run({"fig2", "--eps", "1e-8", "--hmin-frac", "1.0", "--n", "10:130:10", "--csv"});
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    check_rectangular(rows);
    CHECK(rows[0] == std::vector<std::string>{"n", "logK_exact", "logK_asymptotic", "qotp", "approx_otp",
                                              "hmin_frac", "epsilon"});
    CHECK(rows.size() == 13);
    long long crossing = -1;
    for (size_t i = 1; i < rows.size(); i++) {
        bool below = std::stod(rows[i][1]) < std::stod(rows[i][3]);
        if (below && crossing < 0) {
            crossing = std::stoll(rows[i][0]);
        }
        if (crossing >= 0) {
            CHECK(below);
        }
    }
    CHECK(crossing >= 40);
    CHECK(crossing <= 70);

    Run multi = run({"fig2", "--hmin-frac", "1.0,0.8,0.6", "--n", "64:65", "--csv"});
    auto m = parse_csv(multi.out);
    REQUIRE(m.size() == 4);
    CHECK(std::stod(m[2][1]) - std::stod(m[1][1]) == doctest::Approx(0.2 * 64).epsilon(0.1));
    CHECK(std::stod(m[3][1]) - std::stod(m[1][1]) == doctest::Approx(0.4 * 64).epsilon(0.1));
}

TEST_CASE("csv output of every analysis command is rectangular") {
    for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
             {"moments", "--n", "2", "--samples", "2000"},
             {"moments", "--n", "2", "--samples", "2000", "--vectors", "haar"},
             {"gamma", "--delta", "0.01", "--n", "2"},
             {"keylen", "--n", "16", "--eps", "1e-4", "--hmin-frac", "0.8"},
             {"verify-chernoff", "--n", "2", "--K", "10", "--trials", "4"},
             {"verify-maurer", "--n", "1", "--K", "5", "--trials", "50"},
             {"lock-probe", "--n", "2", "--K", "3", "--measurements", "3"},
         }) {
        args.push_back("--csv");
        args.push_back(kSeed);
        Run r = run(args);
        INFO(args[0]);
        CHECK(r.code == 0);
        check_rectangular(parse_csv(r.out));
    }
}

TEST_CASE("analysis commands report expected values") {
    Run g = run({"gamma", "--delta", "0", "--n", "1", "--csv"});
    auto rows = parse_csv(g.out);
    CHECK(std::stod(rows[1][1]) == 2.0);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(4.0 / 3.0));

    Run m = run({"moments", "--n", "1", "--ensemble", "exhaustive", "--csv", kSeed});
    rows = parse_csv(m.out);
    CHECK(rows[1][3] == "0.5");
    CHECK(std::stod(rows[1][5]) == doctest::Approx(1.0 / 3.0));
    CHECK(rows[1][9] == "true");

    Run c = run({"verify-chernoff", "--n", "1", "--K", "24", "--ensemble", "exhaustive", "--trials", "3", "--csv",
                 kSeed});
    rows = parse_csv(c.out);
    CHECK(rows.back()[0] == "summary");
    CHECK(std::stod(rows.back()[2]) == doctest::Approx(0.5));

    Run k = run({"keylen", "--n", "3", "--eps", "0.1", "--csv"});
    rows = parse_csv(k.out);
    CHECK(rows[0][6] == "binding");
    CHECK(std::stod(rows[1][4]) == doctest::Approx(std::log2(831.776616672)).epsilon(1e-9));
}

TEST_CASE("identical seeds give identical output regardless of jobs") {
    for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
             {"moments", "--n", "2", "--samples", "9000"},
             {"verify-chernoff", "--n", "2", "--K", "7", "--trials", "5", "--csv"},
             {"verify-maurer", "--n", "1", "--K", "5", "--trials", "60", "--csv"},
             {"lock-probe", "--n", "2", "--K", "3"},
         }) {
        args.push_back(kSeed);
        Run one = run(args);
        args.push_back("--jobs");
        args.push_back("3");
        Run many = run(args);
        INFO(args[0]);
        CHECK(one.code == 0);
        CHECK(one.out == many.out);
        CHECK(run(args).out == many.out);
    }
}
