// Copyright 2026 The mgloc Authors
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

#ifndef MGLOC_TESTS_FIXTURES_HPP
#define MGLOC_TESTS_FIXTURES_HPP

// Fixture instances are rebuilt from their seed; the files store only the seed, the
// instance description and the dense-oracle value.

#include <array>
#include <stdexcept>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mgloc/evolution.hpp"
#include "mgloc/majorana.hpp"
#include "support.hpp"

namespace mgloc::testing {

inline constexpr double kFixtureDt = 0.3;
inline constexpr std::size_t kFixtureSegments = 3;

inline std::vector<XYCouplings> fixture_schedule(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_schedule(n, kFixtureSegments, rng);
}

struct OtoFixture {
    std::uint64_t seed = 0;
    int n = 0;
    std::string a;
    std::string b;
    double value = 0.0;
};

struct TruncationFixture {
    std::uint64_t seed = 0;
    int n = 0;
    std::string b;
    std::vector<int> sites;  // probe axis z on each
    double mean = 0.0;
};

inline std::vector<std::string> data_lines(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open fixture " + path);
    }
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') {
            out.push_back(line);
        }
    }
    return out;
}

// seed n A B value
inline std::vector<OtoFixture> read_oto_fixtures(const std::string &path) {
    std::vector<OtoFixture> out;
    for (const auto &line : data_lines(path)) {
        std::istringstream ss(line);
        OtoFixture f;
        ss >> f.seed >> f.n >> f.a >> f.b >> f.value;
        out.push_back(f);
    }
    return out;
}

// seed n B sites(comma separated) mean
inline std::vector<TruncationFixture> read_truncation_fixtures(const std::string &path) {
    std::vector<TruncationFixture> out;
    for (const auto &line : data_lines(path)) {
        std::istringstream ss(line);
        TruncationFixture f;
        std::string sites;
        ss >> f.seed >> f.n >> f.b >> sites >> f.mean;
        std::istringstream parts(sites);
        for (std::string tok; std::getline(parts, tok, ',');) {
            f.sites.push_back(std::stoi(tok));
        }
        out.push_back(f);
    }
    return out;
}

}  // namespace mgloc::testing

#endif  // MGLOC_TESTS_FIXTURES_HPP
