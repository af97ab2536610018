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

// Regenerates the oracle fixture files: make_fixtures <output dir>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "mgloc/oracle.hpp"
#include "mgloc/truncation.hpp"

namespace {

std::string random_letters(int n, std::mt19937_64 &rng) {
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::uniform_int_distribution<int> pick(0, 3);
    std::string s;
    while (s.find_first_not_of('I') == std::string::npos) {
        s.clear();
        for (int q = 0; q < n; ++q) s += kLetters[pick(rng)];
    }
    return s;
}

constexpr const char *kLicense =
    "# Copyright 2026 The mgloc Authors\n"
    "#\n"
    "# Licensed under the Apache License, Version 2.0 (the \"License\");\n"
    "# you may not use this file except in compliance with the License.\n"
    "# You may obtain a copy of the License at\n"
    "#\n"
    "#      http://www.apache.org/licenses/LICENSE-2.0\n"
    "#\n"
    "# Unless required by applicable law or agreed to in writing, software\n"
    "# distributed under the License is distributed on an \"AS IS\" BASIS,\n"
    "# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
    "# See the License for the specific language governing permissions and\n"
    "# limitations under the License.\n";

std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace mgloc;
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    std::mt19937_64 picker(8128);

    std::ofstream oto(dir + "/oto_pairs.txt");
    oto << kLicense << '\n';
    oto << "# dense-oracle ||[A, U^dag B U]||^2 / 2^(n+2)\n"
        << "# U: 3 segments, dt 0.3, couplings U[-2,2] from mt19937_64(seed)\n"
        << "# seed n A B value\n";
    for (int n = 2; n <= 6; ++n) {
        for (int k = 0; k < 8; ++k) {
            const std::uint64_t seed = 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k);
            const std::string a = random_letters(n, picker);
            const std::string b = random_letters(n, picker);
            const auto u = oracle::dense_evolve(testing::fixture_schedule(n, seed), n, testing::kFixtureDt);
            const double v = oracle::dense_oto(u, oracle::pauli_letters(a), oracle::pauli_letters(b));
            oto << seed << ' ' << n << ' ' << a << ' ' << b << ' ' << exact(v) << '\n';
        }
    }

    std::ofstream trunc(dir + "/truncation.txt");
    trunc << kLicense << '\n';
    trunc << "# dense-oracle mean over the product basis of |<O> - <E_S(O)>|, O = U^dag B U\n"
          << "# probe axis z on every truncated site, basis axis x everywhere\n"
          << "# seed n B sites value\n";
    for (int n = 3; n <= 6; ++n) {
        for (int k = 0; k < 4; ++k) {
            const std::uint64_t seed = 5000 + 10 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k);
            const std::string b = random_letters(n, picker);
            std::vector<int> sites;
            std::string list;
            for (int s = 1 + k % 2; s <= n; s += 2) {
                sites.push_back(s);
                list += (list.empty() ? "" : ",") + std::to_string(s);
            }
            const auto u = oracle::dense_evolve(testing::fixture_schedule(n, seed), n, testing::kFixtureDt);
            const std::vector<Axis> axes(sites.size(), kAxisZ);
            const auto avg = oracle::dense_truncation_average(u, oracle::pauli_letters(b), sites,
                                                              averaging_basis(n, sites, axes));
            trunc << seed << ' ' << n << ' ' << b << ' ' << list << ' ' << exact(avg.mean) << '\n';
        }
    }
    return 0;
}
