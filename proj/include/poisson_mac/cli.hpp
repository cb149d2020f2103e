// Copyright 2026 The poisson-mac Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POISSON_MAC_CLI_HPP_
#define POISSON_MAC_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace poisson_mac::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 2,
  kOutOfRegime = 3,
};

/// Parses "lo:hi:step", "lo:hi" (with cells > 0), "a,b,c" or a single
/// number. Throws std::invalid_argument mentioning `field`.
std::vector<double> parse_grid(std::string_view text, int cells,
                               std::string_view field);

/// %.12g, the fixed CSV number format.
std::string format_number(double v);

/// Sweep parallelism: hardware threads capped by POISSON_MAC_THREADS.
unsigned sweep_threads();

/// Runs one command. `args` excludes the program name. CSV goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace poisson_mac::cli

#endif  // POISSON_MAC_CLI_HPP_
