// Copyright 2026 The weakmeas Authors
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

/**
 * @file
 * Command-line front end. Every subcommand produces a Table that is written as
 * CSV: `#` metadata lines, one header line, then rows with numbers printed to
 * 17 significant digits.
 *
 * Exit codes: 0 success, 2 domain error, 3 tolerance violation or
 * non-convergence, 64 usage error, 74 output not writable.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace weakmeas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> metadata;  ///< without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  /// Index of a header column; throws std::out_of_range when absent.
  [[nodiscard]] std::size_t column(const std::string& name) const;
};

[[nodiscard]] std::string format_number(double x);
void write_csv(std::ostream& out, const Table& table);

/// Data underlying figure n (1..10). `resolution` is the number of cells per
/// axis of the surface lattices; lattice points sit at cell centres.
[[nodiscard]] Table figure_table(int n, int resolution = 60);

/// Parses argv (argv[0] is the program name) and runs one subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weakmeas::cli
