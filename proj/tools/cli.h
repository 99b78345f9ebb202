// Copyright 2026 The telefid Authors
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

#ifndef TELEFID_TOOLS_CLI_H
#define TELEFID_TOOLS_CLI_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "telefid/measures.h"
#include "telefid/optimizer.h"
#include "telefid/teleportation.h"

namespace telefid::cli {

/// Exit-code contract.
enum ExitCode : int {
    kSuccess = 0,
    kValidationFailure = 1,
    kUsageError = 2,
    kNotConverged = 3,
};

/// Bad command-line input or an unreadable scenario file.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { optimal, permuted, custom, random };

/// A named teleportation strategy. Custom scenarios carry explicit axis-angle
/// lists; the other kinds are generated from Pauli measurements or a seed.
struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::optimal;
    /// permuted: outcome alpha executes correction sigma_{permutation[alpha]}.
    std::array<int, 4> permutation{1, 0, 3, 2};
    std::uint64_t seed = 0;
    std::array<AxisAngle, 4> u{};
    std::optional<std::array<AxisAngle, 4>> v;

    ProtocolConfig config() const;
};

/// Accepts "optimal", "permuted" (double swap), "permuted:1,0,3,2",
/// "random:<seed>", "file:<path>", or a path ending in ".json".
/// Throws UsageError on malformed specs, files, or non-bijective permutations.
Scenario parse_scenario(const std::string &spec);

/// Scenario file schema:
///   {"name": str, "U": [{"axis": [x, y, z], "angle": rad} x 4], "V": [... x 4]}
/// "V" is optional for files used only as a measurement source. Nonzero axes
/// that are not already unit length to 1e-12 are normalized on load.
Scenario scenario_from_json(const nlohmann::ordered_json &j);
nlohmann::ordered_json scenario_to_json(const Scenario &s);

/// Custom scenario carrying the axis-angle form of an arbitrary config.
Scenario custom_from_config(const std::string &name, const ProtocolConfig &config);

/// Fixed 17-significant-digit rendering used for CSV cells.
std::string format_number(double x);

struct Hooks {
    /// Covariance formula used by `validate`; replaced in negative-control builds.
    CovarianceFn covariance = covariance_element;
};

/// Runs one command. args excludes the program name. Output goes to `out`
/// unless --out redirects it; diagnostics go to `err`. Returns an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Hooks &hooks = {});

}  // namespace telefid::cli

#endif  // TELEFID_TOOLS_CLI_H
