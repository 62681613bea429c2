// Copyright 2026 The qpeclass Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qpeclass/classifier.hpp"
#include "qpeclass/probability_map.hpp"

namespace qpeclass::cli {

/// Toolkit version recorded in run manifests.
std::string_view version();

/// Runs `qpeclass <subcommand> ...`; args[0] is the program name. Returns the
/// process exit code. Errors are reported on `err` as one JSON line
/// {"error": "..."}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "phi+", "phi-", "psi+", "psi-", or "custom:α,β,γ,δ" where each amplitude
/// is a real or complex literal ("0.5", "0.5+0.5i", "-i"). Custom states must
/// be normalized within 1e-6 and are then renormalized exactly.
TwoQubitState parse_state(const std::string& spec);

/// A complex literal: "re", "imi", "re+imi", "re-imi" ('j' also accepted).
Complex parse_complex(std::string_view text);

/// "start,step,n" (both axes) or "start1,step1,n1,start2,step2,n2".
GridSpec parse_grid(const std::string& text);

OmegaPoint parse_omega(const std::string& text);

/// Path of the manifest written next to an output file.
std::string manifest_path_for(const std::string& output);

}  // namespace qpeclass::cli
