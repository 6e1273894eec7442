// Copyright 2026 The corrlab Authors.
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

#ifndef CORRLAB_FIXTURES_HPP
#define CORRLAB_FIXTURES_HPP

#include <string>

#include "corrlab/states.hpp"

namespace corrlab {

/// Named state fixtures for scriptable experiments:
///   ghz:n            GHZ on n qubits (ring)
///   tfim:n:h         transverse-field Ising groundstate (ring)
///   aklt:n           spin-1 AKLT ring of n sites
///   expander:d:D:n   sampled expander state (seeded)
///   haar:n[:d]       Haar state on n sites of dimension d (default 2)
///   file:path        chainstate text file
ChainState make_fixture(const std::string& spec, std::uint64_t seed);

/// Scientific notation with 12 fractional digits (%.12e), independent
/// of the global locale. The shared CSV number format.
std::string format_sci(double v);

}  // namespace corrlab

#endif  // CORRLAB_FIXTURES_HPP
