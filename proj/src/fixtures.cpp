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

#include "corrlab/fixtures.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "corrlab/random.hpp"

namespace corrlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("fixture: bad integer '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("fixture: bad number '" + s + "'");
  return v;
}

}  // namespace

ChainState make_fixture(const std::string& spec, std::uint64_t seed) {
  auto parts = split(spec, ':');
  const std::string& kind = parts.front();

  if (kind == "ghz") {
    if (parts.size() != 2) throw std::invalid_argument("fixture: ghz:n");
    return ghz_state(parse_int(parts[1]));
  }
  if (kind == "tfim") {
    if (parts.size() != 3) throw std::invalid_argument("fixture: tfim:n:h");
    return tfim_groundstate(parse_int(parts[1]), parse_double(parts[2]));
  }
  if (kind == "aklt") {
    if (parts.size() != 2) throw std::invalid_argument("fixture: aklt:n");
    int n = parse_int(parts[1]);
    MatrixProductState base = aklt_mps();
    MatrixProductState mps;
    mps.translation_invariant = true;
    mps.boundary = MatrixProductState::Boundary::trace_closure;
    mps.site_tensors.assign(static_cast<std::size_t>(n),
                            base.site_tensors.front());
    return mps.to_chain_state(Topology::ring);
  }
  if (kind == "expander") {
    if (parts.size() != 4)
      throw std::invalid_argument("fixture: expander:d:D:n");
    RngStream rng(seed, 0xE1);
    auto [mps, ch] = expander_state(parse_int(parts[1]), parse_int(parts[2]),
                                    parse_int(parts[3]), rng);
    (void)ch;
    return mps.to_chain_state(Topology::ring);
  }
  if (kind == "haar") {
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument("fixture: haar:n[:d]");
    int n = parse_int(parts[1]);
    int d = parts.size() == 3 ? parse_int(parts[2]) : 2;
    double dim = std::pow(double(d), double(n));
    if (n * std::log2(double(d)) > 20.5)
      throw std::invalid_argument("fixture: haar state too large");
    RngStream rng(seed, 0x4a);
    ComplexVector v = haar_state(static_cast<int>(dim), rng);
    return ChainState(v, n, d, Topology::ring);
  }
  if (kind == "file") {
    auto pos = spec.find(':');
    std::string path = spec.substr(pos + 1);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("fixture: cannot open " + path);
    return read_chainstate(in);
  }
  throw std::invalid_argument("fixture: unknown kind '" + kind + "'");
}

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace corrlab
