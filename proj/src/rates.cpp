// Copyright 2026 The dfslab Authors
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

#include <cmath>
#include <limits>

#include "dfslab/errors.hpp"
#include "dfslab/harness.hpp"

namespace dfslab {
namespace {

Count binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Count c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<unsigned long long>(n - k + i);
    c /= static_cast<unsigned long long>(i);
  }
  return c;
}

}  // namespace

RateModel parse_rate_model(const std::string& name) {
  if (name == "dephasing") return RateModel::Dephasing;
  if (name == "decoherence") return RateModel::Decoherence;
  throw PreconditionError("unknown rate model '" + name + "' (expected dephasing or decoherence)");
}

double log2_count(const Count& x) {
  if (x < 0) throw PreconditionError("log2_count: negative argument");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const std::size_t msb = boost::multiprecision::msb(x);
  if (msb < 53) return std::log2(x.convert_to<double>());
  const std::size_t shift = msb - 52;
  const Count top = x >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

std::vector<RateRow> rate_table(std::size_t max_n, RateModel model) {
  if (max_n > 1024) throw PreconditionError("rate_table: max_n must be <= 1024");
  std::vector<RateRow> rows;
  if (model == RateModel::Dephasing) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      RateRow r;
      r.n = n;
      r.dim = binomial(n, n / 2);
      const double nd = static_cast<double>(n);
      r.rate = log2_count(r.dim) / nd;
      r.asymptote = 1.0 - 0.5 * std::log2(nd) / nd;
      rows.push_back(std::move(r));
    }
  } else {
    for (std::size_t n = 2; n <= max_n; n += 2) {
      RateRow r;
      r.n = n;
      // N! / ((N/2)! (N/2 + 1)!) = C(N, N/2) / (N/2 + 1).
      r.dim = binomial(n, n / 2) / static_cast<unsigned long long>(n / 2 + 1);
      const double nd = static_cast<double>(n);
      r.rate = log2_count(r.dim) / nd;
      r.asymptote = 1.0 - 1.5 * std::log2(nd) / nd;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace dfslab
