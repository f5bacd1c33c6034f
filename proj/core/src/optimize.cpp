// Copyright 2026 The qmsi Authors.
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


#include "qmsi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qmsi {

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& objective,
                             const RealVector& x0, const NelderMeadOptions& options) {
  const auto d = x0.size();
  std::size_t evaluations = 0;
  auto eval = [&](const RealVector& x) {
    ++evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<RealVector> pts;
  std::vector<double> vals;
  pts.push_back(x0);
  vals.push_back(eval(x0));
  for (Eigen::Index i = 0; i < d; ++i) {
    RealVector x = x0;
    x(i) += options.initial_step;
    pts.push_back(x);
    vals.push_back(eval(x));
  }
  if (d == 0) return {x0, vals[0], evaluations};

  std::vector<std::size_t> order(pts.size());
  for (std::size_t it = 0; it < options.iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    // stable_sort keeps ties in index order so runs are reproducible.
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (std::isfinite(vals[worst]) && vals[worst] - vals[best] <= options.tolerance * (1.0 + std::abs(vals[best]))) {
      break;
    }

    RealVector centroid = RealVector::Zero(d);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
    centroid /= static_cast<double>(d);

    const RealVector xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + 0.5 * (xr - centroid))
                                  : RealVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      const std::size_t i = order[k];
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(it - vals.begin());
  return {pts[idx], vals[idx], evaluations};
}

}  // namespace qmsi
