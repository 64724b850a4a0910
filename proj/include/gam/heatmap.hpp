// Copyright 2026 The GAM Authors.
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

#ifndef GAM_HEATMAP_HPP_
#define GAM_HEATMAP_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gam/config.hpp"
#include "gam/fixation.hpp"
#include "gam/types.hpp"

namespace gam {

// Fixation-count grid. Row 0 is the top of the frame.
class Grid {
 public:
  Grid(int w, int h);

  int w() const { return w_; }
  int h() const { return h_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t at(int col, int row) const { return cells_[index(col, row)]; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }

  // Cell containing a normalized point; x = 1 or y = 0 fall into the last
  // column or bottom row.
  void add_point(double x, double y, std::uint64_t weight = 1);

  // Cell-wise sum; dimensions must match.
  Grid& operator+=(const Grid& other);
  friend bool operator==(const Grid&, const Grid&) = default;

  std::string to_csv() const;

 private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(col);
  }

  int w_;
  int h_;
  std::vector<std::uint64_t> cells_;
  std::uint64_t total_ = 0;
};

// Adds one trial. Per-sample mode counts each valid fixation-labelled
// sample; per-fixation mode counts each fixation once at its centroid.
void accumulate(Grid& grid, std::span<const GazeSample> samples, std::span<const Fixation> fixations,
                HeatmapUnit unit);

// Binary 8-bit PGM: value = round(255 * (cell / max)^gamma).
std::string render_pgm(const Grid& grid, double gamma);

struct Spread {
  double std_x = 0.0;
  double std_y = 0.0;
  std::optional<double> aspect;  // std_x / std_y, empty when std_y == 0
};

// Count-weighted standard deviation of cell centres in normalized units.
Spread spread_stats(const Grid& grid);

}  // namespace gam

#endif  // GAM_HEATMAP_HPP_
