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

#include "gam/heatmap.hpp"

#include <algorithm>
#include <cmath>

#include "gam/error.hpp"

namespace gam {

Grid::Grid(int w, int h) : w_(w), h_(h) {
  if (w < 1 || h < 1) throw InputError("heat-map grid dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
}

void Grid::add_point(double x, double y, std::uint64_t weight) {
  const int col = std::clamp(static_cast<int>(std::floor(x * w_)), 0, w_ - 1);
  const int from_bottom = std::clamp(static_cast<int>(std::floor(y * h_)), 0, h_ - 1);
  cells_[index(col, h_ - 1 - from_bottom)] += weight;
  total_ += weight;
}

Grid& Grid::operator+=(const Grid& other) {
  if (other.w_ != w_ || other.h_ != h_) throw InputError("heat-map grids differ in size");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  total_ += other.total_;
  return *this;
}

std::string Grid::to_csv() const {
  std::string out;
  for (int r = 0; r < h_; ++r) {
    for (int c = 0; c < w_; ++c) {
      if (c) out += ',';
      out += std::to_string(at(c, r));
    }
    out += '\n';
  }
  return out;
}

void accumulate(Grid& grid, std::span<const GazeSample> samples, std::span<const Fixation> fixations,
                HeatmapUnit unit) {
  if (unit == HeatmapUnit::kFixation) {
    for (const auto& f : fixations) grid.add_point(f.cx, f.cy);
    return;
  }
  for (const auto& s : samples) {
    if (s.valid && s.label == Label::kFixation) grid.add_point(s.x, s.y);
  }
}

std::string render_pgm(const Grid& grid, double gamma) {
  if (!(gamma > 0.0)) throw InputError("render_pgm: gamma must be positive");
  std::string out = "P5\n" + std::to_string(grid.w()) + " " + std::to_string(grid.h()) + "\n255\n";
  const auto& cells = grid.cells();
  const std::uint64_t peak = cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end());
  out.reserve(out.size() + cells.size());
  for (auto v : cells) {
    unsigned char px = 0;
    if (peak > 0 && v > 0) {
      const double level = std::pow(static_cast<double>(v) / static_cast<double>(peak), gamma);
      px = static_cast<unsigned char>(std::lround(255.0 * level));
    }
    out.push_back(static_cast<char>(px));
  }
  return out;
}

Spread spread_stats(const Grid& grid) {
  if (grid.total() < 2) throw InputError("spread_stats: need at least two counts");
  const double n = static_cast<double>(grid.total());
  double sx = 0.0, sy = 0.0;
  for (int r = 0; r < grid.h(); ++r) {
    for (int c = 0; c < grid.w(); ++c) {
      const double wgt = static_cast<double>(grid.at(c, r));
      sx += wgt * (c + 0.5) / grid.w();
      sy += wgt * (grid.h() - r - 0.5) / grid.h();
    }
  }
  const double mx = sx / n, my = sy / n;
  double vx = 0.0, vy = 0.0;
  for (int r = 0; r < grid.h(); ++r) {
    for (int c = 0; c < grid.w(); ++c) {
      const double wgt = static_cast<double>(grid.at(c, r));
      const double dx = (c + 0.5) / grid.w() - mx;
      const double dy = (grid.h() - r - 0.5) / grid.h() - my;
      vx += wgt * dx * dx;
      vy += wgt * dy * dy;
    }
  }
  Spread s;
  s.std_x = std::sqrt(vx / n);
  s.std_y = std::sqrt(vy / n);
  if (s.std_y > 1e-12) s.aspect = s.std_x / s.std_y;
  return s;
}

}  // namespace gam
