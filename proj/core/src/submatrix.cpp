/*
 * Copyright 2026 The Playtest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <deque>

#include "playtest/errors.hpp"
#include "playtest/infer.hpp"

namespace playtest {

SubmatrixPattern extract_submatrix(const CellGrid& matrix,
                                   const std::vector<GridCell>& touched) {
  if (touched.empty()) throw HeterogeneousTouch();
  for (const GridCell& c : touched) {
    if (!matrix.contains(c)) throw HeterogeneousTouch();
  }
  const int e = matrix.at(touched.front().row, touched.front().col);
  if (e == kEmptyCell) throw HeterogeneousTouch();
  for (const GridCell& c : touched) {
    if (matrix.at(c.row, c.col) != e) throw HeterogeneousTouch();
  }

  // 1 = same icon as the touched cells, 0 = another icon, -1 = empty.
  std::vector<int> norm(matrix.cells.size());
  std::transform(matrix.cells.begin(), matrix.cells.end(), norm.begin(),
                 [e](int v) { return v == kEmptyCell ? -1 : (v == e ? 1 : 0); });
  auto idx = [&](int r, int c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(matrix.cols) +
           static_cast<std::size_t>(c);
  };

  int min_r = touched.front().row, max_r = min_r;
  int min_c = touched.front().col, max_c = min_c;
  auto cover = [&](const GridCell& c) {
    min_r = std::min(min_r, c.row);
    max_r = std::max(max_r, c.row);
    min_c = std::min(min_c, c.col);
    max_c = std::max(max_c, c.col);
  };

  std::vector<bool> visited(norm.size(), false);
  std::deque<GridCell> queue;
  for (const GridCell& c : touched) {
    cover(c);
    if (!visited[idx(c.row, c.col)]) {
      visited[idx(c.row, c.col)] = true;
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    const GridCell cur = queue.front();
    queue.pop_front();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const GridCell n{cur.row + dr, cur.col + dc};
        if (!matrix.contains(n) || visited[idx(n.row, n.col)]) continue;
        if (norm[idx(n.row, n.col)] != 1) continue;
        visited[idx(n.row, n.col)] = true;
        cover(n);
        queue.push_back(n);
      }
    }
  }

  SubmatrixPattern p;
  p.rows = max_r - min_r + 1;
  p.cols = max_c - min_c + 1;
  p.cells.reserve(static_cast<std::size_t>(p.rows * p.cols));
  for (int r = min_r; r <= max_r; ++r) {
    for (int c = min_c; c <= max_c; ++c) p.cells.push_back(norm[idx(r, c)]);
  }
  for (const GridCell& c : touched) {
    const GridCell rebased{c.row - min_r, c.col - min_c};
    if (std::find(p.touched.begin(), p.touched.end(), rebased) == p.touched.end()) {
      p.touched.push_back(rebased);
    }
  }
  return p;
}

}  // namespace playtest
