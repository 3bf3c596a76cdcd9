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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "playtest/geometry.hpp"
#include "playtest/image.hpp"

namespace playtest {

enum class Category : std::uint8_t { Actionable = 1, Target = 2, Function = 4 };

const char* to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

inline constexpr Category kAllCategories[] = {
    Category::Actionable, Category::Target, Category::Function};

struct IconSpec {
  std::string name;
  Category category = Category::Actionable;
  Frame image;
};

// Loads every `<name>.<category>.ppm` in `dir`, sorted by file name.
std::vector<IconSpec> load_icon_specs(const std::filesystem::path& dir);
void save_icon_specs(const std::filesystem::path& dir,
                     const std::vector<IconSpec>& specs);
// Content hash over the sorted spec files (names, categories, pixels).
std::uint64_t icon_set_hash(const std::vector<IconSpec>& specs);

struct IconInstance {
  int spec = -1;  // index into the spec list used for matching
  Category category = Category::Actionable;
  Rect bbox;
  Point centroid;
  double score = 0.0;

  friend bool operator==(const IconInstance&, const IconInstance&) = default;
};

enum class SearchMode {
  // NCC at every valid offset.
  Exhaustive,
  // NCC on a block-averaged level first; full-resolution NCC only around
  // coarse candidates. Falls back to Exhaustive for small templates.
  Pyramid,
};

struct MatchOptions {
  double threshold = 0.90;
  double nms_iou = 0.3;
  SearchMode mode = SearchMode::Pyramid;
  // Coarse candidates need threshold - coarse_slack.
  double coarse_slack = 0.4;
};

// Grayscale normalized cross-correlation of `tmpl` placed with its top-left
// corner at (x, y). Zero-variance windows or templates score 0.
double ncc_at(const Frame& frame, const Frame& tmpl, int x, int y);

// Throws TemplateTooLarge when a template is not strictly smaller than the
// frame in both dimensions.
std::vector<IconInstance> match_icons(const Frame& frame,
                                      const std::vector<IconSpec>& specs,
                                      const MatchOptions& options = {});

struct GridCell {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

inline constexpr int kEmptyCell = -1;

// Row-major matrix of icon-spec indexes (kEmptyCell for empty cells).
struct CellGrid {
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;

  int at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
                 static_cast<std::size_t>(col)];
  }
  bool contains(GridCell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < rows && c.col < cols;
  }
  friend bool operator==(const CellGrid&, const CellGrid&) = default;
};

struct GridLayout {
  int rows = 0;
  int cols = 0;
  std::vector<double> row_lines;  // y of each row, ascending
  std::vector<double> col_lines;  // x of each column, ascending
  std::vector<int> matrix;        // spec index or kEmptyCell, row-major
  std::vector<int> occupant;      // instance index or -1, row-major
  std::vector<GridCell> cell_of;  // per instance passed to detect_grid

  int at(int row, int col) const { return matrix[index(row, col)]; }
  int occupant_at(int row, int col) const { return occupant[index(row, col)]; }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
           static_cast<std::size_t>(col);
  }
  double occupancy() const;
  CellGrid cell_grid() const { return {rows, cols, matrix}; }
};

struct GridOptions {
  double gap_factor = 0.6;
  double min_occupancy = 0.5;
};

// Recovers a row/column layout from instance centroids, or nullopt when the
// instances do not form a matrix.
std::optional<GridLayout> detect_grid(const std::vector<IconInstance>& instances,
                                      const GridOptions& options = {});

struct AbstractContext {
  std::uint8_t categories = 0;  // bitmask of Category
  bool grid_present = false;

  bool has(Category c) const {
    return (categories & static_cast<std::uint8_t>(c)) != 0;
  }
  void add(Category c) { categories |= static_cast<std::uint8_t>(c); }
  bool empty() const { return categories == 0; }

  friend bool operator==(const AbstractContext&,
                         const AbstractContext&) = default;
  friend auto operator<=>(const AbstractContext&,
                          const AbstractContext&) = default;
};

std::string to_string(const AbstractContext& ac);

struct Context {
  std::vector<IconInstance> instances;
  // Layout of the Actionable instances; occupant/cell_of index `instances`.
  std::optional<GridLayout> grid;
  AbstractContext signature;

  // Index of the best-scoring instance whose bbox contains p.
  std::optional<std::size_t> instance_at(Point p) const;
  std::optional<std::size_t> instance_at(Point p, Category c) const;
};

AbstractContext context_signature(const Context& context);

Context build_context(const Frame& frame, const std::vector<IconSpec>& specs,
                      const MatchOptions& match = {},
                      const GridOptions& grid = {});

}  // namespace playtest
