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
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <tuple>

#include "playtest/errors.hpp"
#include "playtest/scene.hpp"

namespace playtest {

const char* to_string(Category c) {
  switch (c) {
    case Category::Actionable:
      return "actionable";
    case Category::Target:
      return "target";
    case Category::Function:
      return "function";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (Category c : kAllCategories) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::vector<IconSpec> load_icon_specs(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw ImageError("icon directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<IconSpec> specs;
  for (const fs::path& file : files) {
    const std::string stem = file.stem().string();  // <name>.<category>
    const std::size_t dot = stem.rfind('.');
    if (dot == std::string::npos || dot == 0) {
      throw ImageError("icon file name lacks a category: " + file.string());
    }
    const auto category = parse_category(stem.substr(dot + 1));
    if (!category) {
      throw ImageError("unknown icon category in " + file.string());
    }
    specs.push_back({stem.substr(0, dot), *category, read_ppm(file)});
  }
  return specs;
}

void save_icon_specs(const std::filesystem::path& dir,
                     const std::vector<IconSpec>& specs) {
  std::filesystem::create_directories(dir);
  for (const IconSpec& spec : specs) {
    write_ppm(dir / (spec.name + "." + to_string(spec.category) + ".ppm"),
              spec.image);
  }
}

std::uint64_t icon_set_hash(const std::vector<IconSpec>& specs) {
  std::vector<const IconSpec*> sorted;
  for (const IconSpec& s : specs) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const IconSpec* a, const IconSpec* b) {
    return std::tie(a->name, a->category) < std::tie(b->name, b->category);
  });
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t v) {
    for (int s = 0; s < 64; s += 8) {
      h ^= (v >> s) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const IconSpec* s : sorted) {
    for (char c : s->name) feed(static_cast<unsigned char>(c));
    feed(static_cast<std::uint64_t>(s->category));
    feed(frame_hash(s->image));
  }
  return h;
}

double GridLayout::occupancy() const {
  if (matrix.empty()) return 0.0;
  const auto filled = std::count_if(matrix.begin(), matrix.end(),
                                    [](int v) { return v != kEmptyCell; });
  return static_cast<double>(filled) / static_cast<double>(matrix.size());
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Gap-based 1-D clustering; returns ascending cluster means.
std::vector<double> cluster_1d(std::vector<double> values, double gap) {
  std::sort(values.begin(), values.end());
  std::vector<double> centers;
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] - values[i - 1] > gap) {
      centers.push_back(sum / count);
      sum = 0.0;
      count = 0;
    }
    sum += values[i];
    ++count;
  }
  if (count > 0) centers.push_back(sum / count);
  return centers;
}

// Re-inserts lines for fully empty interior rows/columns: a gap close to an
// integer multiple m >= 2 of the smallest spacing gets m - 1 evenly spaced
// lines.
std::vector<double> fill_gaps(const std::vector<double>& lines, double tol) {
  if (lines.size() < 2) return lines;
  double pitch = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    pitch = std::min(pitch, lines[i] - lines[i - 1]);
  }
  std::vector<double> out{lines.front()};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double gap = lines[i] - lines[i - 1];
    const double m = std::round(gap / pitch);
    if (m >= 2 && std::abs(gap - m * pitch) <= tol) {
      for (int k = 1; k < static_cast<int>(m); ++k) {
        out.push_back(lines[i - 1] + gap * k / m);
      }
    }
    out.push_back(lines[i]);
  }
  return out;
}

std::optional<int> nearest_line(const std::vector<double>& lines, double v,
                                double tol) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const double d = std::abs(lines[i] - v);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  if (best < 0 || best_d > tol) return std::nullopt;
  return best;
}

}  // namespace

std::optional<GridLayout> detect_grid(const std::vector<IconInstance>& instances,
                                      const GridOptions& options) {
  if (instances.size() < 2) return std::nullopt;

  std::vector<double> sides;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const IconInstance& inst : instances) {
    sides.push_back(inst.bbox.width);
    sides.push_back(inst.bbox.height);
    xs.push_back(inst.centroid.x);
    ys.push_back(inst.centroid.y);
  }
  const double gap = options.gap_factor * median(sides);
  const double tol = gap / 2.0;

  GridLayout grid;
  grid.col_lines = fill_gaps(cluster_1d(xs, gap), tol);
  grid.row_lines = fill_gaps(cluster_1d(ys, gap), tol);
  grid.rows = static_cast<int>(grid.row_lines.size());
  grid.cols = static_cast<int>(grid.col_lines.size());
  if (grid.rows < 2 || grid.cols < 2) return std::nullopt;

  const std::size_t cells =
      static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols);
  grid.matrix.assign(cells, kEmptyCell);
  grid.occupant.assign(cells, -1);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto row = nearest_line(grid.row_lines, instances[i].centroid.y, tol);
    const auto col = nearest_line(grid.col_lines, instances[i].centroid.x, tol);
    if (!row || !col) return std::nullopt;
    const std::size_t k = grid.index(*row, *col);
    if (grid.occupant[k] != -1) return std::nullopt;
    grid.occupant[k] = static_cast<int>(i);
    grid.matrix[k] = instances[i].spec;
    grid.cell_of.push_back({*row, *col});
  }
  if (grid.occupancy() < options.min_occupancy) return std::nullopt;
  return grid;
}

std::string to_string(const AbstractContext& ac) {
  std::string out = "{";
  bool first = true;
  for (Category c : kAllCategories) {
    if (!ac.has(c)) continue;
    if (!first) out += ",";
    out += to_string(c);
    first = false;
  }
  out += "}";
  if (ac.grid_present) out += "+grid";
  return out;
}

std::optional<std::size_t> Context::instance_at(Point p) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].bbox.contains(p)) continue;
    if (!best || instances[i].score > instances[*best].score) best = i;
  }
  return best;
}

std::optional<std::size_t> Context::instance_at(Point p, Category c) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].category != c || !instances[i].bbox.contains(p)) continue;
    if (!best || instances[i].score > instances[*best].score) best = i;
  }
  return best;
}

AbstractContext context_signature(const Context& context) {
  AbstractContext ac;
  for (const IconInstance& inst : context.instances) ac.add(inst.category);
  ac.grid_present = context.grid.has_value();
  return ac;
}

Context build_context(const Frame& frame, const std::vector<IconSpec>& specs,
                      const MatchOptions& match, const GridOptions& grid) {
  Context ctx;
  ctx.instances = match_icons(frame, specs, match);

  std::vector<IconInstance> actionable;
  std::vector<int> back;  // actionable index -> context index
  for (std::size_t i = 0; i < ctx.instances.size(); ++i) {
    if (ctx.instances[i].category == Category::Actionable) {
      actionable.push_back(ctx.instances[i]);
      back.push_back(static_cast<int>(i));
    }
  }
  ctx.grid = detect_grid(actionable, grid);
  if (ctx.grid) {
    for (int& occ : ctx.grid->occupant) {
      if (occ >= 0) occ = back[static_cast<std::size_t>(occ)];
    }
    // cell_of is re-expressed per context instance; non-actionable
    // instances get {-1, -1}.
    std::vector<GridCell> cells(ctx.instances.size(), GridCell{-1, -1});
    for (std::size_t k = 0; k < back.size(); ++k) {
      cells[static_cast<std::size_t>(back[k])] = ctx.grid->cell_of[k];
    }
    ctx.grid->cell_of = std::move(cells);
  }
  ctx.signature = context_signature(ctx);
  return ctx;
}

}  // namespace playtest
