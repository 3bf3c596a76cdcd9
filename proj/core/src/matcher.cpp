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
#include <limits>
#include <map>

#include "playtest/errors.hpp"
#include "playtest/scene.hpp"

namespace playtest {
namespace {

__extension__ typedef __int128 Wide;

// Integer luma image (r+g+b per pixel, or block sums thereof).
struct LumaImage {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> v;
  // Copy of v when every value fits 16 bits (full-resolution luma does);
  // 16-bit products vectorize on baseline x86-64.
  std::vector<std::int16_t> v16;

  void make_narrow() {
    if (max_value() <= std::numeric_limits<std::int16_t>::max()) {
      v16.assign(v.begin(), v.end());
    }
  }

  std::int32_t max_value() const {
    return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
  }

  std::int32_t at(int x, int y) const {
    return v[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(x)];
  }
};

LumaImage to_luma(const Frame& f) {
  LumaImage img{f.width(), f.height(), {}, {}};
  img.v.resize(static_cast<std::size_t>(f.width()) *
               static_cast<std::size_t>(f.height()));
  const auto& px = f.pixels();
  for (std::size_t i = 0; i < img.v.size(); ++i) {
    img.v[i] = px[3 * i] + px[3 * i + 1] + px[3 * i + 2];
  }
  img.make_narrow();
  return img;
}

// Sums over non-overlapping factor x factor blocks; partial edge blocks drop.
// Block means (rounded) over non-overlapping factor x factor blocks that
// start at (phase_x, phase_y); partial edge blocks drop. Means rather than
// sums keep coarse levels on the 16-bit fast path.
LumaImage downsample(const LumaImage& src, int factor, int phase_x = 0,
                     int phase_y = 0) {
  LumaImage dst{(src.width - phase_x) / factor, (src.height - phase_y) / factor, {}, {}};
  dst.v.assign(static_cast<std::size_t>(dst.width) *
                   static_cast<std::size_t>(dst.height),
               0);
  for (int y = 0; y < dst.height * factor; ++y) {
    std::int32_t* row =
        dst.v.data() + static_cast<std::size_t>(y / factor) * dst.width;
    const std::int32_t* in =
        src.v.data() + static_cast<std::size_t>(y + phase_y) * src.width + phase_x;
    for (int x = 0; x < dst.width * factor; ++x) row[x / factor] += in[x];
  }
  const std::int32_t area = factor * factor;
  for (std::int32_t& v : dst.v) v = (v + area / 2) / area;
  dst.make_narrow();
  return dst;
}

// Summed-area tables of values and squares, (w+1) x (h+1).
struct Integral {
  int width = 0;
  std::vector<std::int64_t> sum;
  std::vector<std::int64_t> sumsq;
  std::int64_t max_value = 0;

  explicit Integral(const LumaImage& img)
      : width(img.width + 1), max_value(img.max_value()) {
    const std::size_t n = static_cast<std::size_t>(img.width + 1) *
                          static_cast<std::size_t>(img.height + 1);
    sum.assign(n, 0);
    sumsq.assign(n, 0);
    for (int y = 0; y < img.height; ++y) {
      std::int64_t rs = 0;
      std::int64_t rq = 0;
      for (int x = 0; x < img.width; ++x) {
        const std::int64_t v = img.at(x, y);
        rs += v;
        rq += v * v;
        const std::size_t i = idx(x + 1, y + 1);
        sum[i] = sum[idx(x + 1, y)] + rs;
        sumsq[i] = sumsq[idx(x + 1, y)] + rq;
      }
    }
  }

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  std::int64_t box(const std::vector<std::int64_t>& t, int x, int y, int w,
                   int h) const {
    return t[idx(x + w, y + h)] - t[idx(x, y + h)] - t[idx(x + w, y)] +
           t[idx(x, y)];
  }
};

struct PreparedTemplate {
  LumaImage img;
  std::int64_t n = 0;
  std::int64_t sum = 0;
  Wide var_n = 0;  // n * sum(t^2) - sum(t)^2
  std::int64_t max_value = 0;

  explicit PreparedTemplate(LumaImage image) : img(std::move(image)) {
    n = static_cast<std::int64_t>(img.v.size());
    std::int64_t sq = 0;
    for (std::int32_t t : img.v) {
      sum += t;
      sq += static_cast<std::int64_t>(t) * t;
    }
    var_n = static_cast<Wide>(n) * sq - static_cast<Wide>(sum) * sum;
    max_value = img.max_value();
  }
};

template <typename Acc>
std::int64_t cross_sum(const LumaImage& frame, const PreparedTemplate& t, int x,
                       int y) {
  const int w = t.img.width;
  std::int64_t cross = 0;
  for (int j = 0; j < t.img.height; ++j) {
    const std::int32_t* fr =
        frame.v.data() + static_cast<std::size_t>(y + j) * frame.width + x;
    const std::int32_t* tr =
        t.img.v.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(w);
    Acc acc = 0;
    for (int i = 0; i < w; ++i) acc += static_cast<Acc>(fr[i]) * tr[i];
    cross += acc;
  }
  return cross;
}

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
// Dispatched at load time; the default clone keeps baseline portability.
#define PLAYTEST_SIMD_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define PLAYTEST_SIMD_CLONES
#endif

PLAYTEST_SIMD_CLONES
std::int64_t cross_sum16(const LumaImage& frame, const PreparedTemplate& t,
                         int x, int y) {
  const int w = t.img.width;
  std::int64_t cross = 0;
  for (int j = 0; j < t.img.height; ++j) {
    const std::int16_t* fr =
        frame.v16.data() + static_cast<std::size_t>(y + j) * frame.width + x;
    const std::int16_t* tr =
        t.img.v16.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(w);
    std::int32_t acc = 0;
    for (int i = 0; i < w; ++i) acc += static_cast<std::int32_t>(fr[i]) * tr[i];
    cross += acc;
  }
  return cross;
}

// a*b - c*d, in 64 bits when that cannot overflow (the common case).
inline Wide det(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t ab = 0;
  std::int64_t cd = 0;
  std::int64_t r = 0;
  if (!__builtin_mul_overflow(a, b, &ab) && !__builtin_mul_overflow(c, d, &cd) &&
      !__builtin_sub_overflow(ab, cd, &r)) {
    return r;
  }
  return static_cast<Wide>(a) * b - static_cast<Wide>(c) * d;
}

inline double to_double(Wide v) {
  return v >= INT64_MIN && v <= INT64_MAX ? static_cast<double>(static_cast<std::int64_t>(v))
                                          : static_cast<double>(v);
}

// NCC at (x, y) given the raw cross sum there.
double ncc_from_cross(const Integral& integral, const PreparedTemplate& t, int x,
                      int y, std::int64_t cross) {
  if (t.var_n <= 0) return 0.0;
  const std::int64_t fs = integral.box(integral.sum, x, y, t.img.width, t.img.height);
  const std::int64_t fq = integral.box(integral.sumsq, x, y, t.img.width, t.img.height);
  const Wide var_f = det(t.n, fq, fs, fs);
  if (var_f <= 0) return 0.0;
  const Wide num = det(t.n, cross, t.sum, fs);
  const double denom = std::sqrt(to_double(t.var_n) * to_double(var_f));
  return std::clamp(to_double(num) / denom, -1.0, 1.0);
}

// Row sums in 32 bits vectorize well; usable when they cannot overflow.
bool narrow_rows(const Integral& integral, const PreparedTemplate& t) {
  return integral.max_value * t.max_value * t.img.width <
         std::numeric_limits<std::int32_t>::max();
}

double ncc(const LumaImage& frame, const Integral& integral,
           const PreparedTemplate& t, int x, int y) {
  if (t.var_n <= 0) return 0.0;
  const bool narrow = narrow_rows(integral, t);
  const bool packed = narrow && !frame.v16.empty() && !t.img.v16.empty();
  const std::int64_t cross = packed   ? cross_sum16(frame, t, x, y)
                             : narrow ? cross_sum<std::int32_t>(frame, t, x, y)
                                      : cross_sum<std::int64_t>(frame, t, x, y);
  return ncc_from_cross(integral, t, x, y, cross);
}

// Cross sums for every valid offset, row-major over (width - tw + 1) x
// (height - th + 1). The innermost loop runs along the frame row so it
// vectorizes regardless of template width.
template <typename Acc, typename Px>
void dense_cross(const Px* img, int img_width, const LumaImage& t, int ow, int oh,
                 std::vector<std::int64_t>& out) {
  std::vector<Acc> acc(static_cast<std::size_t>(ow));
  out.resize(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
  for (int y = 0; y < oh; ++y) {
    std::fill(acc.begin(), acc.end(), Acc{0});
    for (int j = 0; j < t.height; ++j) {
      const Px* row = img + static_cast<std::size_t>(y + j) * static_cast<std::size_t>(img_width);
      for (int i = 0; i < t.width; ++i) {
        const Acc tv = t.at(i, j);
        if (tv == 0) continue;
        const Px* r = row + i;
        Acc* a = acc.data();
        for (int x = 0; x < ow; ++x) a[x] += static_cast<Acc>(r[x]) * tv;
      }
    }
    std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::ptrdiff_t>(y) * ow);
  }
}

PLAYTEST_SIMD_CLONES
void dense_cross16(const std::int16_t* img, int img_width, const LumaImage& t, int ow,
                   int oh, std::vector<std::int64_t>& out) {
  std::vector<std::int32_t> acc(static_cast<std::size_t>(ow));
  out.resize(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
  for (int y = 0; y < oh; ++y) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int j = 0; j < t.height; ++j) {
      const std::int16_t* row =
          img + static_cast<std::size_t>(y + j) * static_cast<std::size_t>(img_width);
      for (int i = 0; i < t.width; ++i) {
        const std::int32_t tv = t.at(i, j);
        const std::int16_t* r = row + i;
        std::int32_t* a = acc.data();
        for (int x = 0; x < ow; ++x) a[x] += r[x] * tv;
      }
    }
    std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::ptrdiff_t>(y) * ow);
  }
}

// Dense NCC map of t over img.
void dense_ncc(const LumaImage& img, const Integral& integral, const PreparedTemplate& t,
               int ow, int oh, std::vector<double>& scores) {
  std::vector<std::int64_t> cross;
  // Per-offset sums are bounded by n * max * max.
  const bool fits32 = integral.max_value * t.max_value * t.n <
                      std::numeric_limits<std::int32_t>::max();
  if (fits32 && !img.v16.empty()) {
    dense_cross16(img.v16.data(), img.width, t.img, ow, oh, cross);
  } else {
    dense_cross<std::int64_t>(img.v.data(), img.width, t.img, ow, oh, cross);
  }
  scores.resize(cross.size());
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(ow) +
                            static_cast<std::size_t>(x);
      scores[i] = ncc_from_cross(integral, t, x, y, cross[i]);
    }
  }
}

constexpr double kUnset = -std::numeric_limits<double>::infinity();

struct ScoreMap {
  int width = 0;
  int height = 0;
  std::vector<double> s;

  ScoreMap(int w, int h)
      : width(w),
        height(h),
        s(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), kUnset) {}
  double& at(int x, int y) {
    return s[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(x)];
  }
};

constexpr int kMinCoarseSide = 8;

int pyramid_factor(const Frame& tmpl) {
  for (int f : {8, 4, 2}) {
    if (tmpl.width() / f >= kMinCoarseSide && tmpl.height() / f >= kMinCoarseSide) return f;
  }
  return 1;
}

struct Candidate {
  int spec;
  int x;
  int y;
  double score;
};

class FrameMatcher {
 public:
  FrameMatcher(const Frame& frame, const MatchOptions& options)
      : frame_(frame), options_(options), luma_(to_luma(frame)),
        integral_(luma_) {}

  void match(int spec_index, const Frame& tmpl, std::vector<Candidate>& out) {
    const PreparedTemplate t(to_luma(tmpl));
    ScoreMap scores(luma_.width - tmpl.width() + 1,
                    luma_.height - tmpl.height() + 1);
    const int factor = options_.mode == SearchMode::Pyramid
                           ? pyramid_factor(tmpl)
                           : 1;
    if (factor == 1) {
      dense_ncc(luma_, integral_, t, scores.width, scores.height, scores.s);
    } else {
      refine_from_coarse(t, factor, scores);
    }
    collect_peaks(spec_index, scores, out);
  }

 private:
  struct Level {
    LumaImage img;
    Integral integral;
  };

  const Level& level(int factor) {
    auto it = levels_.find(factor);
    if (it == levels_.end()) {
      LumaImage img = downsample(luma_, factor);
      Integral integral(img);
      it = levels_.emplace(factor, Level{std::move(img), std::move(integral)})
               .first;
    }
    return it->second;
  }

  // The frame's blocks are fixed, so a match at offset x sits (-x mod f)
  // pixels into a block. Template downsamples at phases {0, f/2} per axis
  // keep the residual misalignment within f/4.
  void refine_from_coarse(const PreparedTemplate& t, int factor,
                          ScoreMap& scores) {
    const Level& lv = level(factor);
    const double coarse_threshold = options_.threshold - options_.coarse_slack;
    for (int py : {0, factor / 2}) {
      for (int px : {0, factor / 2}) {
        const PreparedTemplate coarse(downsample(t.img, factor, px, py));
        const int cw = lv.img.width - coarse.img.width + 1;
        const int ch = lv.img.height - coarse.img.height + 1;
        if (cw <= 0 || ch <= 0) continue;
        ScoreMap coarse_scores(cw, ch);
        dense_ncc(lv.img, lv.integral, coarse, cw, ch, coarse_scores.s);
        // Only coarse local maxima (ties kept) seed a full-resolution
        // search of +-f/2 around the offset they stand for.
        for (int cy = 0; cy < ch; ++cy) {
          for (int cx = 0; cx < cw; ++cx) {
            if (coarse_scores.at(cx, cy) < coarse_threshold ||
                !coarse_peak(coarse_scores, cx, cy)) {
              continue;
            }
            const int ox = cx * factor - px;
            const int oy = cy * factor - py;
            const int r = factor / 2;
            const int x0 = std::max(0, ox - r);
            const int x1 = std::min(scores.width - 1, ox + r);
            const int y0 = std::max(0, oy - r);
            const int y1 = std::min(scores.height - 1, oy + r);
            for (int y = y0; y <= y1; ++y) {
              for (int x = x0; x <= x1; ++x) {
                double& s = scores.at(x, y);
                if (s == kUnset) s = ncc(luma_, integral_, t, x, y);
              }
            }
          }
        }
      }
    }
  }

  static bool coarse_peak(ScoreMap& m, int x, int y) {
    const double c = m.at(x, y);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
        if (m.at(nx, ny) > c) return false;
      }
    }
    return true;
  }

  // Local maxima over the evaluated offsets. Plateaus keep their first
  // offset in raster order.
  void collect_peaks(int spec_index, ScoreMap& scores,
                     std::vector<Candidate>& out) const {
    for (int y = 0; y < scores.height; ++y) {
      for (int x = 0; x < scores.width; ++x) {
        const double s = scores.at(x, y);
        if (s == kUnset || s < options_.threshold) continue;
        bool peak = true;
        for (int dy = -1; dy <= 1 && peak; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= scores.width || ny >= scores.height) {
              continue;
            }
            const double n = scores.at(nx, ny);
            const bool earlier = dy < 0 || (dy == 0 && dx < 0);
            if (earlier ? n >= s : n > s) {
              peak = false;
              break;
            }
          }
        }
        if (peak) out.push_back({spec_index, x, y, s});
      }
    }
  }

  const Frame& frame_;
  const MatchOptions& options_;
  LumaImage luma_;
  Integral integral_;
  std::map<int, Level> levels_;
};

}  // namespace

double ncc_at(const Frame& frame, const Frame& tmpl, int x, int y) {
  const LumaImage f = to_luma(frame);
  const Integral integral(f);
  return ncc(f, integral, PreparedTemplate(to_luma(tmpl)), x, y);
}

std::vector<IconInstance> match_icons(const Frame& frame,
                                      const std::vector<IconSpec>& specs,
                                      const MatchOptions& options) {
  for (const IconSpec& spec : specs) {
    if (spec.image.width() >= frame.width() ||
        spec.image.height() >= frame.height() || spec.image.empty()) {
      throw TemplateTooLarge(spec.name);
    }
  }

  FrameMatcher matcher(frame, options);
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    matcher.match(static_cast<int>(i), specs[i].image, candidates);
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.spec != b.spec) return a.spec < b.spec;
              if (a.y != b.y) return a.y < b.y;
              return a.x < b.x;
            });

  std::vector<IconInstance> accepted;
  for (const Candidate& c : candidates) {
    const IconSpec& spec = specs[static_cast<std::size_t>(c.spec)];
    const Rect box{c.x, c.y, spec.image.width(), spec.image.height()};
    const bool overlaps = std::any_of(
        accepted.begin(), accepted.end(),
        [&](const IconInstance& a) { return iou(a.bbox, box) > options.nms_iou; });
    if (overlaps) continue;
    accepted.push_back({c.spec, spec.category, box, box.center(), c.score});
  }
  // Stable reading order for callers.
  std::sort(accepted.begin(), accepted.end(),
            [](const IconInstance& a, const IconInstance& b) {
              if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
              if (a.bbox.x != b.bbox.x) return a.bbox.x < b.bbox.x;
              return a.spec < b.spec;
            });
  return accepted;
}

}  // namespace playtest
