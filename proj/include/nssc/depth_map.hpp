#pragma once
#include <nssc/core.hpp>

#include <cstdint>
#include <vector>

namespace nssc {

// Row-major grid of depth or disparity values; missing_mask (when present)
// flags pixels with no measurement.
struct DepthMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;
  std::vector<std::uint8_t> missing_mask;

  static DepthMap constant(int h, int w, double v) {
    DepthMap m;
    m.height = h;
    m.width = w;
    m.values.assign(static_cast<size_t>(h) * w, v);
    return m;
  }

  int size() const { return height * width; }
  double at(int r, int c) const { return values[static_cast<size_t>(r) * width + c]; }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * width + c]; }
  bool missing(int r, int c) const {
    return !missing_mask.empty() && missing_mask[static_cast<size_t>(r) * width + c] != 0;
  }
  bool valid() const {
    return height > 0 && width > 0 && values.size() == static_cast<size_t>(height) * width &&
           (missing_mask.empty() || missing_mask.size() == values.size());
  }
};

}  // namespace nssc
