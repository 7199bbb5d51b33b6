#pragma once

#include <string>
#include <vector>

#include "rtglab/stats.hpp"

namespace rtg {

void write_text_file(const std::string& path, const std::string& content);

// Minimal standalone SVG histogram; when pdf samples are supplied they are
// drawn as an overlay polyline.
std::string svg_histogram(const std::vector<double>& sample,
                          const std::function<double(double)>& pdf = {},
                          int bins = 40, int width = 640, int height = 400);

// Writes <base>.json always; <base>.<series>.csv per raw series when
// with_csv; <base>.<series>.svg when with_svg (density overlay when the
// series name matches a check with a known reference).
struct EmitOptions {
  bool csv = false;
  bool svg = false;
};
std::vector<std::string> emit_report(const Report& report, const std::string& base_path,
                                     const EmitOptions& opts);

}  // namespace rtg
