#include "rtglab/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtg {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string svg_histogram(const std::vector<double>& sample,
                          const std::function<double(double)>& pdf, int bins, int width,
                          int height) {
  if (sample.empty()) throw std::invalid_argument("svg_histogram: empty sample");
  double lo = *std::min_element(sample.begin(), sample.end());
  double hi = *std::max_element(sample.begin(), sample.end());
  if (hi <= lo) hi = lo + 1.0;
  double span = hi - lo;
  lo -= 0.02 * span;
  hi += 0.02 * span;
  std::vector<double> counts(bins, 0.0);
  for (double x : sample) {
    int b = static_cast<int>((x - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    counts[b] += 1.0;
  }
  double bin_w = (hi - lo) / bins;
  double norm = 1.0 / (static_cast<double>(sample.size()) * bin_w);  // density scale
  double ymax = 0.0;
  for (double c : counts) ymax = std::max(ymax, c * norm);
  if (pdf) {
    for (int i = 0; i <= 200; ++i) ymax = std::max(ymax, pdf(lo + (hi - lo) * i / 200.0));
  }
  if (ymax <= 0.0) ymax = 1.0;
  const int ml = 40, mb = 30, mt = 10, mr = 10;
  double pw = width - ml - mr, ph = height - mt - mb;
  auto X = [&](double x) { return ml + (x - lo) / (hi - lo) * pw; };
  auto Y = [&](double y) { return mt + ph - y / ymax * ph * 0.95; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int b = 0; b < bins; ++b) {
    double x0 = X(lo + b * bin_w);
    double y0 = Y(counts[b] * norm);
    double hgt = mt + ph - y0;
    os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << (pw / bins) * 0.96
       << "\" height=\"" << hgt << "\" fill=\"#7aa6c2\"/>\n";
  }
  if (pdf) {
    os << "<polyline fill=\"none\" stroke=\"#c23b22\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 200; ++i) {
      double x = lo + (hi - lo) * i / 200.0;
      os << X(x) << ',' << Y(pdf(x)) << ' ';
    }
    os << "\"/>\n";
  }
  os << "<line x1=\"" << ml << "\" y1=\"" << (mt + ph) << "\" x2=\"" << (width - mr) << "\" y2=\""
     << (mt + ph) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << (mt + ph)
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"" << (height - 8) << "\" font-size=\"11\">" << lo
     << "</text>\n";
  os << "<text x=\"" << (width - mr - 40) << "\" y=\"" << (height - 8) << "\" font-size=\"11\">"
     << hi << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> emit_report(const Report& report, const std::string& base_path,
                                     const EmitOptions& opts) {
  std::vector<std::string> written;
  std::string json_path = base_path + ".json";
  write_text_file(json_path, report.to_json().dump(2) + "\n");
  written.push_back(json_path);
  if (opts.csv) {
    for (const auto& [name, series] : report.raw) {
      std::ostringstream os;
      os.precision(17);
      os << name << "\n";
      for (double x : series) os << x << "\n";
      std::string p = base_path + "." + name + ".csv";
      write_text_file(p, os.str());
      written.push_back(p);
    }
  }
  if (opts.svg) {
    for (const auto& [name, series] : report.raw) {
      if (series.size() < 20) continue;
      std::function<double(double)> overlay;
      if (name.find("rayleigh") != std::string::npos || name.rfind("S1", 0) == 0 ||
          name.rfind("distance_", 0) == 0)
        overlay = rayleigh_density().pdf;
      if (name.rfind("core_size", 0) == 0 && report.params.contains("s"))
        overlay = core_size_density(report.params["s"].get<std::int32_t>()).pdf;
      std::string p = base_path + "." + name + ".svg";
      write_text_file(p, svg_histogram(series, overlay));
      written.push_back(p);
    }
  }
  return written;
}

}  // namespace rtg
