#pragma once

#include <string>
#include <vector>

namespace krf::cli {

struct Series {
  std::string name;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChart {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
  bool legend = true;
  std::vector<Series> series;
};

std::string render_svg(const LineChart& chart);

// blue (early) to red (late)
std::string time_color(double s);

}  // namespace krf::cli
