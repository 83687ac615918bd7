#include "seedshare/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace seedshare {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void expand(double v) {
    if (!std::isfinite(v)) {
      return;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::vector<double> ticks(const Range& r, int target = 6) {
  const double span = r.hi - r.lo;
  if (!(span > 0.0)) {
    return {r.lo};
  }
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + step * 1e-9;
       v += step) {
    out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

}  // namespace

void LinePlot::add_series(std::string name, std::vector<double> xs,
                          std::vector<double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("LinePlot: x/y length mismatch");
  }
  series_.push_back({std::move(name), std::move(xs), std::move(ys)});
}

std::string LinePlot::render(int width, int height) const {
  const double ml = 70, mr = 160, mt = 40, mb = 55;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  Range xr{1e300, -1e300}, yr{1e300, -1e300};
  for (const auto& s : series_) {
    for (double v : s.xs) xr.expand(v);
    for (double v : s.ys) yr.expand(v);
  }
  if (xr.lo > xr.hi) {
    xr = {0.0, 1.0};
  }
  if (yr.lo > yr.hi) {
    yr = {0.0, 1.0};
  }
  if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;
  if (yr.hi == yr.lo) yr.hi = yr.lo + 1.0;
  yr.hi += 0.05 * (yr.hi - yr.lo);

  const auto px = [&](double x) {
    return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw;
  };
  const auto py = [&](double y) {
    return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\">" << title_ << "</text>\n";

  for (double t : ticks(xr)) {
    const double x = px(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x
        << "\" y2=\"" << mt + ph << "\" stroke=\"#e0e0e0\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(t)
        << "</text>\n";
  }
  for (double t : ticks(yr)) {
    const double y = py(t);
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw
        << "\" y2=\"" << y << "\" stroke=\"#e0e0e0\"/>\n"
        << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(t) << "</text>\n";
  }
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#404040\"/>\n"
      << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_
      << "</text>\n"
      << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "18 " << mt + ph / 2 << ")\">" << y_label_ << "</text>\n";

  for (std::size_t i = 0; i < series_.size(); ++i) {
    const auto& s = series_[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t j = 0; j < s.xs.size(); ++j) {
      if (!std::isfinite(s.xs[j]) || !std::isfinite(s.ys[j])) {
        continue;
      }
      svg << fmt(px(s.xs[j])) << ',' << fmt(py(s.ys[j])) << ' ';
    }
    svg << "\"/>\n";
    const double ly = mt + 16 + 18.0 * static_cast<double>(i);
    svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << s.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace seedshare
