#ifndef SEEDSHARE_SVG_HPP
#define SEEDSHARE_SVG_HPP

#include <string>
#include <vector>

namespace seedshare {

/// Minimal static line chart writer. Series share one x axis; axes are
/// scaled to the data with a small margin and labeled with round ticks.
class LinePlot {
 public:
  LinePlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)),
        x_label_(std::move(x_label)),
        y_label_(std::move(y_label)) {}

  void add_series(std::string name, std::vector<double> xs,
                  std::vector<double> ys);

  /// Renders the chart as a standalone SVG document.
  std::string render(int width = 860, int height = 520) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
  };
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

}  // namespace seedshare

#endif
