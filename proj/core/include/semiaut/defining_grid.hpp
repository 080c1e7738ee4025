#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace semiaut {

/// One uniform axis of a sampling grid.
struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double spacing() const { return (max - min) / static_cast<double>(count - 1); }
  double node(std::size_t i) const { return min + spacing() * static_cast<double>(i); }
  bool operator==(const GridAxis&) const = default;
};

/// Samples of a real function on a uniform tensor grid. Row-major: the last axis varies fastest.
class DefiningGrid {
 public:
  DefiningGrid() = default;
  /// Throws PreconditionError unless every axis has count >= 2 and min < max, and values match.
  DefiningGrid(std::vector<GridAxis> axes, std::vector<double> values);

  /// Evaluates f at every node; f receives the node coordinates (one per axis).
  static DefiningGrid sample(std::vector<GridAxis> axes,
                             const std::function<double(std::span<const double>)>& f);

  const std::vector<GridAxis>& axes() const { return axes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return values_.size(); }
  double at(std::span<const std::size_t> index) const;

  bool compatible(const DefiningGrid& other) const { return axes_ == other.axes_; }

  double sup_norm() const;
  /// max over adjacent node pairs along every axis of |delta value| / spacing
  double lipschitz_seminorm() const;

  DefiningGrid operator-(const DefiningGrid& other) const;
  DefiningGrid operator+(double c) const;

  void write(std::ostream& os) const;
  static DefiningGrid read(std::istream& is);
  void save(const std::string& path) const;
  static DefiningGrid load(const std::string& path);

 private:
  std::vector<GridAxis> axes_;
  std::vector<double> values_;
};

/// sup |g1 - g2| + Lip(g1 - g2); throws GridIncompatible on mismatched grids.
double lipschitz_distance(const DefiningGrid& g1, const DefiningGrid& g2);
double sup_distance(const DefiningGrid& g1, const DefiningGrid& g2);
double seminorm_distance(const DefiningGrid& g1, const DefiningGrid& g2);

}  // namespace semiaut
