#include "semiaut/defining_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

std::size_t total_size(const std::vector<GridAxis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count;
  return n;
}

void check_axes(const std::vector<GridAxis>& axes) {
  if (axes.empty()) throw PreconditionError("grid needs at least one axis");
  for (const auto& a : axes) {
    if (a.count < 2) throw PreconditionError("grid axis needs at least 2 samples");
    if (!(a.min < a.max)) throw PreconditionError("grid axis needs min < max");
  }
}

}  // namespace

DefiningGrid::DefiningGrid(std::vector<GridAxis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  check_axes(axes_);
  if (values_.size() != total_size(axes_)) throw PreconditionError("grid value count does not match axes");
}

DefiningGrid DefiningGrid::sample(std::vector<GridAxis> axes,
                                  const std::function<double(std::span<const double>)>& f) {
  check_axes(axes);
  const std::size_t n = total_size(axes);
  std::vector<double> values(n);
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> x(axes.size());
  for (std::size_t flat = 0; flat < n; ++flat) {
    for (std::size_t d = 0; d < axes.size(); ++d) x[d] = axes[d].node(idx[d]);
    values[flat] = f(x);
    for (std::size_t d = axes.size(); d-- > 0;) {
      if (++idx[d] < axes[d].count) break;
      idx[d] = 0;
    }
  }
  return {std::move(axes), std::move(values)};
}

double DefiningGrid::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw PreconditionError("grid index has wrong rank");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    if (index[d] >= axes_[d].count) throw PreconditionError("grid index out of range");
    flat = flat * axes_[d].count + index[d];
  }
  return values_[flat];
}

double DefiningGrid::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double DefiningGrid::lipschitz_seminorm() const {
  double lip = 0.0;
  std::size_t stride = 1;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t count = axes_[d].count;
    const double h = axes_[d].spacing();
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
      const std::size_t pos = (flat / stride) % count;
      if (pos + 1 == count) continue;
      lip = std::max(lip, std::abs(values_[flat + stride] - values_[flat]) / h);
    }
    stride *= count;
  }
  return lip;
}

DefiningGrid DefiningGrid::operator-(const DefiningGrid& other) const {
  if (!compatible(other)) throw GridIncompatible("grids have different boxes or sample counts");
  std::vector<double> diff(values_.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = values_[i] - other.values_[i];
  return {axes_, std::move(diff)};
}

DefiningGrid DefiningGrid::operator+(double c) const {
  std::vector<double> shifted(values_);
  for (double& v : shifted) v += c;
  return {axes_, std::move(shifted)};
}

void DefiningGrid::write(std::ostream& os) const {
  os << "semiaut-grid 1\n";
  os << "dims " << axes_.size() << "\n";
  os << std::setprecision(17);
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    os << "axis " << d << " " << axes_[d].min << " " << axes_[d].max << " " << axes_[d].count << "\n";
  }
  os << "values " << values_.size() << "\n";
  for (double v : values_) os << v << "\n";
}

DefiningGrid DefiningGrid::read(std::istream& is) {
  auto fail = [](const std::string& what) -> DefiningGrid { throw PreconditionError("grid file: " + what); };
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "semiaut-grid" || version != 1) return fail("bad header");
  std::size_t dims = 0;
  if (!(is >> tag >> dims) || tag != "dims" || dims == 0) return fail("bad dims line");
  std::vector<GridAxis> axes(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    std::size_t which = 0;
    if (!(is >> tag >> which >> axes[d].min >> axes[d].max >> axes[d].count) || tag != "axis" || which != d) {
      return fail("bad axis line " + std::to_string(d));
    }
  }
  std::size_t n = 0;
  if (!(is >> tag >> n) || tag != "values") return fail("bad values line");
  std::vector<double> values(n);
  for (auto& v : values) {
    if (!(is >> v)) return fail("truncated values");
  }
  return {std::move(axes), std::move(values)};
}

void DefiningGrid::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot write grid file " + path);
  write(os);
}

DefiningGrid DefiningGrid::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("cannot read grid file " + path);
  return read(is);
}

double sup_distance(const DefiningGrid& g1, const DefiningGrid& g2) { return (g1 - g2).sup_norm(); }

double seminorm_distance(const DefiningGrid& g1, const DefiningGrid& g2) {
  return (g1 - g2).lipschitz_seminorm();
}

double lipschitz_distance(const DefiningGrid& g1, const DefiningGrid& g2) {
  const DefiningGrid diff = g1 - g2;
  return diff.sup_norm() + diff.lipschitz_seminorm();
}

}  // namespace semiaut
