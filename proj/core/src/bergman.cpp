#include "semiaut/bergman.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
using Gauss = boost::math::quadrature::gauss<double, 30>;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

int effective_degree(int n, double ratio) {
  if (ratio >= 1.0 - 1e-12) return n;
  return std::min(n, static_cast<int>(std::ceil(37.0 / -std::log(ratio))));
}

// Fourier bandwidth of the basis families restricted to boundary circle `ci`
std::size_t circle_bandwidth(const CircleDomain& cd, const BasisSpec& spec, std::size_t ci) {
  const auto circles = cd.circles();
  const Circle& c = circles[ci];
  const Circle& outer = cd.outer();
  int bw = 0;
  if (ci == 0) {
    bw = spec.outer_degree;
  } else {
    bw = effective_degree(spec.outer_degree, (std::abs(c.center - outer.center) + c.radius) / outer.radius);
  }
  for (std::size_t k = 0; k < cd.holes().size(); ++k) {
    const Circle& h = cd.holes()[k];
    const int n = spec.hole_degrees[k];
    if (ci == k + 1) {
      bw = std::max(bw, n);
      continue;
    }
    const double sep = std::abs(h.center - c.center);
    const double dist = ci == 0 ? c.radius - sep : sep - c.radius;
    const double pole = ci == 0 ? sep / c.radius : c.radius / sep;
    const int eff = effective_degree(n, h.radius / dist);
    const double tail = pole > 1e-12 ? 37.0 / -std::log(pole) : 0.0;
    bw = std::max(bw, static_cast<int>(std::ceil(eff / (1.0 - pole) + tail)));
  }
  return static_cast<std::size_t>(bw);
}

// values of the basis (rows = basis index) and, in `anti`, an antiderivative of each element
void evaluate_basis(const CircleDomain& cd, const BasisSpec& spec, cplx z, int max_order, Eigen::MatrixXcd& vals,
                    Eigen::VectorXcd* anti) {
  const std::size_t nb = spec.size();
  vals.resize(static_cast<Eigen::Index>(nb), max_order + 1);
  if (anti) anti->resize(static_cast<Eigen::Index>(nb));
  const Circle& o = cd.outer();
  const cplx s = (z - o.center) / o.radius;
  Eigen::Index row = 0;
  {
    cplx p = 1.0;  // s^n
    cplx pm1 = 0.0, pm2 = 0.0;
    for (int n = 0; n <= spec.outer_degree; ++n) {
      vals(row, 0) = p;
      if (max_order >= 1) vals(row, 1) = static_cast<double>(n) * pm1 / o.radius;
      if (max_order >= 2) vals(row, 2) = static_cast<double>(n) * (n - 1) * pm2 / (o.radius * o.radius);
      if (anti) (*anti)(row) = o.radius / (n + 1.0) * p * s;
      pm2 = pm1;
      pm1 = p;
      p *= s;
      ++row;
    }
  }
  for (std::size_t k = 0; k < cd.holes().size(); ++k) {
    const Circle& h = cd.holes()[k];
    const cplx t = h.radius / (z - h.center);
    cplx p = t;  // t^n
    for (int n = 1; n <= spec.hole_degrees[k]; ++n) {
      vals(row, 0) = p;
      if (max_order >= 1) vals(row, 1) = -static_cast<double>(n) / h.radius * p * t;
      if (max_order >= 2) vals(row, 2) = static_cast<double>(n) * (n + 1) / (h.radius * h.radius) * p * t * t;
      if (anti) {
        (*anti)(row) = n == 1 ? cplx(h.radius * std::log(std::norm(z - h.center)))
                              : h.radius / (1.0 - n) * p / t;
      }
      p *= t;
      ++row;
    }
  }
}

struct PivotedCholesky {
  std::vector<int> perm;
  Eigen::MatrixXcd l;
};

// outer-product Cholesky with diagonal pivoting; stops once the largest remaining pivot
// falls below rel_tol times the largest initial diagonal
PivotedCholesky pivoted_cholesky(const Eigen::MatrixXcd& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd w = a;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);
  const double dmax = a.diagonal().real().maxCoeff();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = w(k, k).real();
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (w(i, i).real() > best) {
        best = w(i, i).real();
        piv = i;
      }
    }
    if (!(best > rel_tol * dmax)) break;
    if (piv != k) {
      w.row(k).swap(w.row(piv));
      w.col(k).swap(w.col(piv));
      std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(piv)]);
    }
    const double d = std::sqrt(w(k, k).real());
    w(k, k) = d;
    const Eigen::Index rest = n - k - 1;
    if (rest > 0) {
      w.col(k).tail(rest) /= d;
      // full update: later pivot swaps read both triangles
      w.bottomRightCorner(rest, rest).noalias() -= w.col(k).tail(rest) * w.col(k).tail(rest).adjoint();
    }
    ++rank;
  }
  PivotedCholesky out;
  out.perm.assign(order.begin(), order.begin() + rank);
  out.l = w.topLeftCorner(rank, rank).triangularView<Eigen::Lower>();
  return out;
}


// local gap of boundary circle ci: distance to the nearest other boundary circle
double gap_of_circle(const CircleDomain& cd, std::size_t ci) {
  const auto circles = cd.circles();
  if (circles.size() == 1) return cd.outer().radius;
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < circles.size(); ++j) {
    if (j == ci) continue;
    if (ci == 0) g = std::min(g, circle_gap(circles[0], circles[j], true));
    else if (j == 0) g = std::min(g, circle_gap(circles[0], circles[ci], true));
    else g = std::min(g, circle_gap(circles[ci], circles[j], false));
  }
  return g;
}

}  // namespace

BasisSpec BasisSpec::uniform(const CircleDomain& cd, int n) {
  return {n, std::vector<int>(cd.holes().size(), n)};
}

std::size_t BasisSpec::size() const {
  std::size_t s = static_cast<std::size_t>(outer_degree) + 1;
  for (int d : hole_degrees) s += static_cast<std::size_t>(d);
  return s;
}

BergmanModel BergmanModel::assemble(const CircleDomain& cd, const BasisSpec& spec) {
  if (spec.outer_degree < 4) throw PreconditionError("Bergman truncation needs N >= 4");
  if (spec.hole_degrees.size() != cd.holes().size()) throw PreconditionError("basis spec does not match the holes");
  for (int d : spec.hole_degrees) {
    if (d < 1) throw PreconditionError("hole degrees must be >= 1");
  }
  BergmanModel m;
  m.domain_ = cd;
  m.spec_ = spec;
  const auto nb = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(nb, nb);
  const auto circles = cd.circles();
  for (std::size_t ci = 0; ci < circles.size(); ++ci) {
    const Circle& c = circles[ci];
    const std::size_t q = std::max<std::size_t>(256, next_pow2(2 * circle_bandwidth(cd, spec, ci) + 64));
    const auto qn = static_cast<Eigen::Index>(q);
    Eigen::MatrixXcd fm(qn, nb), bz(qn, nb);
    Eigen::MatrixXcd vals;
    Eigen::VectorXcd anti;
    for (Eigen::Index j = 0; j < qn; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(q);
      const cplx e = std::polar(1.0, t);
      const cplx z = c.center + c.radius * e;
      const cplx dz = kI * c.radius * e;
      evaluate_basis(cd, spec, z, 0, vals, &anti);
      fm.row(j) = anti.transpose();
      bz.row(j) = (vals.col(0) * dz).transpose();
    }
    const double orient = ci == 0 ? 1.0 : -1.0;
    const cplx factor = 0.5 * kI * orient * (2.0 * kPi / static_cast<double>(q));
    g.noalias() += factor * (fm.transpose() * bz.conjugate());
  }
  m.asymmetry_ = (g - g.adjoint()).cwiseAbs().maxCoeff();
  m.gram_ = 0.5 * (g + g.adjoint());

  const Eigen::VectorXd diag = m.gram_.diagonal().real();
  if (!(diag.minCoeff() > 0.0)) throw NumericalDegeneracy("Gram matrix has a non-positive diagonal entry");
  m.scale_ = diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd scaled = m.scale_.asDiagonal() * m.gram_ * m.scale_.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(scaled, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  m.condition_ = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(m.condition_ <= spec.condition_limit)) {
    throw TruncationTooLarge("Gram condition number " + std::to_string(m.condition_) + " exceeds " +
                             std::to_string(spec.condition_limit) + "; use a smaller truncation N");
  }
  auto chol = pivoted_cholesky(scaled, 1e-13);
  m.perm_ = std::move(chol.perm);
  m.chol_ = std::move(chol.l);
  return m;
}

Eigen::MatrixXcd BergmanModel::basis_values(cplx z, int max_order) const {
  Eigen::MatrixXcd vals;
  evaluate_basis(domain_, spec_, z, max_order, vals, nullptr);
  return vals;
}

void BergmanModel::check_inside(cplx z) const {
  if (!domain_.contains(z)) throw OutOfDomain("Bergman evaluation outside the circle domain", 0);
}

Eigen::VectorXcd BergmanModel::scaled_basis(cplx w) const {
  const Eigen::MatrixXcd vals = basis_values(w, 0);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(perm_.size()));
  for (std::size_t p = 0; p < perm_.size(); ++p) y(static_cast<Eigen::Index>(p)) = vals(perm_[p], 0) * scale_(perm_[p]);
  return y;
}

Eigen::VectorXcd BergmanModel::orthonormal_values(cplx z) const {
  return chol_.triangularView<Eigen::Lower>().solve(scaled_basis(z));
}

Eigen::VectorXcd BergmanModel::kernel_row(cplx z) const {
  check_inside(z);
  const Eigen::VectorXcd v = orthonormal_values(z);
  return chol_.adjoint().triangularView<Eigen::Upper>().solve(v);
}

cplx BergmanModel::kernel(cplx z, cplx w) const {
  check_inside(z);
  check_inside(w);
  return orthonormal_values(w).dot(orthonormal_values(z));
}

KernelJet BergmanModel::jet(cplx z) const {
  check_inside(z);
  const Eigen::MatrixXcd vals = basis_values(z, 2);
  Eigen::MatrixXcd y(static_cast<Eigen::Index>(perm_.size()), 3);
  for (std::size_t p = 0; p < perm_.size(); ++p) {
    y.row(static_cast<Eigen::Index>(p)) = vals.row(perm_[p]) * scale_(perm_[p]);
  }
  const Eigen::MatrixXcd v = chol_.triangularView<Eigen::Lower>().solve(y);
  // K_ab = sum_p v_p^(a)(z) conj(v_p^(b)(z))
  const Eigen::MatrixXcd prod = v.transpose() * v.conjugate();
  KernelJet k{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) k[a][b] = prod(a, b);
  }
  return k;
}

double BergmanModel::metric_value(cplx z) const {
  const KernelJet k = jet(z);
  const double kz = k[0][0].real();
  return (k[1][1] / kz - k[1][0] * k[0][1] / (kz * kz)).real();
}

MetricSample BergmanModel::metric(cplx z) const {
  const KernelJet k = jet(z);
  const cplx K = k[0][0], K10 = k[1][0], K01 = k[0][1], K11 = k[1][1];
  const cplx K20 = k[2][0], K02 = k[0][2], K21 = k[2][1], K12 = k[1][2], K22 = k[2][2];
  const cplx K2 = K * K, K3 = K2 * K, K4 = K3 * K;
  const cplx g = K11 / K - K10 * K01 / K2;
  const cplx gz = K21 / K - K11 * K10 / K2 - (K20 * K01 + K10 * K11) / K2 + 2.0 * K10 * K10 * K01 / K3;
  const cplx gzz = (K22 / K - K21 * K01 / K2) - ((K12 * K10 + K11 * K11) / K2 - 2.0 * K11 * K10 * K01 / K3) -
                   ((K21 * K01 + K20 * K02 + K11 * K11 + K10 * K12) / K2 -
                    2.0 * (K20 * K01 + K10 * K11) * K01 / K3) +
                   (2.0 * (2.0 * K10 * K11 * K01 + K10 * K10 * K02) / K3 - 6.0 * K10 * K10 * K01 * K01 / K4);
  MetricSample s;
  s.z = z;
  s.kernel = K.real();
  s.metric = g.real();
  if (!(s.kernel > 0.0) || !(s.metric > 0.0)) {
    throw NumericalDegeneracy("Bergman metric not positive at a probe (truncation artifact); increase N");
  }
  const double gr = s.metric;
  s.curvature = -(2.0 / gr) * (gr * gzz.real() - std::norm(gz)) / (gr * gr);

  const double h0 = 1e-3 * domain_.boundary_distance(z);
  auto lap = [&](double h) {
    const double c = std::log(metric_value(z));
    const double sum = std::log(metric_value(z + h)) + std::log(metric_value(z - h)) +
                       std::log(metric_value(z + kI * h)) + std::log(metric_value(z - kI * h));
    return (sum - 4.0 * c) / (h * h);
  };
  const double laplacian = (4.0 * lap(h0 / 2.0) - lap(h0)) / 3.0;
  s.curvature_fd = -(2.0 / gr) * laplacian / 4.0;
  return s;
}

BergmanModel assemble_model(const CircleDomain& cd, int n) { return BergmanModel::assemble(cd, n); }
cplx kernel_eval(const BergmanModel& m, cplx z, cplx w) { return m.kernel(z, w); }
MetricSample metric_eval(const BergmanModel& m, cplx z) { return m.metric(z); }

cplx area_integral(const CircleDomain& cd, const std::function<cplx(cplx)>& f, const QuadratureOptions& q) {
  const cplx c0 = cd.outer().center;
  const double R = cd.outer().radius;
  auto ray = [&](double theta) {
    const cplx e = std::polar(1.0, theta);
    std::vector<std::pair<double, double>> cuts;
    for (const auto& h : cd.holes()) {
      const cplx d = h.center - c0;
      const double b = (std::conj(e) * d).real();
      const double disc = b * b - (std::norm(d) - h.radius * h.radius);
      if (disc <= 0.0) continue;
      const double s = std::sqrt(disc);
      cuts.emplace_back(std::max(0.0, b - s), std::min(R, b + s));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> pieces;
    double lo = 0.0;
    for (const auto& [a, b] : cuts) {
      if (b <= lo) continue;
      if (a > lo) pieces.emplace_back(lo, a);
      lo = std::max(lo, b);
    }
    if (lo < R) pieces.emplace_back(lo, R);
    cplx sum = 0.0;
    for (const auto& [a, b] : pieces) {
      const double w = (b - a) / q.radial_panels;
      for (int p = 0; p < q.radial_panels; ++p) {
        sum += Gauss::integrate([&](double r) { return f(c0 + r * e) * r; }, a + p * w, a + (p + 1) * w);
      }
    }
    return sum;
  };

  std::vector<double> breaks;
  for (const auto& h : cd.holes()) {
    const cplx d = h.center - c0;
    if (std::abs(d) <= h.radius) continue;
    const double phi = std::arg(d);
    const double half = std::asin(h.radius / std::abs(d));
    for (double b : {phi - half, phi + half}) breaks.push_back(std::remainder(b, 2.0 * kPi));
  }
  if (breaks.empty()) {
    cplx sum = 0.0;
    for (int j = 0; j < q.angular_nodes; ++j) sum += ray(2.0 * kPi * j / q.angular_nodes);
    return sum * (2.0 * kPi / q.angular_nodes);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(breaks.front() + 2.0 * kPi);
  const int panels = std::max(2, q.angular_nodes / (30 * static_cast<int>(breaks.size() - 1)));
  cplx sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    // theta = mid - half cos(s) clusters nodes at the tangent angles
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double ds = kPi / panels;
    for (int p = 0; p < panels; ++p) {
      sum += Gauss::integrate([&](double s) { return ray(mid - half * std::cos(s)) * (half * std::sin(s)); }, p * ds,
                              (p + 1) * ds);
    }
  }
  return sum;
}

double reproducing_check(const BergmanModel& m, const std::vector<cplx>& poly, cplx z, const QuadratureOptions& q) {
  const Eigen::VectorXcd u = m.kernel_row(z);
  auto f = [&](cplx w) {
    cplx v = 0.0;
    for (std::size_t k = poly.size(); k-- > 0;) v = v * w + poly[k];
    return v;
  };
  const cplx integral = area_integral(
      m.domain(), [&](cplx w) { return m.scaled_basis(w).dot(u) * f(w); }, q);
  return std::abs(integral - f(z));
}

std::vector<cplx> near_boundary_probes(const CircleDomain& cd, std::size_t count, double band_lo, double band_hi) {
  const auto circles = cd.circles();
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<cplx> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    const std::size_t ci = i % circles.size();
    const Circle& c = circles[ci];
    const double frac = std::fmod(static_cast<double>(i) * 0.6180339887498949, 1.0);
    const double delta = (band_lo + (band_hi - band_lo) * frac) * gap_of_circle(cd, ci);
    const double theta = golden * static_cast<double>(i) + 0.3;
    const cplx z = c.center + (ci == 0 ? c.radius - delta : c.radius + delta) * std::polar(1.0, theta);
    if (cd.contains(z) && std::abs(cd.boundary_distance(z) - delta) < 1e-12) out.push_back(z);
    if (i > 100 * count + 100) throw NumericalDegeneracy("could not place near-boundary probes");
  }
  return out;
}

}  // namespace semiaut
