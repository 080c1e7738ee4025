#include "semiaut/ball_bumps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "semiaut/errors.hpp"

namespace semiaut {

namespace {

constexpr double kBaseA = 0.1;

double pow10(int e) { return std::pow(10.0, e); }

// psi in native bump coordinates x in R^4
double psi_real(const std::array<double, 4>& x) {
  return psi_profile(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
}

// real Hessian of psi by central differences
Eigen::Matrix4d psi_hessian_fd(const std::array<double, 4>& x, double h) {
  Eigen::Matrix4d hess;
  const double f0 = psi_real(x);
  auto shifted = [&](int a, double da, int b, double db) {
    auto y = x;
    y[a] += da;
    y[b] += db;
    return psi_real(y);
  };
  for (int a = 0; a < 4; ++a) {
    hess(a, a) = (shifted(a, h, a, 0.0) - 2.0 * f0 + shifted(a, -h, a, 0.0)) / (h * h);
    for (int b = a + 1; b < 4; ++b) {
      const double v = (shifted(a, h, b, h) - shifted(a, h, b, -h) - shifted(a, -h, b, h) +
                        shifted(a, -h, b, -h)) /
                       (4.0 * h * h);
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

}  // namespace

double psi_profile(double u) {
  if (!(u < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u));
}

double psi_eval(const PointC2& p) { return psi_profile(p.norm2()); }

double psi_lipschitz_constant() {
  static const double value = [] {
    auto neg_slope = [](double r) {
      const double u = r * r;
      return -psi_profile(u) * 2.0 * r / ((1.0 - u) * (1.0 - u));
    };
    const auto res = boost::math::tools::brent_find_minima(neg_slope, 0.3, 0.95, 52);
    return -res.second;
  }();
  return value;
}

BallAutomorphism::BallAutomorphism(cplx a, std::int64_t power) : a_(a), power_(power) {
  const double r = std::abs(a);
  if (!(r < 1.0)) throw ParameterDomainError("ball automorphism needs |a| < 1");
  rot_ = r > 0.0 ? a / r : cplx(1.0);
  s_ = static_cast<double>(power) * std::atanh(r);
}

PointC2 BallAutomorphism::operator()(const PointC2& p) const {
  if (s_ == 0.0) return p;
  const double sigma = s_ > 0.0 ? 1.0 : -1.0;
  const double t = std::abs(s_);
  const double e = std::exp(-2.0 * t);
  const double one_minus_e = -std::expm1(-2.0 * t);
  const cplx w = std::conj(rot_) * p.z1;
  const cplx den = (1.0 + e) - sigma * one_minus_e * w;
  const cplx w1 = ((1.0 + e) * w - sigma * one_minus_e) / den;
  return {rot_ * w1, 2.0 * std::exp(-t) * p.z2 / den};
}

double BallAutomorphism::denominator_norm2(const PointC2& p) const {
  return 1.0 / inverse_denominator_norm2(p);
}

double BallAutomorphism::inverse_denominator_norm2(const PointC2& p) const {
  if (s_ == 0.0) return 1.0;
  const double sigma = s_ > 0.0 ? 1.0 : -1.0;
  const double t = std::abs(s_);
  const cplx w = std::conj(rot_) * p.z1;
  const cplx den = (1.0 + std::exp(-2.0 * t)) + sigma * std::expm1(-2.0 * t) * w;
  return 4.0 * std::exp(-2.0 * t) / std::norm(den);
}

BallAutomorphism base_automorphism(std::int64_t power) { return BallAutomorphism(kBaseA, power); }

PointC2 bump_center(int k) {
  if (k < 1) throw PreconditionError("bump level must be >= 1");
  const double half_k = std::ldexp(1.0, -k);
  const double x = std::sqrt(std::ldexp(1.0, 1 - k) - half_k * half_k);
  return {x, 1.0 - half_k};
}

double bump_amplitude(int k) { return pow10(-k); }
double bump_dilation(int k) { return pow10(k); }

double bump_term(int k, const PointC2& p) {
  const PointC2 x = bump_dilation(k) * (p - bump_center(k));
  return bump_amplitude(k) * psi_eval(x);
}

double eta_eval(int k, const PointC2& p) { return -1.0 + p.norm2() - bump_term(k, p); }

std::int64_t generator_power(int k) { return std::int64_t{1} << (k - 1); }

std::vector<StagePiece> stage_pieces(const DomainStage& stage) {
  const std::int64_t reach = stage_power_bound(stage);
  std::vector<StagePiece> pieces;
  for (int i = 1; i <= stage.k; ++i) {
    const std::int64_t step = generator_power(i);
    const std::int64_t top = reach / step * step;
    for (std::int64_t m = -top; m <= top; m += step) pieces.push_back({i, m});
  }
  return pieces;
}

std::int64_t stage_power_bound(const DomainStage& stage) {
  if (stage.k < 1 || stage.J < 0 || stage.power_bound < 0) {
    throw PreconditionError("stage needs k >= 1, J >= 0 and a non-negative power bound");
  }
  return stage.power_bound > 0 ? stage.power_bound : static_cast<std::int64_t>(stage.J) * generator_power(stage.k);
}

DomainStage refine_stage(const DomainStage& stage) { return {stage.k + 1, stage.J, stage_power_bound(stage)}; }

bool membership(const DomainStage& stage, const PointC2& p) {
  if (p.norm2() < 1.0) return true;
  for (const auto& piece : stage_pieces(stage)) {
    const PointC2 q = base_automorphism(-piece.power)(p);
    if (eta_eval(piece.level, q) < 0.0) return true;
  }
  return false;
}

double stage_defining_value(const DomainStage& stage, const PointC2& p) {
  double lift = 0.0;
  for (const auto& piece : stage_pieces(stage)) {
    const PointC2 q = base_automorphism(-piece.power)(p);
    const double b = bump_term(piece.level, q);
    if (b <= 0.0) continue;
    lift = std::max(lift, b * base_automorphism(piece.power).inverse_denominator_norm2(q));
  }
  return p.norm2() - 1.0 - lift;
}

std::vector<SliceSpec> default_stage_slices(int k) {
  const PointC2 c = bump_center(k + 1);
  const auto base = c.real();
  const double w = 3.0 * pow10(-(k + 1));
  SliceSpec a{base, 0, 2, base[0] - w, base[0] + w, base[2] - w, base[2] + w};
  SliceSpec b{base, 0, 1, base[0] - w, base[0] + w, base[1] - w, base[1] + w};
  return {a, b};
}

DefiningGrid defining_grid(const DomainStage& stage, const SliceSpec& slice, std::size_t resolution) {
  if (resolution < 8) throw PreconditionError("defining grid needs at least 8 nodes per axis");
  if (slice.axis_u == slice.axis_v || slice.axis_u < 0 || slice.axis_u > 3 || slice.axis_v < 0 ||
      slice.axis_v > 3) {
    throw PreconditionError("slice axes must be two distinct indices in 0..3");
  }
  std::vector<GridAxis> axes{{slice.u_min, slice.u_max, resolution}, {slice.v_min, slice.v_max, resolution}};
  return DefiningGrid::sample(std::move(axes), [&](std::span<const double> uv) {
    auto x = slice.base;
    x[static_cast<std::size_t>(slice.axis_u)] = uv[0];
    x[static_cast<std::size_t>(slice.axis_v)] = uv[1];
    return stage_defining_value(stage, PointC2::from_real(x));
  });
}

DefiningGrid defining_grid(const DomainStage& stage, double lo, double hi, std::size_t resolution) {
  if (resolution < 8) throw PreconditionError("defining grid needs at least 8 nodes per axis");
  std::vector<GridAxis> axes(4, GridAxis{lo, hi, resolution});
  return DefiningGrid::sample(std::move(axes), [&](std::span<const double> x) {
    return stage_defining_value(stage, PointC2::from_real({x[0], x[1], x[2], x[3]}));
  });
}

double levi_form_min_eigen(int k, const PointC2& p, double tol) {
  const double eta = eta_eval(k, p);
  if (!(std::abs(eta) <= tol)) throw PreconditionError("Levi form requested off the level set eta_k = 0");
  const double amp = bump_amplitude(k);
  const double dil = bump_dilation(k);
  const auto x = (dil * (p - bump_center(k))).real();
  const double u = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];

  // real gradient of eta
  const auto pr = p.real();
  std::array<double, 4> grad{};
  const double fprime = u < 1.0 ? -psi_profile(u) / ((1.0 - u) * (1.0 - u)) : 0.0;
  for (int a = 0; a < 4; ++a) grad[a] = 2.0 * pr[a] - amp * dil * 2.0 * fprime * x[a];
  const cplx d1 = 0.5 * cplx(grad[0], -grad[1]);
  const cplx d2 = 0.5 * cplx(grad[2], -grad[3]);
  const double gnorm = std::sqrt(std::norm(d1) + std::norm(d2));
  if (!(gnorm > 1e-12)) throw NumericalDegeneracy("vanishing gradient of eta_k");

  Eigen::Matrix4d real_hess = 2.0 * Eigen::Matrix4d::Identity();
  if (u < 1.0) {
    constexpr double h = 1e-4;
    const Eigen::Matrix4d hpsi = (4.0 * psi_hessian_fd(x, h / 2.0) - psi_hessian_fd(x, h)) / 3.0;
    real_hess -= amp * dil * dil * hpsi;
  }
  Eigen::Matrix2cd cx;
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 2; ++l) {
      const int xj = 2 * j, yj = 2 * j + 1, xl = 2 * l, yl = 2 * l + 1;
      cx(j, l) = 0.25 * cplx(real_hess(xj, xl) + real_hess(yj, yl), real_hess(xj, yl) - real_hess(yj, xl));
    }
  }
  const Eigen::Vector2cd v(d2, -d1);
  return (v.adjoint() * cx * v)(0, 0).real() / v.squaredNorm();
}

PointC2 boundary_point(int k, const PointC2& direction) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw PreconditionError("boundary ray needs a nonzero direction");
  const PointC2 d = (1.0 / n) * direction;
  double lo = 0.5, hi = 1.5;
  if (!(eta_eval(k, lo * d) < 0.0) || !(eta_eval(k, hi * d) > 0.0)) {
    throw NumericalDegeneracy("boundary ray does not bracket eta_k = 0");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eta_eval(k, mid * d) < 0.0 ? lo : hi) = mid;
  }
  const double fl = std::abs(eta_eval(k, lo * d));
  const double fh = std::abs(eta_eval(k, hi * d));
  return (fl <= fh ? lo : hi) * d;
}

PointC2 bump_orbit_center(int k, std::int64_t power) { return base_automorphism(power)(bump_center(k)); }

std::vector<PointC2> bump_orbit_centers(int k, int j_lo, int j_hi) {
  std::vector<PointC2> out;
  for (int j = j_lo; j <= j_hi; ++j) out.push_back(bump_orbit_center(k, j * generator_power(k)));
  return out;
}

std::vector<PointC2> sample_stage_points(const DomainStage& stage, std::size_t n, std::mt19937_64& rng,
                                         double max_shift) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  auto random_unit = [&] {
    PointC2 g{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    return (1.0 / g.norm()) * g;
  };
  std::vector<StagePiece> eligible;
  const double shift_per_power = std::atanh(kBaseA);
  for (const auto& piece : stage_pieces(stage)) {
    if (std::abs(static_cast<double>(piece.power)) * shift_per_power <= max_shift) eligible.push_back(piece);
  }
  std::vector<PointC2> out;
  out.reserve(n);
  while (out.size() < n) {
    if (out.size() % 2 == 0 || eligible.empty()) {
      out.push_back((0.999 * std::pow(unif(rng), 0.25)) * random_unit());
      continue;
    }
    const auto& piece = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
    const double width = bump_amplitude(piece.level);
    const PointC2 c = bump_center(piece.level);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const PointC2 q = c + (0.6 * width * unif(rng)) * random_unit();
      if (q.norm2() > 1.0 && eta_eval(piece.level, q) < -1e-2 * width) {
        out.push_back(base_automorphism(piece.power)(q));
        break;
      }
    }
  }
  return out;
}

}  // namespace semiaut
