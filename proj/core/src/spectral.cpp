#include "semiaut/spectral.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>

namespace semiaut::spectral {

namespace {

// signed wavenumber of FFT slot k; the Nyquist slot gets 0 for odd operations
long wavenumber(std::size_t k, std::size_t n) {
  const long kk = static_cast<long>(k);
  const long nn = static_cast<long>(n);
  return kk <= nn / 2 ? kk : kk - nn;
}

}  // namespace

std::vector<cplx> coefficients(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> c;
  fft.fwd(c, samples);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& v : c) v *= inv;
  return c;
}

std::vector<cplx> derivative(const std::vector<cplx>& samples, int order) {
  const std::size_t n = samples.size();
  auto c = coefficients(samples);
  for (std::size_t k = 0; k < n; ++k) {
    const long w = wavenumber(k, n);
    if (n % 2 == 0 && k == n / 2 && order % 2 == 1) {
      c[k] = 0.0;
      continue;
    }
    c[k] *= std::pow(cplx(0.0, static_cast<double>(w)), order);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, c);
  for (auto& v : out) v *= static_cast<double>(n);
  return out;
}

std::vector<double> derivative(const std::vector<double>& samples, int order) {
  std::vector<cplx> z(samples.begin(), samples.end());
  const auto d = derivative(z, order);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return out;
}

cplx evaluate(const std::vector<cplx>& coeffs, double t) {
  const std::size_t n = coeffs.size();
  cplx sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (n % 2 == 0 && k == n / 2) {
      sum += coeffs[k] * std::cos(static_cast<double>(n / 2) * t);
      continue;
    }
    sum += coeffs[k] * std::polar(1.0, static_cast<double>(wavenumber(k, n)) * t);
  }
  return sum;
}

std::vector<cplx> shifted(const std::vector<cplx>& samples, double shift) {
  const std::size_t n = samples.size();
  auto c = coefficients(samples);
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(n) * shift;
  for (std::size_t k = 0; k < n; ++k) {
    if (n % 2 == 0 && k == n / 2) {
      // cos(n/2 (t + dt)) restricted to the nodes is cos(n/2 dt) (-1)^j
      c[k] *= std::cos(static_cast<double>(n / 2) * dt);
      continue;
    }
    c[k] *= std::polar(1.0, static_cast<double>(wavenumber(k, n)) * dt);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, c);
  for (auto& v : out) v *= static_cast<double>(n);
  return out;
}

std::vector<cplx> resample(const std::vector<cplx>& samples, std::size_t m) {
  const std::size_t n = samples.size();
  const auto c = coefficients(samples);
  std::vector<cplx> d(m, 0.0);
  const long limit = static_cast<long>(std::min(n, m) / 2);
  for (std::size_t k = 0; k < n; ++k) {
    long w = wavenumber(k, n);
    cplx v = c[k];
    if (n % 2 == 0 && k == n / 2) v *= 0.5;  // split the Nyquist mode over +-n/2
    if (std::abs(w) > limit) continue;
    auto put = [&](long wn, cplx val) { d[static_cast<std::size_t>(wn >= 0 ? wn : wn + static_cast<long>(m))] += val; };
    put(w, v);
    if (n % 2 == 0 && k == n / 2) put(-w, v);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, d);
  for (auto& v : out) v *= static_cast<double>(m);
  return out;
}

}  // namespace semiaut::spectral
