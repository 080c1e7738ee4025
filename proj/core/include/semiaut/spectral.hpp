#pragma once

#include <complex>
#include <vector>

namespace semiaut::spectral {

using cplx = std::complex<double>;

/// Fourier coefficients c_k of samples at t_j = 2 pi j / n, in FFT order, scaled by 1/n.
std::vector<cplx> coefficients(const std::vector<cplx>& samples);

/// d^order/dt^order of the trigonometric interpolant, at the nodes.
std::vector<cplx> derivative(const std::vector<cplx>& samples, int order = 1);
std::vector<double> derivative(const std::vector<double>& samples, int order = 1);

/// Interpolant at t_j + shift * (2 pi / n) for every j.
std::vector<cplx> shifted(const std::vector<cplx>& samples, double shift);

/// Interpolant value at an arbitrary parameter t.
cplx evaluate(const std::vector<cplx>& coeffs, double t);
/// Resample to m equispaced nodes (zero padding or truncation).
std::vector<cplx> resample(const std::vector<cplx>& samples, std::size_t m);

}  // namespace semiaut::spectral
