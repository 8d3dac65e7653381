// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded random matrix Laurent series for the localization fixtures.
// TROPLAUR_SEED selects the stream (default 42).

#ifndef TROPLAUR_SYNTHETIC_HPP
#define TROPLAUR_SYNTHETIC_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/localization.hpp"

namespace troplaur {

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv("TROPLAUR_SEED");
  if (!s || !*s) return 42;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw std::invalid_argument("TROPLAUR_SEED must be an unsigned integer");
  return v;
}

namespace detail {

inline Eigen::MatrixXd randn(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd m(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) m(r, c) = nd(rng);
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(randn(n, rng));
  Eigen::MatrixXd q = qr.householderQ();
  // Sign fix so the distribution is Haar.
  for (Index i = 0; i < n; ++i)
    if (qr.matrixQR()(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

// U diag(s) V^T with s log-spaced from smax down to smax/kappa.
inline Eigen::MatrixXd with_spectrum(Index n, double smax, double kappa, std::mt19937_64& rng) {
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i)
    s(i) = smax * std::pow(kappa, -static_cast<double>(i) / static_cast<double>(std::max<Index>(n - 1, 1)));
  return random_orthogonal(n, rng) * s.asDiagonal() * random_orthogonal(n, rng).transpose();
}

}  // namespace detail

// P(λ) = sum_{j<=4} s_j G_j λ^j, G_j standard Gaussian, scales (1, 1e5, 1, 1e-2, 1e3).
inline MatrixLaurentSeries quartic_fixture(Index n = 20, std::uint64_t seed = seed_from_env()) {
  std::mt19937_64 rng(seed);
  const double s[] = {1.0, 1e5, 1.0, 1e-2, 1e3};
  MatrixLaurentSeries f;
  for (Index j = 0; j <= 4; ++j) f.coeffs[j] = (s[j] * detail::randn(n, rng)).cast<std::complex<double>>();
  f.norm = MatrixNorm::Two;
  return f;
}

// G(λ) = P(λ) + λI + e^{-λ}B, exponential tail truncated at degree `tail`.
// The coefficients have prescribed spectra (C_1 with condition 90) and B a
// prescribed norm, so the tropical picture has α1 ≈ 2e-5, α2 ≈ 4.8,
// α3 ≈ 21.3 and a roughly (0.004, 0.027) exclusion annulus in wide mode.
inline MatrixLaurentSeries exp_quartic_fixture(Index n = 20, Index tail = 40, std::uint64_t seed = seed_from_env()) {
  if (tail < 4) throw std::invalid_argument("tail degree must be at least 4");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::MatrixXd> b(5);
  b[0] = detail::with_spectrum(n, 1.0, 100.0, rng);
  b[1] = detail::with_spectrum(n, 5e4, 90.0, rng);
  b[2] = detail::with_spectrum(n, 1.0, 10.0, rng);
  b[3] = detail::with_spectrum(n, 1e-2, 10.0, rng);
  b[4] = detail::with_spectrum(n, 452.0, 10.0, rng);
  Eigen::MatrixXd big_b = detail::with_spectrum(n, 0.6, 10.0, rng);
  MatrixLaurentSeries f;
  double log_fact = 0.0;
  for (Index j = 0; j <= tail; ++j) {
    if (j > 0) log_fact += std::log(static_cast<double>(j));
    double c = (j % 2 ? -1.0 : 1.0) * std::exp(-log_fact);
    Eigen::MatrixXd m = c * big_b;
    if (j <= 4) m += b[static_cast<std::size_t>(j)];
    if (j == 1) m += Eigen::MatrixXd::Identity(n, n);
    f.coeffs[j] = m.cast<std::complex<double>>();
  }
  f.norm = MatrixNorm::Two;
  return f;
}

inline MatrixLaurentSeries synthetic_fixture(const std::string& id, Index n = 20) {
  if (id == "quartic") return quartic_fixture(n);
  if (id == "exp-quartic") return exp_quartic_fixture(n);
  throw std::invalid_argument("unknown synthetic fixture '" + id + "'");
}

}  // namespace troplaur

#endif  // TROPLAUR_SYNTHETIC_HPP
