// Copyright 2026 The polyfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Rank functions of multiaccess channels: the scalar Gaussian MAC and the
// log-det rank function of the MIMO dual MAC.

#ifndef POLYFAIR_CHANNELS_HPP_
#define POLYFAIR_CHANNELS_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "polyfair/polymatroid.hpp"
#include "polyfair/setfn.hpp"

namespace polyfair {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPsdTolerance = 1e-10;

// Hermitian positive semidefinite matrix. Construction symmetrises the input
// to (A + A^H)/2 and rejects it if it is not Hermitian to within round-off or
// if its smallest eigenvalue is below -1e-10 * max(1, largest eigenvalue).
class HermitianPSD {
 public:
  explicit HermitianPSD(const ComplexMatrix& m);
  static HermitianPSD zero(int dim);
  static HermitianPSD identity(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

struct GaussianMacParams {
  std::vector<double> snrs;  // received power over noise variance, per user
};

struct MimoParams {
  std::vector<ComplexMatrix> channels;  // H_i, N_i x M
  std::vector<HermitianPSD> powers;     // P*_i, N_i x N_i
};

// f(S) = log(1 + sum_{i in S} p_i).
RankOracle gaussian_mac_rank(const GaussianMacParams& params,
                             LogBase base = LogBase::kNatural);

// D_i = H_i^H P*_i H_i.
std::vector<HermitianPSD> build_D(const MimoParams& params);

// g(S) = log det(I + sum_{i in S} D_i), evaluated through a Cholesky factor.
RankOracle logdet_rank(const std::vector<HermitianPSD>& d,
                       LogBase base = LogBase::kNatural);

// Successive-decoding rates of the dual MAC for permutation `order`:
// r_{pi(i)} = log det(I + sum_{j<=i} D_{pi(j)}) / det(I + sum_{j<i} D_{pi(j)}),
// returned in user-label order.
RateVector mac_corner_rates(const std::vector<HermitianPSD>& d,
                            const Permutation& order,
                            LogBase base = LogBase::kNatural);

// log det(I + A) for Hermitian PSD A, in nats.
double logdet_identity_plus(const ComplexMatrix& a);

}  // namespace polyfair

#endif  // POLYFAIR_CHANNELS_HPP_
