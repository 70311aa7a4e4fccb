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

#include "polyfair/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace polyfair {

HermitianPSD::HermitianPSD(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kInvalidParameter, "matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidParameter, "matrix has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-8 * scale) {
    throw Error(ErrorCode::kInvalidParameter,
                "matrix is not Hermitian (skew " + std::to_string(skew) + ")");
  }
  m_ = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double floor = -kPsdTolerance * std::max(1.0, ev.maxCoeff());
  if (ev.minCoeff() < floor) {
    throw Error(ErrorCode::kInvalidParameter,
                "matrix is not positive semidefinite (min eigenvalue " +
                    std::to_string(ev.minCoeff()) + ")");
  }
}

HermitianPSD HermitianPSD::zero(int dim) {
  return HermitianPSD(ComplexMatrix::Zero(dim, dim));
}

HermitianPSD HermitianPSD::identity(int dim) {
  return HermitianPSD(ComplexMatrix::Identity(dim, dim));
}

RankOracle gaussian_mac_rank(const GaussianMacParams& params, LogBase base) {
  GroundSet ground(static_cast<int>(params.snrs.size()));
  for (double p : params.snrs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidParameter, "snr must be finite and nonnegative");
    }
  }
  std::vector<double> snrs = params.snrs;
  return RankOracle(
      ground,
      [snrs, base](SubsetMask s) {
        double total = 0.0;
        for (int label : s.labels()) total += snrs[label - 1];
        return in_base(std::log1p(total), base);
      },
      base);
}

std::vector<HermitianPSD> build_D(const MimoParams& params) {
  if (params.channels.size() != params.powers.size() || params.channels.empty()) {
    throw Error(ErrorCode::kInvalidParameter,
                "need one channel and one covariance per user");
  }
  const Eigen::Index m = params.channels.front().cols();
  std::vector<HermitianPSD> out;
  out.reserve(params.channels.size());
  for (std::size_t i = 0; i < params.channels.size(); ++i) {
    const ComplexMatrix& h = params.channels[i];
    const ComplexMatrix& p = params.powers[i].matrix();
    if (h.cols() != m || h.rows() != p.rows()) {
      throw Error(ErrorCode::kInvalidParameter,
                  "user " + std::to_string(i + 1) + ": H is " +
                      std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                      " but P* is " + std::to_string(p.rows()) + "x" +
                      std::to_string(p.cols()));
    }
    out.emplace_back(h.adjoint() * p * h);
  }
  return out;
}

double logdet_identity_plus(const ComplexMatrix& a) {
  ComplexMatrix m = a;
  m.diagonal().array() += 1.0;
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidParameter, "I + D(S) is not positive definite");
  }
  double total = 0.0;
  const ComplexMatrix& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) total += std::log(l(i, i).real());
  return 2.0 * total;
}

namespace {

void check_dims(const std::vector<HermitianPSD>& d) {
  if (d.empty()) throw Error(ErrorCode::kInvalidParameter, "no matrices given");
  for (const auto& di : d) {
    if (di.dim() != d.front().dim()) {
      throw Error(ErrorCode::kInvalidParameter, "D_i dimensions differ");
    }
  }
}

}  // namespace

RankOracle logdet_rank(const std::vector<HermitianPSD>& d, LogBase base) {
  check_dims(d);
  GroundSet ground(static_cast<int>(d.size()));
  std::vector<ComplexMatrix> mats;
  for (const auto& di : d) mats.push_back(di.matrix());
  return RankOracle(
      ground,
      [mats = std::move(mats), base](SubsetMask s) {
        const Eigen::Index dim = mats.front().rows();
        ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
        for (int label : s.labels()) sum += mats[label - 1];
        return in_base(logdet_identity_plus(sum), base);
      },
      base);
}

RateVector mac_corner_rates(const std::vector<HermitianPSD>& d,
                            const Permutation& order, LogBase base) {
  check_dims(d);
  if (order.size() != static_cast<int>(d.size())) {
    throw Error(ErrorCode::kInvalidPermutation, "permutation size mismatch");
  }
  const int dim = d.front().dim();
  RateVector rates(d.size(), 0.0);
  ComplexMatrix cumulative = ComplexMatrix::Zero(dim, dim);
  double previous = 0.0;
  for (int label : order.order()) {
    cumulative += d[label - 1].matrix();
    const double current = logdet_identity_plus(cumulative);
    rates[label - 1] = in_base(current, base) - in_base(previous, base);
    previous = current;
  }
  return rates;
}

}  // namespace polyfair
