// Copyright 2026 The randlchs Authors.
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

#include "randlchs/dense.hpp"

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace randlchs {

namespace {

// Diagonal Padé numerator coefficients and switch-over 1-norm thresholds
// (Higham, "Functions of Matrices", Table 10.2 / Algorithm 10.20).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

CMatrix pade_lower(const CMatrix& a, int order) {
  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {
      17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
      2162160.0,     110880.0,     3960.0,       90.0,        1.0};
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  auto eval = [&](auto& b) {
    CMatrix u = CMatrix::Zero(n, n), v = CMatrix::Zero(n, n);
    CMatrix p = id;
    for (std::size_t k = 0; k + 1 < b.size(); k += 2) {
      v += b[k] * p;
      u += b[k + 1] * p;
      if (k + 2 < b.size()) p = p * a2;
    }
    u = a * u;
    return (CMatrix(v - u)).partialPivLu().solve(CMatrix(v + u)).eval();
  };
  switch (order) {
    case 3:
      return eval(b3);
    case 5:
      return eval(b5);
    case 7:
      return eval(b7);
    default:
      return eval(b9);
  }
}

CMatrix pade13(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const auto& b = kPade13;
  const CMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * id);
  const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                    b[2] * a2 + b[0] * id;
  return (CMatrix(v - u)).partialPivLu().solve(CMatrix(v + u)).eval();
}

double one_norm(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

std::pair<CMatrix, CMatrix> split_hermitian(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
  const CMatrix adj = a.adjoint();
  return {0.5 * (a + adj), Complex{0.0, -0.5} * (a - adj)};
}

CMatrix matrix_exponential(const CMatrix& a, double t) {
  if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
  CMatrix at = a * t;
  const double norm = one_norm(at);
  if (!std::isfinite(norm) || norm > 2e4) {
    throw DomainError("matrix exponential argument norm too large");
  }
  if (norm <= kTheta3) return pade_lower(at, 3);
  if (norm <= kTheta5) return pade_lower(at, 5);
  if (norm <= kTheta7) return pade_lower(at, 7);
  if (norm <= kTheta9) return pade_lower(at, 9);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    at *= std::pow(2.0, -squarings);
  }
  CMatrix r = pade13(at);
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.allFinite()) throw DomainError("matrix exponential overflow");
  return r;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

double min_eigenvalue_hermitian(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ToleranceError("Hermitian eigensolve failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace randlchs
