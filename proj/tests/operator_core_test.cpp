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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <vector>

#include "randlchs/dense.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/models.hpp"
#include "randlchs/pauli.hpp"
#include "randlchs/rng.hpp"

using namespace randlchs;

namespace {

/// Independent Kronecker oracle built by scalar loops, no library reuse.
CMatrix kron_oracle(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (const CMatrix& f : factors) {
    CMatrix next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index k = 0; k < f.rows(); ++k) {
          for (Eigen::Index l = 0; l < f.cols(); ++l) {
            next(i * f.rows() + k, j * f.cols() + l) = out(i, j) * f(k, l);
          }
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

CMatrix single_pauli(char letter) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (letter) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

CMatrix string_oracle(const std::string& letters) {
  std::vector<CMatrix> factors;
  for (char c : letters) factors.push_back(single_pauli(c));
  return kron_oracle(factors);
}

}  // namespace

TEST_CASE("pauli_to_dense matches the hand-built Kronecker oracle") {
  CHECK((pauli_to_dense(PauliString("I")) - CMatrix::Identity(2, 2)).norm() == 0.0);

  CMatrix z = pauli_to_dense(PauliString("Z"));
  CHECK(z(0, 0) == Complex(1.0, 0.0));
  CHECK(z(1, 1) == Complex(-1.0, 0.0));
  CHECK(std::abs(z(0, 1)) == 0.0);

  for (const std::string s : {"XZ", "YI", "ZXY", "XYZI"}) {
    CAPTURE(s);
    CHECK((pauli_to_dense(PauliString(s)) - string_oracle(s)).norm() <= 1e-15);
  }
}

TEST_CASE("pauli_to_dense rejects strings above the dense cap") {
  CHECK_THROWS_AS(pauli_to_dense(PauliString(std::string(15, 'Z'))), DimensionError);
}

TEST_CASE("assemble_dense is the coefficient-linear sum of string matrices") {
  CHECK(assemble_dense(PauliSum(1, {})).norm() == 0.0);

  PauliSum zx(1, {{Complex(1.0, 0.0), PauliString("Z")}, {Complex(1.0, 0.0), PauliString("X")}});
  CMatrix expect(2, 2);
  expect << 1, 1, 1, -1;
  CHECK((assemble_dense(zx) - expect).norm() <= 1e-15);

  TfimParams p{2, 1.0, 0.5, 0.3};
  const CMatrix a = assemble_dense(build_tfim(p));
  const double norm = spectral_norm(a);
  CHECK(norm <= p.gamma * 2 + p.J * 1 + p.g * 2);
}

TEST_CASE("apply_pauli agrees with the dense action") {
  Rng rng(11);
  for (const std::string s : {"XYZ", "ZZI", "IYX"}) {
    PauliString p(s);
    CVector v(8);
    for (int i = 0; i < 8; ++i) v(i) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK((apply_pauli(p, v) - pauli_to_dense(p) * v).norm() <= 1e-14);
  }
}

TEST_CASE("split_hermitian produces Hermitian parts that reconstruct the input") {
  SUBCASE("anti-Hermitian input") {
    const CMatrix a = Complex(0, 1) * CMatrix::Identity(4, 4);
    auto [l, h] = split_hermitian(a);
    CHECK(l.norm() <= 1e-15);
    CHECK((h - CMatrix::Identity(4, 4)).norm() <= 1e-15);
  }
  SUBCASE("Hermitian input") {
    const CMatrix a = pauli_to_dense(PauliString("XY"));
    auto [l, h] = split_hermitian(a);
    CHECK((l - a).norm() <= 1e-15);
    CHECK(h.norm() <= 1e-15);
  }
  SUBCASE("dissipative Ising chain") {
    TfimParams p{3, 1.0, 0.5, 0.3};
    const CMatrix a = assemble_dense(build_tfim(p));
    auto [l, h] = split_hermitian(a);
    CMatrix l_expect = CMatrix::Zero(8, 8);
    l_expect -= p.J * (string_oracle("ZZI") + string_oracle("IZZ"));
    l_expect -= p.g * (string_oracle("XII") + string_oracle("IXI") + string_oracle("IIX"));
    CMatrix h_expect =
        p.gamma * (string_oracle("ZII") + string_oracle("IZI") + string_oracle("IIZ"));
    CHECK((l - l_expect).norm() <= 1e-14);
    CHECK((h - h_expect).norm() <= 1e-14);
    CHECK((l - l.adjoint()).norm() <= 1e-14);
    CHECK((h - h.adjoint()).norm() <= 1e-14);
    CHECK((l + Complex(0, 1) * h - a).norm() / a.norm() <= 1e-14);
  }
}

TEST_CASE("spectral norm never exceeds the coefficient 1-norm") {
  Rng rng(23);
  const std::string alphabet = "IXYZ";
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.bits() % 5);
    std::vector<WeightedPauli> terms;
    for (int t = 0; t < 6; ++t) {
      std::string s;
      for (int q = 0; q < n; ++q) s.push_back(alphabet[rng.bits() % 4]);
      terms.push_back({Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), PauliString(s)});
    }
    PauliSum sum(n, terms);
    CHECK(spectral_norm(assemble_dense(sum)) <= sum.coeff_l1() + 1e-10);
  }
}

TEST_CASE("matrix_exponential reproduces closed forms and the integrator oracle") {
  CHECK((matrix_exponential(CMatrix::Zero(3, 3)) - CMatrix::Identity(3, 3)).norm() <= 1e-15);

  const CMatrix x = pauli_to_dense(PauliString("X"));
  const CMatrix rot = matrix_exponential(CMatrix(Complex(0, -1) * (std::acos(-1.0) / 2) * x));
  CHECK((rot - Complex(0, -1) * x).norm() <= 1e-12);

  TfimParams p{3, 1.0, 0.5, 0.3};
  const CMatrix a = assemble_dense(build_tfim(p));
  const TimeDependentGenerator g(build_tfim(p), 1.0);
  const CMatrix direct = matrix_exponential(CMatrix(-a), 1.0);
  const CMatrix integrated = time_ordered_propagator(g, 0.0, 1.0, 1e-12);
  CHECK((direct - integrated).norm() / direct.norm() <= 1e-10);
}

TEST_CASE("time_ordered_propagator basic contracts") {
  TfimParams p{2, 1.0, 0.5, 0.0};
  const PauliSum herm = build_tfim(p);

  SUBCASE("zero generator gives identity") {
    const TimeDependentGenerator zero(PauliSum(2, {}), 1.0);
    CHECK((time_ordered_propagator(zero, 0.0, 1.0) - CMatrix::Identity(4, 4)).norm() <= 1e-12);
  }
  SUBCASE("commuting scalar schedule integrates exactly") {
    PauliSum zterm(1, {{Complex(1.0, 0.0), PauliString("Z")}});
    const Schedule f = [](double t) { return t * t; };
    const TimeDependentGenerator g(zterm, {f}, 1.0);
    const CMatrix u = time_ordered_propagator(g, 0.0, 1.0, 1e-10);
    const CMatrix expect =
        matrix_exponential(CMatrix(-pauli_to_dense(PauliString("Z")) / 3.0), 1.0);
    CHECK((u - expect).norm() <= 1e-8);
  }
  SUBCASE("multiplicative over subintervals") {
    PauliSum drifting = build_tfim(TfimParams{2, 1.0, 0.5, 0.3});
    const Schedule f = [](double t) { return 1.0 + 0.5 * t; };
    std::vector<Schedule> fs(drifting.size(), f);
    const TimeDependentGenerator g(drifting, fs, 1.0);
    const CMatrix whole = time_ordered_propagator(g, 0.0, 1.0, 1e-11);
    const CMatrix split = time_ordered_propagator(g, 0.6, 1.0, 1e-11) *
                          time_ordered_propagator(g, 0.0, 0.6, 1e-11);
    CHECK((whole - split).norm() <= 1e-10);
  }
  SUBCASE("anti-Hermitian generator yields a unitary propagator") {
    const TimeDependentGenerator g(herm.scaled(Complex(0, 1)), 1.0);
    const CMatrix u = time_ordered_propagator(g, 0.0, 1.0, 1e-11);
    CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).norm() <= 1e-10);
  }
}

TEST_CASE("duhamel_solution covers the constant, homogeneous, and scalar cases") {
  SUBCASE("zero generator, constant source") {
    const CVector u0 = CVector::Zero(4);
    CVector bval(4);
    bval << 1.0, Complex(0, 2.0), -0.5, 0.25;
    const TimeDependentGenerator g(PauliSum(2, {}), 2.0);
    const Source b = [&](double) { return bval; };
    CHECK((duhamel_solution(g, b, u0, 2.0) - 2.0 * bval).norm() <= 1e-10);
  }
  SUBCASE("no source reduces to the propagator") {
    TfimParams p{2, 1.0, 0.5, 0.3};
    const TimeDependentGenerator g(build_tfim(p), 1.0);
    CVector u0 = CVector::Zero(4);
    u0(0) = 1.0;
    const CVector via_ode = duhamel_solution(g, {}, u0, 1.0, 1e-11);
    const CVector via_prop = time_ordered_propagator(g, 0.0, 1.0, 1e-11) * u0;
    CHECK((via_ode - via_prop).norm() <= 1e-9);
  }
  SUBCASE("scalar relaxation hits the closed form") {
    PauliSum half_z(1, {{Complex(0.5, 0.0), PauliString("I")},
                        {Complex(0.5, 0.0), PauliString("Z")}});
    const TimeDependentGenerator g(half_z, 1.0);
    CVector u0 = CVector::Zero(2);
    const Source b = [](double) {
      CVector v = CVector::Zero(2);
      v(0) = 1.0;
      return v;
    };
    const CVector u = duhamel_solution(g, b, u0, 1.0, 1e-11);
    CHECK(std::abs(u(0) - (1.0 - std::exp(-1.0))) <= 1e-9);
  }
}

TEST_CASE("duhamel_trajectory records the reference solution at sample times") {
  TfimParams p{2, 1.0, 0.5, 0.3};
  const TimeDependentGenerator g(build_tfim(p), 1.0);
  CVector u0 = CVector::Constant(4, Complex(0.5, 0.0));
  const std::vector<double> times{0.0, 0.4, 1.0};
  const auto snaps = duhamel_trajectory(g, {}, u0, times, 1e-11);
  REQUIRE(snaps.size() == times.size());
  CHECK((snaps[0] - u0).norm() <= 1e-10);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const CVector expect = time_ordered_propagator(g, 0.0, times[i], 1e-11) * u0;
    CHECK((snaps[i] - expect).norm() <= 1e-9);
  }
}

TEST_CASE("mixing lemma proxy: channel distance within twice the unitary distance") {
  Rng rng(37);
  for (int trial = 0; trial < 4; ++trial) {
    CMatrix h1 = CMatrix::Zero(4, 4), h2 = CMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j <= i; ++j) {
        const Complex z(rng.uniform(-1, 1), i == j ? 0.0 : rng.uniform(-1, 1));
        h1(i, j) = z;
        h1(j, i) = std::conj(z);
        const Complex w(rng.uniform(-1, 1), i == j ? 0.0 : rng.uniform(-1, 1));
        h2(i, j) = w;
        h2(j, i) = std::conj(w);
      }
    }
    const CMatrix u = matrix_exponential(CMatrix(Complex(0, -1) * h1));
    const CMatrix v = matrix_exponential(CMatrix(Complex(0, -1) * (h1 + 0.05 * h2)));
    const double unitary_gap = spectral_norm(CMatrix(u - v));
    for (int basis = 0; basis < 4; ++basis) {
      CVector e = CVector::Zero(4);
      e(basis) = 1.0;
      const CMatrix rho_u = (u * e) * (u * e).adjoint();
      const CMatrix rho_v = (v * e) * (v * e).adjoint();
      CHECK(trace_distance(rho_u, rho_v) <= 2.0 * unitary_gap + 1e-12);
    }
  }
}
