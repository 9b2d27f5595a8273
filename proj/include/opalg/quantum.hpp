// Copyright 2026 The opalg Authors
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

#pragma once

// Finite-dimensional quantum instance: Hermitian operators as effects,
// density matrices as states, and trace-nonincreasing completely positive
// maps as an operation algebra. Floating point throughout; CP maps compare
// by Choi matrix.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "opalg/algebra_checks.hpp"
#include "opalg/error.hpp"

namespace opalg {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// PSD, trace and effect-interval checks.
inline constexpr double kTol = 1e-9;
/// Algebraic round trips and Hermiticity at construction.
inline constexpr double kExactTol = 1e-12;
/// Hermitian operators up to 16 so that two-ququart composites fit.
inline constexpr std::size_t kHermDimCap = 16;
inline constexpr std::size_t kMapDimCap = 8;

class HermOp {
 public:
  /// Throws NotHermitian if max |A - A^dag| exceeds 1e-12, DimensionCap
  /// outside [1, 16]. Stored symmetrized.
  explicit HermOp(const CMat& m);

  /// (m + m^dag) / 2, for results of floating point products.
  static HermOp hermitian_part(const CMat& m);
  static HermOp identity(std::size_t d);
  static HermOp zero(std::size_t d);
  /// |v><v| for the given (not necessarily normalized) vector.
  static HermOp projector(const CVec& v);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMat& mat() const { return m_; }
  /// Ascending.
  RVec eigenvalues() const;
  double trace() const { return m_.trace().real(); }

  HermOp operator+(const HermOp& o) const;
  HermOp operator-(const HermOp& o) const;
  HermOp operator*(double s) const;

 private:
  CMat m_;
};

class DensityState {
 public:
  /// Throws NotAState unless PSD within `tol` with unit trace.
  explicit DensityState(HermOp op, double tol = kTol);
  static DensityState pure(const CVec& psi);
  static DensityState maximally_mixed(std::size_t d);

  const HermOp& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }
  double purity() const;

 private:
  HermOp op_;
};

/// Coordinates in the orthonormal basis {I/sqrt(d), generalized Gell-Mann}
/// under <X, Y> = tr XY. Ordering: identity, then for each j < k the
/// symmetric and antisymmetric off-diagonal elements, then the diagonal
/// elements. For d = 2 this is (I, X, Y, Z)/sqrt(2).
RVec herm_to_vec(const HermOp& a);
/// Throws DimensionMismatch unless v has length d^2.
HermOp vec_to_herm(const RVec& v, std::size_t d);
/// The basis element with the given index.
HermOp gell_mann_element(std::size_t d, std::size_t index);

bool is_effect(const HermOp& a, double tol = kTol);
/// Re tr(rho E). Throws NotAnEffect, or ToleranceBreach if the value falls
/// outside [0, 1] by more than tol.
double born(const DensityState& rho, const HermOp& e, double tol = kTol);

/// Projector onto the span of eigenvectors with eigenvalue below -tol;
/// nullopt when the operator is PSD within tol.
std::optional<HermOp> negative_eigenspace_witness(const HermOp& x, double tol = kTol);

struct BcfrmVerdict {
  bool pass = false;
  std::optional<ErrorCode> failure;
  HermOp reconstructed = HermOp::zero(1);
  double min_eigenvalue = 0;
  double trace = 0;
  /// Effect on which the functional is negative (NegativeOnCone).
  std::optional<HermOp> witness;
  double witness_value = 0;
};

/// Checks that a functional on H_d, normalized on I and nonnegative on the
/// effect cone, is a density matrix. Sampled effects come first; an exact
/// spectral witness backs the sampling up. Never throws on a failed check.
BcfrmVerdict bcfrm_check(const RVec& f, std::size_t trials, Rng& rng, double tol = kTol);
/// As bcfrm_check but throws NotNormalized, NegativeOnCone or
/// ReconstructionNotPSD.
BcfrmVerdict bcfrm_verify(const RVec& f, std::size_t trials, Rng& rng, double tol = kTol);

struct SelfDualityProbe {
  bool pass = false;
  std::size_t pairs = 0;
  double min_pair_trace = 0;
  std::size_t non_psd = 0;
  /// Largest tr XP over the non-PSD samples; negative on success.
  double max_witness_trace = 0;
};

SelfDualityProbe psd_self_duality_probe(std::size_t d, std::size_t trials, Rng& rng,
                                        double tol = kTol);

class CPMap {
 public:
  /// Throws DimensionCap, DimensionMismatch, NotTraceNonincreasing.
  CPMap(std::size_t dim, std::vector<CMat> kraus, double tol = kTol);
  /// Kraus operators from the eigen-decomposition of a Choi matrix. Throws
  /// NotCompletelyPositive if the matrix is not PSD within tol.
  static CPMap from_choi(const CMat& choi, std::size_t dim, double tol = kTol);

  static CPMap identity(std::size_t d);
  static CPMap zero(std::size_t d);
  static CPMap unitary(const CMat& u);

  std::size_t dim() const { return dim_; }
  const std::vector<CMat>& kraus() const { return kraus_; }
  /// C[(i,a),(j,b)] = T(|i><j|)[a,b], row index i*d + a.
  const CMat& choi() const { return choi_; }
  /// sum K^dag K.
  CMat kraus_sum() const;

  CMat apply(const CMat& x) const;
  /// Heisenberg picture: sum K^dag E K.
  CMat adjoint_apply(const CMat& e) const;

  bool equals(const CPMap& o, double tol = kTol) const;

 private:
  std::size_t dim_;
  std::vector<CMat> kraus_;
  CMat choi_;
};

/// Choi matrix of an arbitrary linear map given by its action.
template <class F>
CMat choi_of(std::size_t d, F&& map) {
  const auto n = static_cast<Eigen::Index>(d);
  CMat c = CMat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      CMat unit = CMat::Zero(n, n);
      unit(i, j) = 1;
      c.block(i * n, j * n, n, n) = map(unit);
    }
  return c;
}

bool is_psd(const CMat& m, double tol = kTol);
double min_eigenvalue(const CMat& m);
double max_eigenvalue(const CMat& m);

/// Kraus union; nullopt unless the sum stays trace-nonincreasing.
std::optional<CPMap> op_oplus(const CPMap& a, const CPMap& b, double tol = kTol);
/// x -> a(b(x)); Kraus operators A_i B_j.
CPMap op_compose(const CPMap& a, const CPMap& b, double tol = kTol);
/// The c with b + c = a, defined iff Choi(a) - Choi(b) is PSD. A Kraus
/// submultiset is taken directly.
std::optional<CPMap> op_ominus(const CPMap& a, const CPMap& b, double tol = kTol);
/// Trace-preserving within tol.
bool top_set_membership(const CPMap& a, double tol = kTol);

// Seeded samplers.
CMat ginibre(std::size_t rows, std::size_t cols, Rng& rng);
HermOp random_hermitian(std::size_t d, Rng& rng);
HermOp random_psd(std::size_t d, Rng& rng);
/// Random PSD rescaled so its largest eigenvalue is at most one.
HermOp random_effect(std::size_t d, Rng& rng);
DensityState random_density(std::size_t d, Rng& rng);
CVec random_pure(std::size_t d, Rng& rng);
/// Unit-trace Hermitian operator with one eigenvalue in [-1, -1/20].
HermOp random_non_state(std::size_t d, Rng& rng);
CMat haar_unitary(std::size_t d, Rng& rng);
/// Trace-preserving, via a Haar isometry into d * kraus_count dimensions.
CPMap random_channel(std::size_t d, std::size_t kraus_count, Rng& rng);
/// A random channel with one Kraus operator dropped; generically strictly
/// trace-decreasing.
CPMap random_operation(std::size_t d, Rng& rng);
/// rho -> (1 - p) rho + p tr(rho) I/d via Weyl operators.
CPMap depolarizing(std::size_t d, double p);
/// Choi matrix of the transpose map (the swap operator).
CMat transpose_choi(std::size_t d);

/// A finite set of maps closed under op_oplus (where defined) and total under
/// composition, tabulated for check_operation_algebra. Throws MalformedTable
/// if the set is not closed; `one` must name the identity map.
FiniteOA tabulate_operation_algebra(const std::vector<CPMap>& maps,
                                    const std::vector<std::string>& names, double tol = kTol);
/// Qubit instance {0, |0><0| conj, |1><1| conj, dephasing, identity}.
FiniteOA qubit_instrument_algebra();

struct OperationSweep {
  std::size_t maps = 0;
  double oa7 = 0;
  double oa8_right = 0;  // (A + B) C against AC + BC
  double oa8_left = 0;   // C (A + B) against CA + CB
  double cancellativity = 0;
  double positivity = 0;
  std::size_t top_checked = 0;
  std::size_t top_disagreements = 0;

  bool pass(double tol = kTol) const {
    return oa7 <= tol && oa8_right <= tol && oa8_left <= tol && cancellativity <= tol &&
           positivity <= tol && top_disagreements == 0;
  }
};

/// Randomized identities of the CP-map operation algebra, as maximal Choi
/// defects over `trials` seeded triples of trace-nonincreasing maps. The top
/// set is cross-checked against the complementary operation sqrt(I - sum K^dag K).
OperationSweep operation_algebra_sweep(std::size_t d, std::size_t trials, Rng& rng, double tol = kTol);

/// Scalar action alpha K -> sqrt(alpha) K for the convex axiom checks.
struct CPMapModel {
  using Element = CPMap;
  double tol = kTol;
  std::optional<CPMap> oplus(const CPMap& a, const CPMap& b) const;
  std::optional<CPMap> scale(const Rational& s, const CPMap& a) const;
  bool equal(const CPMap& a, const CPMap& b) const { return a.equals(b, tol); }
  CPMap product(const CPMap& a, const CPMap& b) const { return op_compose(a, b, tol); }
};

double max_abs(const CMat& m);

}  // namespace opalg
