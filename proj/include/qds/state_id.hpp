#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qds/qubit.hpp"
#include "qds/rng.hpp"

namespace qds {

// Identification of an unknown BB84 state from n identical copies. All
// n-copy states live in a <=4-dimensional invariant subspace, so every
// quantity here is computed on 4x4 matrices regardless of n.

using BigUInt = unsigned __int128;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr int kMaxCopiesExact = 64;  // alpha sums fit in 128 bits

/// Sum of C(n, k) over k congruent to j mod 4; exact.
BigUInt alpha(int j, int n);
std::array<BigUInt, 4> alphas(int n);

/// true at j iff alpha(j, n) > 0; coordinates outside the mask are
/// identically zero for every n-copy state.
std::array<bool, 4> support_mask(int n);

/// Phase index of a label: 0, +, 1, - map to 0, 1, 2, 3.
int label_phase_index(Bb84Label label);
Bb84Label label_from_phase_index(int x);

/// Coefficients of the n-copy state with phase x over the 4-vector basis:
/// sqrt(alpha_j / 2^n) * exp(i j x pi / 2), zero off the support.
Vec4 f_state(int x, int n);

/// Diagonal phase representation; rep_unitary(x, n) * f_state(0, n) ==
/// f_state(x, n).
Mat4 rep_unitary(int x, int n);

/// Estimation loss: 0 on a hit, 1/2 for an adjacent (basis-mismatch) guess,
/// 1 for the antipodal guess. 1 - risk is the verifier's per-qubit
/// acceptance probability of the implied cell.
double risk(int x, int xhat);

/// The four rank-1 elements U_x T U_x^dag with the flat seed T = 1/4 on
/// every supported entry; complete on the supported subspace.
std::array<Mat4, 4> optimal_povm(int n);

/// Conjugates an arbitrary seed into a covariant 4-outcome family.
std::array<Mat4, 4> covariant_povm(const Mat4& seed, int n);

/// Random valid covariant seed: PSD, diagonal exactly 1/4 on the support.
Mat4 random_covariant_seed(int n, Rng& rng);

/// Uniform-prior Bayes risk of a POVM over the four n-copy states.
/// Throws if the family is not PSD or not complete on the support.
double average_risk(const std::array<Mat4, 4>& povm, int n);

/// 1/2 - 2^{-(n+1)} sum_j sqrt(alpha_j alpha_{j+1}), evaluated in the
/// cancellation-free form 2^{-(n+2)} sum_j (sqrt(alpha_j)-sqrt(alpha_{j+1}))^2.
double min_risk_closed_form(int n);

/// Best per-qubit acceptance achievable from n copies: 1 - min risk for
/// n >= 1, and 1/2 at n = 0 (blind guessing).
double f_bound(int n);

/// p[x][xhat] = <f_x| Pi_xhat |f_x> for the optimal POVM.
std::array<std::array<double, 4>, 4> outcome_distribution(int n);

/// Sample an estimate from the optimal POVM applied to n copies of state
/// x_true.
int sample_estimate(int x_true, int n, Rng& rng);

/// Full (n+1)-dimensional symmetric-subspace coefficients of the n-copy
/// state, for cross-checking the 4-vector reduction at small n.
std::vector<std::complex<double>> symmetric_expansion(int x, int n);

}  // namespace qds
