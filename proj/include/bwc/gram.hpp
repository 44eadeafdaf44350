#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace bwc {

using Complex = std::complex<double>;

// Per-mode complex amplitudes of a multimode coherent state.
struct CoherentLabel {
  std::vector<Complex> amplitudes;
};

// Pure-state ensemble {weights, |labels>}; weights sum to 1 within 1e-12 and
// all labels share the mode count.
struct WeightedEnsemble {
  std::vector<CoherentLabel> labels;
  std::vector<double> weights;
};

void validate(const WeightedEnsemble& e);

// <a|b> = prod_k exp(-|a_k|^2/2 - |b_k|^2/2 + conj(a_k) b_k); modulus <= 1.
Complex coherent_overlap(const CoherentLabel& a, const CoherentLabel& b);

// G_ij = sqrt(w_i w_j) <psi_i|psi_j>; Hermitian, unit trace, PSD up to
// eigensolver noise. Shares its nonzero spectrum with the ensemble average
// state sum_i w_i |psi_i><psi_i|, which is what makes every ensemble
// functional below exact at cost M^3 instead of Fock-dimension^3.
Eigen::MatrixXcd build_gram(const WeightedEnsemble& e);

// Eigenvalue clamp policy, shared with the Fock oracle so cross-checks are
// apples to apples: values in [-1e-10, 0) clamp to 0, below -1e-8 the
// computation is rejected as numerically non-PSD.
inline constexpr double kEigenvalueClampTol = 1e-10;
inline constexpr double kEigenvalueErrorTol = 1e-8;

Eigen::VectorXd clamp_spectrum(const Eigen::VectorXd& eigenvalues,
                               const char* context);

// Shannon entropy in bits of a clamped spectrum; 0 log 0 = 0.
double spectrum_entropy_bits(const Eigen::VectorXd& eigenvalues,
                             const char* context);

// Entropy of the ensemble average state, from the Gram spectrum.
double ensemble_entropy(const Eigen::MatrixXcd& gram);

// Exact average success probability sum_i ((sqrt G)_ii)^2 of the square-root
// measurement on a uniform-weight ensemble of M states.
double srm_success(const Eigen::MatrixXcd& gram, int M);

// Full trace norm || rho1 - rho2 ||_1 of the two ensemble averages, computed
// inside the joint span of all labels.
double average_state_distance(const WeightedEnsemble& e1,
                              const WeightedEnsemble& e2);

}  // namespace bwc
