#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bwc/gram.hpp"

namespace bwc {

// Hard cap on dense-operator dimension (N+1)^modes. Default 4096; override
// with the environment variable BWC_FOCK_DIM_CAP (positive integer).
int fock_dim_cap();

// Cap on total coefficients (state count times dimension) for the
// vector-span functionals, which never materialize dense operators.
inline constexpr std::int64_t kFockVectorBudget = std::int64_t(1) << 22;

// Number-basis coefficients of a k-mode pure state truncated at photon
// number `cutoff` per mode; coeffs has (cutoff+1)^modes entries, mode 0 is
// the most significant index digit. Norm <= 1, truncation loses mass.
struct FockVector {
  Eigen::VectorXcd coeffs;
  int cutoff = 0;
  int modes = 1;
};

// Dense Hermitian operator on the truncated number basis.
struct FockOperator {
  Eigen::MatrixXcd m;
  int cutoff = 0;
  int modes = 1;
};

// Poisson mass above the cutoff for |alpha>, against the guarantee
// tail <= 2^{-N}/2 available whenever N > 8e|alpha|^2.
struct TruncationReport {
  int cutoff = 0;
  double tail = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  bool precondition = false;
};

// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), computed in log space.
FockVector coherent_vector(Complex alpha, int cutoff);

// Kronecker product of per-mode coherent vectors.
FockVector product_vector(const CoherentLabel& label, int cutoff);

TruncationReport tail_probability(Complex alpha, int cutoff);

// sum_i w_i P_N |psi_i><psi_i| P_N with the lost mass returned to the
// multimode vacuum, keeping the trace exactly 1.
FockOperator density_from_ensemble(const WeightedEnsemble& e, int cutoff);

// P_N rho P_N + Tr[(1 - P_N) rho] |0><0| on the smaller cutoff.
FockOperator truncate_renormalize(const FockOperator& rho, int cutoff);

double von_neumann_entropy(const FockOperator& rho);

double trace_norm_distance(const FockOperator& a, const FockOperator& b);

// Tr[N_hat rho] from the number-basis diagonal.
double photon_number_expectation(const FockOperator& rho);

// Square-root-measurement POVM for uniform priors: M elements
// rho^{-1/2} (1/M)|psi_i><psi_i| rho^{-1/2} plus a completion element on the
// orthogonal complement of the support.
std::vector<FockOperator> srm_povm(const std::vector<FockVector>& states);

// Average success probability of that POVM without materializing elements.
double srm_povm_success(const std::vector<FockVector>& states);

// Tr[Lambda rho] <= Tr[Lambda sigma] + ||rho - sigma||_1 for 0 <= Lambda <= 1.
bool check_finite_support_lemma(const FockOperator& lambda_op,
                                const FockOperator& rho,
                                const FockOperator& sigma,
                                double slack = 1e-10);

// Span-route functionals on explicitly truncated vectors. These build an
// orthonormal basis by QR of the stacked coefficient vectors, so they stay
// independent of the analytic overlap formula and of the sqrt-Gram success
// identity used by the gram module.
double ensemble_entropy_vectors(const std::vector<FockVector>& states,
                                const std::vector<double>& weights);
double srm_success_vectors(const std::vector<FockVector>& states);
double average_distance_vectors(const std::vector<FockVector>& s1,
                                const std::vector<double>& w1,
                                const std::vector<FockVector>& s2,
                                const std::vector<double>& w2);

}  // namespace bwc
