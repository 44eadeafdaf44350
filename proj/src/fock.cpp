#include "bwc/fock.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>

#include "bwc/errors.hpp"

namespace bwc {
namespace {

constexpr double k8e = 8.0 * 2.71828182845904523536;

std::int64_t pow_dim(int cutoff, int modes) {
  std::int64_t d = 1;
  for (int k = 0; k < modes; ++k) {
    d *= cutoff + 1;
    if (d > (std::int64_t(1) << 40))
      throw resource_error("fock dimension (cutoff+1)^modes overflows");
  }
  return d;
}

void check_shape(const FockVector& v) {
  if (v.cutoff < 0 || v.modes < 1)
    throw std::invalid_argument("fock vector: cutoff must be >= 0, modes >= 1");
  if (v.coeffs.size() != pow_dim(v.cutoff, v.modes))
    throw std::invalid_argument("fock vector: coefficient count mismatch");
}

void check_shape(const FockOperator& op) {
  if (op.cutoff < 0 || op.modes < 1)
    throw std::invalid_argument(
        "fock operator: cutoff must be >= 0, modes >= 1");
  std::int64_t d = pow_dim(op.cutoff, op.modes);
  if (op.m.rows() != d || op.m.cols() != d)
    throw std::invalid_argument("fock operator: matrix shape mismatch");
}

void check_hermitian(const FockOperator& op, const char* what) {
  double dev = (op.m - op.m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * std::max(1.0, op.m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument(std::string(what) +
                                ": operator is not Hermitian");
}

void check_density(const FockOperator& op, const char* what) {
  check_shape(op);
  check_hermitian(op, what);
  double tr = op.m.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": trace " +
                                std::to_string(tr) + " is not 1");
  for (Eigen::Index i = 0; i < op.m.rows(); ++i)
    if (op.m(i, i).real() < -kEigenvalueClampTol)
      throw std::invalid_argument(std::string(what) +
                                  ": negative diagonal entry");
}

void check_dense_cap(std::int64_t dim) {
  int cap = fock_dim_cap();
  if (dim > cap)
    throw resource_error(
        "dense fock operator dimension " + std::to_string(dim) +
        " exceeds the cap " + std::to_string(cap) +
        " (override with BWC_FOCK_DIM_CAP)");
}

int digit_sum(std::int64_t index, int base, int modes) {
  int s = 0;
  for (int k = 0; k < modes; ++k) {
    s += static_cast<int>(index % base);
    index /= base;
  }
  return s;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h,
                                      const char* context) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error(std::string(context) + ": eigendecomposition failed");
  return es.eigenvalues();
}

// Orthonormal-basis coordinates of stacked state vectors via column-pivoted
// QR; returns an A x A matrix whose column a holds the coordinates of state
// a. Exact because every state lies in the range of the stack.
Eigen::MatrixXcd qr_span_coordinates(const std::vector<FockVector>& states) {
  if (states.empty())
    throw std::invalid_argument("span coordinates: no states");
  check_shape(states.front());
  std::int64_t dim = states.front().coeffs.size();
  Eigen::Index a = static_cast<Eigen::Index>(states.size());
  if (dim * a > kFockVectorBudget)
    throw resource_error("vector-span budget exceeded: " +
                         std::to_string(dim * a) + " coefficients");
  Eigen::MatrixXcd phi(dim, a);
  for (Eigen::Index i = 0; i < a; ++i) {
    check_shape(states[i]);
    if (states[i].cutoff != states.front().cutoff ||
        states[i].modes != states.front().modes)
      throw std::invalid_argument("span coordinates: mixed cutoffs or modes");
    phi.col(i) = states[i].coeffs;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(phi);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(dim, a);
  return q.adjoint() * phi;
}

void check_uniform_sizes(const std::vector<FockVector>& states,
                         const std::vector<double>& weights) {
  if (states.size() != weights.size())
    throw std::invalid_argument("states and weights differ in size");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

}  // namespace

int fock_dim_cap() {
  const char* env = std::getenv("BWC_FOCK_DIM_CAP");
  if (env == nullptr || *env == '\0') return 4096;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v <= 0)
    throw config_error(std::string("BWC_FOCK_DIM_CAP must be a positive "
                                   "integer, got \"") +
                       env + "\"");
  return static_cast<int>(v);
}

FockVector coherent_vector(Complex alpha, int cutoff) {
  if (cutoff < 0)
    throw std::invalid_argument("coherent_vector: cutoff must be >= 0");
  double nbar = std::norm(alpha);
  double mag = std::abs(alpha);
  double phase = std::arg(alpha);
  FockVector v;
  v.cutoff = cutoff;
  v.modes = 1;
  v.coeffs.resize(cutoff + 1);
  v.coeffs(0) = std::exp(-0.5 * nbar);
  for (int n = 1; n <= cutoff; ++n) {
    double logmag = -0.5 * nbar + n * std::log(mag) - 0.5 * std::lgamma(n + 1.0);
    v.coeffs(n) = std::polar(std::exp(logmag), n * phase);
  }
  return v;
}

FockVector product_vector(const CoherentLabel& label, int cutoff) {
  if (label.amplitudes.empty())
    throw std::invalid_argument("product_vector: label must have >= 1 mode");
  int modes = static_cast<int>(label.amplitudes.size());
  std::int64_t dim = pow_dim(cutoff, modes);
  if (dim > kFockVectorBudget)
    throw resource_error("product_vector: dimension " + std::to_string(dim) +
                         " exceeds the vector budget");
  FockVector out = coherent_vector(label.amplitudes[0], cutoff);
  for (int k = 1; k < modes; ++k) {
    FockVector next = coherent_vector(label.amplitudes[k], cutoff);
    Eigen::VectorXcd merged(out.coeffs.size() * next.coeffs.size());
    for (Eigen::Index i = 0; i < out.coeffs.size(); ++i)
      merged.segment(i * next.coeffs.size(), next.coeffs.size()) =
          out.coeffs(i) * next.coeffs;
    out.coeffs = std::move(merged);
  }
  out.modes = modes;
  return out;
}

TruncationReport tail_probability(Complex alpha, int cutoff) {
  if (cutoff < 0)
    throw std::invalid_argument("tail_probability: cutoff must be >= 0");
  double lam = std::norm(alpha);
  TruncationReport r;
  r.cutoff = cutoff;
  r.bound = std::ldexp(1.0, -cutoff - 1);
  r.precondition = cutoff > k8e * lam;
  if (lam == 0.0) {
    r.tail = 0.0;
    r.satisfied = true;
    return r;
  }
  // Upper Poisson sum from n = cutoff+1; terms decay at least geometrically
  // once n exceeds lam, which the precondition regime guarantees.
  double loglam = std::log(lam);
  double tail = 0.0;
  for (int n = cutoff + 1; n <= cutoff + 2000; ++n) {
    double term = std::exp(-lam + n * loglam - std::lgamma(n + 1.0));
    tail += term;
    if (term < 1e-300 || term < 1e-18 * tail) break;
  }
  r.tail = tail;
  r.satisfied = tail <= r.bound;
  return r;
}

FockOperator density_from_ensemble(const WeightedEnsemble& e, int cutoff) {
  validate(e);
  int modes = static_cast<int>(e.labels.front().amplitudes.size());
  std::int64_t dim = pow_dim(cutoff, modes);
  check_dense_cap(dim);
  bool precondition_ok = true;
  for (const CoherentLabel& l : e.labels)
    for (const Complex& a : l.amplitudes)
      if (!(cutoff > k8e * std::norm(a))) precondition_ok = false;
  if (!precondition_ok)
    std::cerr << "density_from_ensemble: cutoff " << cutoff
              << " is below 8e|alpha|^2 for some label; truncation error is "
                 "not covered by the tail guarantee\n";
  FockOperator rho;
  rho.cutoff = cutoff;
  rho.modes = modes;
  rho.m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    FockVector v = product_vector(e.labels[i], cutoff);
    rho.m.noalias() += e.weights[i] * v.coeffs * v.coeffs.adjoint();
  }
  double deficit = 1.0 - rho.m.trace().real();
  rho.m(0, 0) += deficit;
  return rho;
}

FockOperator truncate_renormalize(const FockOperator& rho, int cutoff) {
  check_density(rho, "truncate_renormalize");
  if (cutoff < 0 || cutoff > rho.cutoff)
    throw std::invalid_argument(
        "truncate_renormalize: target cutoff must lie in [0, source cutoff]");
  int base_in = rho.cutoff + 1;
  int base_out = cutoff + 1;
  std::int64_t dim_in = rho.m.rows();
  std::int64_t dim_out = pow_dim(cutoff, rho.modes);
  // Map source indices whose every mode digit stays within the target cutoff.
  std::vector<std::int64_t> keep_map(dim_in, -1);
  for (std::int64_t i = 0; i < dim_in; ++i) {
    std::int64_t rest = i;
    std::int64_t mapped = 0;
    std::int64_t stride = 1;
    bool ok = true;
    for (int k = 0; k < rho.modes; ++k) {
      int digit = static_cast<int>(rest % base_in);
      rest /= base_in;
      if (digit > cutoff) {
        ok = false;
        break;
      }
      mapped += digit * stride;
      stride *= base_out;
    }
    if (ok) keep_map[i] = mapped;
  }
  FockOperator out;
  out.cutoff = cutoff;
  out.modes = rho.modes;
  out.m = Eigen::MatrixXcd::Zero(dim_out, dim_out);
  for (std::int64_t i = 0; i < dim_in; ++i) {
    if (keep_map[i] < 0) continue;
    for (std::int64_t j = 0; j < dim_in; ++j)
      if (keep_map[j] >= 0) out.m(keep_map[i], keep_map[j]) = rho.m(i, j);
  }
  double deficit = 1.0 - out.m.trace().real();
  out.m(0, 0) += deficit;
  return out;
}

double von_neumann_entropy(const FockOperator& rho) {
  check_density(rho, "von_neumann_entropy");
  return spectrum_entropy_bits(hermitian_eigenvalues(rho.m,
                                                     "von_neumann_entropy"),
                               "von_neumann_entropy");
}

double trace_norm_distance(const FockOperator& a, const FockOperator& b) {
  check_shape(a);
  check_shape(b);
  if (a.cutoff != b.cutoff || a.modes != b.modes)
    throw std::invalid_argument("trace_norm_distance: shape mismatch");
  check_hermitian(a, "trace_norm_distance");
  check_hermitian(b, "trace_norm_distance");
  Eigen::MatrixXcd diff = a.m - b.m;
  return hermitian_eigenvalues(diff, "trace_norm_distance").cwiseAbs().sum();
}

double photon_number_expectation(const FockOperator& rho) {
  check_density(rho, "photon_number_expectation");
  int base = rho.cutoff + 1;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rho.m.rows(); ++i)
    sum += rho.m(i, i).real() * digit_sum(i, base, rho.modes);
  return sum;
}

std::vector<FockOperator> srm_povm(const std::vector<FockVector>& states) {
  if (states.empty()) throw std::invalid_argument("srm_povm: no states");
  check_shape(states.front());
  std::int64_t dim = states.front().coeffs.size();
  check_dense_cap(dim);
  int m_count = static_cast<int>(states.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const FockVector& v : states) {
    check_shape(v);
    if (v.cutoff != states.front().cutoff || v.modes != states.front().modes)
      throw std::invalid_argument("srm_povm: mixed cutoffs or modes");
    rho.noalias() += (1.0 / m_count) * v.coeffs * v.coeffs.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.info() != Eigen::Success)
    throw numeric_error("srm_povm: eigendecomposition failed");
  Eigen::VectorXd lam = clamp_spectrum(es.eigenvalues(), "srm_povm");
  double lam_max = lam.maxCoeff();
  // Pseudo-inverse square root on the support; rank deficiency is expected.
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(lam.size());
  Eigen::MatrixXcd support_proj = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > 1e-12 * lam_max) {
      inv_sqrt(i) = 1.0 / std::sqrt(lam(i));
      support_proj.noalias() +=
          es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  Eigen::MatrixXcd rho_inv_sqrt = es.eigenvectors() *
                                  inv_sqrt.asDiagonal() *
                                  es.eigenvectors().adjoint();
  std::vector<FockOperator> povm;
  povm.reserve(states.size() + 1);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const FockVector& v : states) {
    Eigen::VectorXcd half = rho_inv_sqrt * v.coeffs;
    FockOperator el;
    el.cutoff = states.front().cutoff;
    el.modes = states.front().modes;
    el.m = (1.0 / m_count) * half * half.adjoint();
    sum += el.m;
    povm.push_back(std::move(el));
  }
  // Completion on the orthogonal complement of the support.
  FockOperator rest;
  rest.cutoff = states.front().cutoff;
  rest.modes = states.front().modes;
  rest.m = Eigen::MatrixXcd::Identity(dim, dim) - sum;
  povm.push_back(std::move(rest));
  return povm;
}

double srm_povm_success(const std::vector<FockVector>& states) {
  if (states.empty())
    throw std::invalid_argument("srm_povm_success: no states");
  check_shape(states.front());
  std::int64_t dim = states.front().coeffs.size();
  check_dense_cap(dim);
  int m_count = static_cast<int>(states.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const FockVector& v : states) {
    check_shape(v);
    rho.noalias() += (1.0 / m_count) * v.coeffs * v.coeffs.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.info() != Eigen::Success)
    throw numeric_error("srm_povm_success: eigendecomposition failed");
  Eigen::VectorXd lam = clamp_spectrum(es.eigenvalues(), "srm_povm_success");
  double lam_max = lam.maxCoeff();
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 1e-12 * lam_max) inv_sqrt(i) = 1.0 / std::sqrt(lam(i));
  Eigen::MatrixXcd rho_inv_sqrt = es.eigenvectors() *
                                  inv_sqrt.asDiagonal() *
                                  es.eigenvectors().adjoint();
  double p = 0.0;
  for (const FockVector& v : states) {
    Complex amp = (v.coeffs.adjoint() * rho_inv_sqrt * v.coeffs)(0);
    p += std::norm(amp) / (m_count * m_count);
  }
  return p;
}

bool check_finite_support_lemma(const FockOperator& lambda_op,
                                const FockOperator& rho,
                                const FockOperator& sigma, double slack) {
  check_shape(lambda_op);
  check_shape(rho);
  check_shape(sigma);
  check_hermitian(lambda_op, "check_finite_support_lemma");
  check_hermitian(rho, "check_finite_support_lemma");
  check_hermitian(sigma, "check_finite_support_lemma");
  Eigen::VectorXd lam_l =
      hermitian_eigenvalues(lambda_op.m, "check_finite_support_lemma");
  if (lam_l.minCoeff() < -kEigenvalueClampTol ||
      lam_l.maxCoeff() > 1.0 + kEigenvalueClampTol)
    throw std::invalid_argument(
        "check_finite_support_lemma: Lambda is not within [0, 1]");
  for (const FockOperator* op : {&rho, &sigma}) {
    Eigen::VectorXd lam =
        hermitian_eigenvalues(op->m, "check_finite_support_lemma");
    if (lam.minCoeff() < -kEigenvalueClampTol ||
        lam.maxCoeff() > 1.0 + kEigenvalueClampTol)
      throw std::invalid_argument(
          "check_finite_support_lemma: state operator is not within [0, 1]");
  }
  double lhs = (lambda_op.m * rho.m).trace().real();
  double rhs = (lambda_op.m * sigma.m).trace().real() +
               trace_norm_distance(rho, sigma);
  return lhs <= rhs + slack;
}

double ensemble_entropy_vectors(const std::vector<FockVector>& states,
                                const std::vector<double>& weights) {
  check_uniform_sizes(states, weights);
  Eigen::MatrixXcd coords = qr_span_coordinates(states);
  Eigen::Index a = coords.cols();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(a, a);
  for (Eigen::Index i = 0; i < a; ++i)
    rho.noalias() += weights[i] * coords.col(i) * coords.col(i).adjoint();
  return spectrum_entropy_bits(
      hermitian_eigenvalues(rho, "ensemble_entropy_vectors"),
      "ensemble_entropy_vectors");
}

double srm_success_vectors(const std::vector<FockVector>& states) {
  if (states.empty())
    throw std::invalid_argument("srm_success_vectors: no states");
  int m_count = static_cast<int>(states.size());
  Eigen::MatrixXcd coords = qr_span_coordinates(states);
  Eigen::Index a = coords.cols();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(a, a);
  for (Eigen::Index i = 0; i < a; ++i)
    rho.noalias() +=
        (1.0 / m_count) * coords.col(i) * coords.col(i).adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.info() != Eigen::Success)
    throw numeric_error("srm_success_vectors: eigendecomposition failed");
  Eigen::VectorXd lam = clamp_spectrum(es.eigenvalues(), "srm_success_vectors");
  double lam_max = lam.maxCoeff();
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 1e-12 * lam_max) inv_sqrt(i) = 1.0 / std::sqrt(lam(i));
  Eigen::MatrixXcd rho_inv_sqrt = es.eigenvectors() *
                                  inv_sqrt.asDiagonal() *
                                  es.eigenvectors().adjoint();
  double p = 0.0;
  for (Eigen::Index i = 0; i < a; ++i) {
    Complex amp = (coords.col(i).adjoint() * rho_inv_sqrt * coords.col(i))(0);
    p += std::norm(amp) / (m_count * m_count);
  }
  return p;
}

double average_distance_vectors(const std::vector<FockVector>& s1,
                                const std::vector<double>& w1,
                                const std::vector<FockVector>& s2,
                                const std::vector<double>& w2) {
  check_uniform_sizes(s1, w1);
  check_uniform_sizes(s2, w2);
  std::vector<FockVector> all;
  all.reserve(s1.size() + s2.size());
  for (const auto& v : s1) all.push_back(v);
  for (const auto& v : s2) all.push_back(v);
  Eigen::MatrixXcd coords = qr_span_coordinates(all);
  Eigen::Index a1 = static_cast<Eigen::Index>(s1.size());
  Eigen::MatrixXcd diff =
      Eigen::MatrixXcd::Zero(coords.cols(), coords.cols());
  for (Eigen::Index i = 0; i < a1; ++i)
    diff.noalias() += w1[i] * coords.col(i) * coords.col(i).adjoint();
  for (Eigen::Index i = a1; i < coords.cols(); ++i)
    diff.noalias() -=
        w2[i - a1] * coords.col(i) * coords.col(i).adjoint();
  return hermitian_eigenvalues(diff, "average_distance_vectors")
      .cwiseAbs()
      .sum();
}

}  // namespace bwc
