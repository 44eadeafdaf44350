#include "bwc/gram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bwc/errors.hpp"

namespace bwc {
namespace {

// Relative cutoff below which a joint-span direction is treated as null.
constexpr double kSpanRankTol = 1e-13;

void check_finite(const CoherentLabel& label) {
  for (const Complex& a : label.amplitudes)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("coherent label has a non-finite amplitude");
}

void check_hermitian_unit_trace(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw std::invalid_argument("gram matrix must be square and non-empty");
  double herm = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw std::invalid_argument("gram matrix is not Hermitian, deviation " +
                                std::to_string(herm));
  double tr = g.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw std::invalid_argument("gram matrix trace " + std::to_string(tr) +
                                " is not 1");
}

// Orthonormal-basis coordinates of a list of states given their overlap
// matrix S_ab = <psi_a|psi_b>: with S = W Lambda W^dagger, the coordinate
// matrix is C = diag(sqrt(lambda)) W^dagger, restricted to directions with
// lambda above the rank cutoff.
Eigen::MatrixXcd span_coordinates(const Eigen::MatrixXcd& overlaps) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(overlaps);
  if (es.info() != Eigen::Success)
    throw numeric_error("span coordinates: eigendecomposition failed");
  Eigen::VectorXd lam = clamp_spectrum(es.eigenvalues(), "span coordinates");
  double lam_max = lam.maxCoeff();
  Eigen::Index a = overlaps.rows();
  Eigen::MatrixXcd coords(a, a);
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < a; ++k) {
    if (lam(k) <= kSpanRankTol * lam_max) continue;
    coords.row(r++) =
        std::sqrt(lam(k)) * es.eigenvectors().col(k).adjoint();
  }
  return coords.topRows(r);
}

}  // namespace

void validate(const WeightedEnsemble& e) {
  if (e.labels.empty())
    throw std::invalid_argument("ensemble has no labels");
  if (e.labels.size() != e.weights.size())
    throw std::invalid_argument("ensemble labels and weights differ in size");
  std::size_t modes = e.labels.front().amplitudes.size();
  if (modes == 0)
    throw std::invalid_argument("ensemble labels must have >= 1 mode");
  double sum = 0.0;
  for (double w : e.weights) {
    if (!(w >= 0.0))
      throw std::invalid_argument("ensemble weight is negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ensemble weights sum to " +
                                std::to_string(sum) + ", expected 1");
  for (const CoherentLabel& label : e.labels) {
    if (label.amplitudes.size() != modes)
      throw std::invalid_argument("ensemble labels differ in mode count");
    check_finite(label);
  }
}

Complex coherent_overlap(const CoherentLabel& a, const CoherentLabel& b) {
  if (a.amplitudes.size() != b.amplitudes.size())
    throw std::invalid_argument(
        "coherent_overlap: mode counts differ (" +
        std::to_string(a.amplitudes.size()) + " vs " +
        std::to_string(b.amplitudes.size()) + ")");
  if (a.amplitudes.empty())
    throw std::invalid_argument("coherent_overlap: labels must have >= 1 mode");
  check_finite(a);
  check_finite(b);
  Complex exponent = 0.0;
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
    const Complex& x = a.amplitudes[k];
    const Complex& y = b.amplitudes[k];
    exponent += -0.5 * std::norm(x) - 0.5 * std::norm(y) + std::conj(x) * y;
  }
  return std::exp(exponent);
}

Eigen::MatrixXcd build_gram(const WeightedEnsemble& e) {
  validate(e);
  Eigen::Index m = static_cast<Eigen::Index>(e.labels.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g(i, i) = e.weights[i];
    for (Eigen::Index j = i + 1; j < m; ++j) {
      Complex ov = coherent_overlap(e.labels[i], e.labels[j]);
      Complex entry = std::sqrt(e.weights[i] * e.weights[j]) * ov;
      g(i, j) = entry;
      g(j, i) = std::conj(entry);
    }
  }
  return g;
}

Eigen::VectorXd clamp_spectrum(const Eigen::VectorXd& eigenvalues,
                               const char* context) {
  Eigen::VectorXd out = eigenvalues;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -kEigenvalueErrorTol)
      throw numeric_error(std::string(context) + ": eigenvalue " +
                          std::to_string(out(i)) +
                          " below the PSD tolerance -1e-8");
    if (out(i) < 0.0) out(i) = 0.0;
  }
  return out;
}

double spectrum_entropy_bits(const Eigen::VectorXd& eigenvalues,
                             const char* context) {
  Eigen::VectorXd lam = clamp_spectrum(eigenvalues, context);
  double h = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 0.0) h -= lam(i) * std::log2(lam(i));
  return h;
}

double ensemble_entropy(const Eigen::MatrixXcd& gram) {
  check_hermitian_unit_trace(gram);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("ensemble_entropy: eigendecomposition failed");
  return spectrum_entropy_bits(es.eigenvalues(), "ensemble_entropy");
}

double srm_success(const Eigen::MatrixXcd& gram, int M) {
  check_hermitian_unit_trace(gram);
  if (gram.rows() != M)
    throw std::invalid_argument("srm_success: gram size does not match M");
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    if (std::abs(gram(i, i).real() - 1.0 / M) > 1e-12)
      throw config_error(
          "srm_success: weights are not uniform 1/M; only uniform ensembles "
          "are supported");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.info() != Eigen::Success)
    throw numeric_error("srm_success: eigendecomposition failed");
  Eigen::VectorXd lam = clamp_spectrum(es.eigenvalues(), "srm_success");
  // Eigenvalues at the solver's noise floor would get sqrt-amplified into
  // the diagonal; they carry no signal, so they are zeroed.
  double floor = 1e-14 * lam.maxCoeff();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) <= floor) lam(i) = 0.0;
  Eigen::MatrixXcd sqrt_g = es.eigenvectors() *
                            lam.cwiseSqrt().asDiagonal() *
                            es.eigenvectors().adjoint();
  double p = 0.0;
  for (Eigen::Index i = 0; i < sqrt_g.rows(); ++i) {
    double d = sqrt_g(i, i).real();
    p += d * d;
  }
  return p;
}

double average_state_distance(const WeightedEnsemble& e1,
                              const WeightedEnsemble& e2) {
  validate(e1);
  validate(e2);
  if (e1.labels.front().amplitudes.size() !=
      e2.labels.front().amplitudes.size())
    throw std::invalid_argument(
        "average_state_distance: ensembles differ in mode count");
  std::size_t a1 = e1.labels.size();
  std::size_t a = a1 + e2.labels.size();
  std::vector<const CoherentLabel*> labels;
  labels.reserve(a);
  for (const auto& l : e1.labels) labels.push_back(&l);
  for (const auto& l : e2.labels) labels.push_back(&l);

  Eigen::MatrixXcd overlaps(a, a);
  for (std::size_t i = 0; i < a; ++i) {
    overlaps(i, i) = 1.0;
    for (std::size_t j = i + 1; j < a; ++j) {
      Complex ov = coherent_overlap(*labels[i], *labels[j]);
      overlaps(i, j) = ov;
      overlaps(j, i) = std::conj(ov);
    }
  }

  Eigen::MatrixXcd coords = span_coordinates(overlaps);
  Eigen::Index r = coords.rows();
  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(r, r);
  for (std::size_t i = 0; i < a1; ++i)
    diff += e1.weights[i] * coords.col(i) * coords.col(i).adjoint();
  for (std::size_t i = a1; i < a; ++i)
    diff -= e2.weights[i - a1] * coords.col(i) * coords.col(i).adjoint();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("average_state_distance: eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace bwc
