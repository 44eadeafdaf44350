#include "bwc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bwc/entropy.hpp"
#include "bwc/errors.hpp"

namespace bwc {
namespace {

void check_transmissivity(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " +
                            std::to_string(t));
}

std::vector<double> sorted_copy(const std::vector<double>& v) {
  std::vector<double> s(v);
  std::sort(s.begin(), s.end());
  return s;
}

// Scans f over the sorted set; strict comparison keeps the first (smallest)
// element on ties.
template <typename F>
std::pair<double, double> scan_min(const std::vector<double>& set, F f) {
  double best_arg = set.front();
  double best = f(best_arg);
  for (std::size_t i = 1; i < set.size(); ++i) {
    double v = f(set[i]);
    if (v < best) {
      best = v;
      best_arg = set[i];
    }
  }
  return {best, best_arg};
}

template <typename F>
std::pair<double, double> scan_max(const std::vector<double>& set, F f) {
  double best_arg = set.front();
  double best = f(best_arg);
  for (std::size_t i = 1; i < set.size(); ++i) {
    double v = f(set[i]);
    if (v > best) {
      best = v;
      best_arg = set[i];
    }
  }
  return {best, best_arg};
}

CapacityEntry make_entry(double bob_term, double eve_term, double worst_tau,
                         double worst_eta) {
  CapacityEntry e;
  e.raw = bob_term - eve_term;
  ClipResult c = clip_nonnegative(e.raw);
  e.value = c.value;
  e.clipped = c.clipped;
  e.worst_tau = worst_tau;
  e.worst_eta = worst_eta;
  return e;
}

}  // namespace

void validate(const ChannelParamSet& params) {
  if (params.tau_set.empty())
    throw config_error("channel parameter set: tau_set is empty");
  if (params.eta_set.empty())
    throw config_error("channel parameter set: eta_set is empty");
  for (double t : params.tau_set) check_transmissivity(t, "tau");
  for (double t : params.eta_set) check_transmissivity(t, "eta");
  if (!(params.energy_E >= 0.0))
    throw std::domain_error("channel parameter set: energy_E must be >= 0");
}

double received_photon_number(double t, double E) {
  check_transmissivity(t, "transmissivity");
  if (!(E >= 0.0))
    throw std::domain_error("received_photon_number: E must be >= 0");
  return t * t * E;
}

ClipResult clip_nonnegative(double raw) {
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

CapacityEntry qq_capacity(const ChannelParamSet& params) {
  validate(params);
  double E = params.energy_E;
  auto [bob, tau] = scan_min(sorted_copy(params.tau_set), [E](double t) {
    return h_bpsk(received_photon_number(t, E));
  });
  auto [eve, eta] = scan_max(sorted_copy(params.eta_set), [E](double t) {
    return h_bpsk(received_photon_number(t, E));
  });
  return make_entry(bob, eve, tau, eta);
}

CapacityEntry cq_capacity(const ChannelParamSet& params) {
  validate(params);
  double E = params.energy_E;
  auto [bob_loss, tau] = scan_max(sorted_copy(params.tau_set), [E](double t) {
    return binary_entropy(homodyne_error(received_photon_number(t, E)));
  });
  auto [eve, eta] = scan_max(sorted_copy(params.eta_set), [E](double t) {
    return h_bpsk(received_photon_number(t, E));
  });
  return make_entry(1.0 - bob_loss, eve, tau, eta);
}

CapacityEntry cc_capacity(const ChannelParamSet& params) {
  validate(params);
  double E = params.energy_E;
  auto [bob_loss, tau] = scan_max(sorted_copy(params.tau_set), [E](double t) {
    return binary_entropy(homodyne_error(received_photon_number(t, E)));
  });
  auto [eve, eta] = scan_max(sorted_copy(params.eta_set), [E](double t) {
    return 1.0 - binary_entropy(homodyne_error(received_photon_number(t, E)));
  });
  return make_entry(1.0 - bob_loss, eve, tau, eta);
}

CapacityReport capacity_report(const ChannelParamSet& params) {
  CapacityReport r;
  r.qq = qq_capacity(params);
  r.cq = cq_capacity(params);
  r.cc = cc_capacity(params);
  return r;
}

std::vector<CapacityReport> capacity_sweep(
    const ChannelParamSet& base, const std::vector<SweepPoint>& grid) {
  if (grid.empty()) throw config_error("capacity_sweep: empty grid");
  validate(base);
  std::vector<CapacityReport> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ChannelParamSet point;
    point.energy_E = base.energy_E;
    point.tau_set = {grid[i].tau};
    point.eta_set.reserve(base.eta_set.size());
    for (double e : base.eta_set)
      point.eta_set.push_back(grid[i].eta_scale * e);
    try {
      out.push_back(capacity_report(point));
    } catch (const std::domain_error& err) {
      throw std::domain_error("sweep point " + std::to_string(i) + ": " +
                              err.what());
    }
  }
  return out;
}

}  // namespace bwc
