#include "piezolab/params.hpp"

#include <cmath>
#include <sstream>

namespace piezolab {

double BeamParameters::max_wave_speed() const {
  return std::sqrt(std::max(effective_stiffness() / rho, beta / mu));
}

double BeamParameters::min_wave_speed() const {
  return std::sqrt(std::min(effective_stiffness() / rho, beta / mu));
}

namespace {

void check_positive(std::vector<std::string>& errors, const char* name,
                    double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    errors.push_back(std::string(name) + " must be > 0");
  }
}

void check_non_negative(std::vector<std::string>& errors, const char* name,
                        double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    errors.push_back(std::string(name) + " must be >= 0");
  }
}

}  // namespace

ValidationReport validate(const BeamParameters& p) {
  ValidationReport report;
  check_positive(report.errors, "rho", p.rho);
  check_positive(report.errors, "mu", p.mu);
  check_positive(report.errors, "alpha1", p.alpha1);
  check_positive(report.errors, "beta", p.beta);
  check_positive(report.errors, "L", p.length);
  check_non_negative(report.errors, "gamma", p.gamma);
  check_non_negative(report.errors, "xi1", p.xi1);
  check_non_negative(report.errors, "xi2", p.xi2);
  check_non_negative(report.errors, "m1", p.m1);
  check_non_negative(report.errors, "m2", p.m2);
  if (report.ok()) {
    if (p.gamma == 0.0)
      report.warnings.push_back("gamma = 0: the two plates decouple");
    if (p.xi1 == 0.0 && p.xi2 == 0.0)
      report.warnings.push_back("xi1 = xi2 = 0: conservative dynamics");
    if (p.m1 == 0.0 && p.m2 == 0.0)
      report.warnings.push_back("m1 = m2 = 0: no tip body");
  }
  return report;
}

void require_valid(const BeamParameters& p) {
  const ValidationReport report = validate(p);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid beam parameters:";
  for (const auto& e : report.errors) msg << " " << e << ";";
  throw std::invalid_argument(msg.str());
}

double dissipation_rate(double u, double eta, const BeamParameters& p) {
  return -p.xi1 * u * u - p.xi2 * eta * eta;
}

}  // namespace piezolab
