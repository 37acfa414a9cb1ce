#include "alphaleak/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace alphaleak {
namespace {

void validate_mass(std::span<const double> mass, double tolerance, const char* what) {
  if (mass.empty()) throw std::invalid_argument(std::string(what) + ": empty support");
  double total = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const double m = mass[i];
    if (!std::isfinite(m) || m < 0.0) {
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(i) +
                                  " is not a nonnegative real");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw std::invalid_argument(std::string(what) + ": mass sums to " + std::to_string(total) +
                                ", not 1");
  }
}

std::vector<double> row_sums(std::size_t nx, std::size_t ny, const std::vector<double>& mass) {
  std::vector<double> out(nx, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) out[x] += mass[x * ny + y];
  return out;
}

std::vector<double> column_sums(std::size_t nx, std::size_t ny, const std::vector<double>& mass) {
  std::vector<double> out(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) out[y] += mass[x * ny + y];
  return out;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("joint distribution: no rows");
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw std::invalid_argument("joint distribution: ragged rows");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

// Validates before the marginals are built so errors name the joint, not a marginal.
void check_grid(std::size_t nx, std::size_t ny, const std::vector<double>& mass,
                double tolerance) {
  if (nx == 0 || ny == 0) throw std::invalid_argument("joint distribution: zero dimension");
  if (mass.size() != nx * ny) {
    throw std::invalid_argument("joint distribution: expected " + std::to_string(nx * ny) +
                                " cells, got " + std::to_string(mass.size()));
  }
  validate_mass(mass, tolerance, "joint distribution");
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> mass, double tolerance)
    : mass_(std::move(mass)) {
  validate_mass(mass_, tolerance, "distribution");
}

FiniteDistribution FiniteDistribution::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("distribution: empty support");
  return FiniteDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)), 1e-9);
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t size, std::size_t at) {
  if (at >= size) throw std::out_of_range("point mass index out of range");
  std::vector<double> m(size, 0.0);
  m[at] = 1.0;
  return FiniteDistribution(std::move(m));
}

FiniteDistribution FiniteDistribution::bernoulli(double p_one) {
  if (!(p_one >= 0.0 && p_one <= 1.0)) throw std::invalid_argument("bernoulli parameter outside [0,1]");
  return FiniteDistribution({1.0 - p_one, p_one});
}

FiniteDistribution FiniteDistribution::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights sum to zero");
  for (double& w : weights) w /= total;
  return FiniteDistribution(std::move(weights), 1e-9);
}

double FiniteDistribution::at(std::size_t i) const {
  if (i >= mass_.size()) throw std::out_of_range("distribution index out of range");
  return mass_[i];
}

JointDistribution::JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> mass,
                                     double tolerance)
    : nx_(nx),
      ny_(ny),
      mass_((check_grid(nx, ny, mass, tolerance), std::move(mass))),
      marginal_x_(row_sums(nx_, ny_, mass_), tolerance + 1e-15),
      marginal_y_(column_sums(nx_, ny_, mass_), tolerance + 1e-15) {}

JointDistribution::JointDistribution(const std::vector<std::vector<double>>& rows, double tolerance)
    : JointDistribution(rows.size(), rows.empty() ? 0 : rows.front().size(), flatten(rows),
                        tolerance) {}

JointDistribution JointDistribution::product(const FiniteDistribution& px,
                                             const FiniteDistribution& py) {
  std::vector<double> m(px.size() * py.size());
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < py.size(); ++y) m[x * py.size() + y] = px[x] * py[y];
  return JointDistribution(px.size(), py.size(), std::move(m), 1e-10);
}

JointDistribution JointDistribution::from_channel(const FiniteDistribution& px,
                                                  const std::vector<FiniteDistribution>& channel) {
  if (channel.size() != px.size()) throw std::invalid_argument("channel needs one row per input symbol");
  const std::size_t ny = channel.front().size();
  std::vector<double> m(px.size() * ny);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (channel[x].size() != ny) throw std::invalid_argument("channel rows differ in length");
    for (std::size_t y = 0; y < ny; ++y) m[x * ny + y] = px[x] * channel[x][y];
  }
  return JointDistribution(px.size(), ny, std::move(m), 1e-10);
}

FiniteDistribution JointDistribution::conditional_y(std::size_t x) const {
  if (x >= nx_) throw std::out_of_range("row index out of range");
  const double px = marginal_x_[x];
  if (px <= 0.0) throw std::domain_error("conditional undefined: P_X(x) = 0");
  std::vector<double> r(row(x).begin(), row(x).end());
  for (double& v : r) v /= px;
  return FiniteDistribution(std::move(r), 1e-10);
}

double JointDistribution::conditional(std::size_t x, std::size_t y) const {
  const double px = marginal_x_[x];
  return px > 0.0 ? (*this)(x, y) / px : 0.0;
}

std::vector<double> JointDistribution::product_of_marginals() const {
  std::vector<double> out(nx_ * ny_);
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y) out[x * ny_ + y] = marginal_x_[x] * marginal_y_[y];
  return out;
}

JointDistribution JointDistribution::garble(const std::vector<FiniteDistribution>& channel) const {
  if (channel.size() != ny_) throw std::invalid_argument("garbling needs one row per output symbol");
  const std::size_t nz = channel.front().size();
  std::vector<double> m(nx_ * nz, 0.0);
  for (std::size_t y = 0; y < ny_; ++y) {
    if (channel[y].size() != nz) throw std::invalid_argument("garbling rows differ in length");
  }
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y)
      for (std::size_t z = 0; z < nz; ++z) m[x * nz + z] += (*this)(x, y) * channel[y][z];
  return JointDistribution(nx_, nz, std::move(m), 1e-10);
}

}  // namespace alphaleak
