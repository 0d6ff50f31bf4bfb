#include "mmwmc/beamforming.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmwmc {

namespace {

// Sum_{n=0}^{count-1} exp(j*n*phase), normalized by sqrt(count).
std::complex<double> normalized_phase_sum(int count, double phase)
{
  const std::complex<double> step = std::polar(1.0, phase);
  std::complex<double> term{1.0, 0.0};
  std::complex<double> sum{0.0, 0.0};
  for (int n = 0; n < count; ++n) {
    sum += term;
    term *= step;
  }
  return sum / std::sqrt(static_cast<double>(count));
}

} // namespace

double wrap_angle(double rad)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(rad + std::numbers::pi, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  return r - std::numbers::pi;
}

Codebook::Codebook(int rows, int cols, int n_directions, double spacing_wavelengths)
  : m_rows(rows), m_cols(cols), m_spacing(spacing_wavelengths)
{
  if (rows < 1 || cols < 1 || n_directions < 1) {
    throw std::invalid_argument("codebook dimensions must be >= 1 (got " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", " + std::to_string(n_directions) + " directions)");
  }
  if (!(spacing_wavelengths > 0.0)) {
    throw std::invalid_argument("element spacing must be positive");
  }
  m_steering.reserve(static_cast<std::size_t>(n_directions));
  for (int k = 0; k < n_directions; ++k) {
    m_steering.push_back({2.0 * std::numbers::pi * k / n_directions, 0.0});
  }
}

const SteeringAngle& Codebook::steering(int dir) const
{
  if (dir < 0 || dir >= n_directions()) {
    throw std::out_of_range("codebook direction " + std::to_string(dir) + " out of range");
  }
  return m_steering[static_cast<std::size_t>(dir)];
}

std::complex<double> Codebook::unchecked_response(int dir, double azimuth_rad, double elevation_rad) const
{
  const SteeringAngle& s = m_steering[static_cast<std::size_t>(dir)];
  const double rel_az = azimuth_rad - s.azimuth_rad;
  if (n_directions() > 1 && std::cos(rel_az) < 0.0) {
    return {0.0, 0.0};
  }
  const double k = 2.0 * std::numbers::pi * m_spacing;
  const double horizontal = k * std::sin(rel_az) * std::cos(elevation_rad);
  const double vertical = k * (std::sin(elevation_rad) - std::sin(s.elevation_rad));
  return normalized_phase_sum(m_cols, horizontal) * normalized_phase_sum(m_rows, vertical);
}

std::complex<double> Codebook::response(int dir, double azimuth_rad, double elevation_rad) const
{
  steering(dir);
  return unchecked_response(dir, azimuth_rad, elevation_rad);
}

void Codebook::responses(double azimuth_rad, double elevation_rad, std::span<std::complex<double>> out) const
{
  if (out.size() != m_steering.size()) {
    throw std::invalid_argument("response buffer size mismatch");
  }
  for (int k = 0; k < n_directions(); ++k) {
    out[static_cast<std::size_t>(k)] = unchecked_response(k, azimuth_rad, elevation_rad);
  }
}

double Codebook::peak_gain_db() const
{
  return 10.0 * std::log10(static_cast<double>(n_elements()));
}

Codebook make_codebook(int rows, int cols, int n_directions, double spacing_wavelengths)
{
  return Codebook{rows, cols, n_directions, spacing_wavelengths};
}

double array_gain_db(const Codebook& cb, int dir, double azimuth_rad, double elevation_rad)
{
  return 10.0 * std::log10(cb.gain_linear(dir, azimuth_rad, elevation_rad));
}

} // namespace mmwmc
