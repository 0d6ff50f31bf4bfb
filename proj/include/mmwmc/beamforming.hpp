#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mmwmc {

/// Receiver/transmitter beamforming capability.
///  - Analog: one codebook direction per slot.
///  - Digital: every codebook direction is evaluated in the same slot.
enum class BfArchitecture
{
  Analog,
  Digital,
};

struct SteeringAngle
{
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
};

/// Finite direction codebook for a uniform planar array (UPA).
///
/// Direction k steers toward azimuth 2*pi*k/n_directions at zero elevation. Each
/// direction is served by a rows x cols panel whose boresight faces the steering
/// azimuth (cols span the horizontal axis, rows the vertical one). Panel elements
/// are isotropic over the front half-space and silent behind it. A codebook with a
/// single direction is one omnidirectional panel without a back plane.
///
/// The per-direction weight vector is the conjugate steering vector normalized
/// to unit norm, so the linear gain |w^H a|^2 peaks at rows*cols.
class Codebook
{
public:
  Codebook(int rows, int cols, int n_directions, double spacing_wavelengths = 0.5);

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }
  int n_elements() const { return m_rows * m_cols; }
  int n_directions() const { return static_cast<int>(m_steering.size()); }
  double spacing_wavelengths() const { return m_spacing; }
  const SteeringAngle& steering(int dir) const;
  std::span<const SteeringAngle> steering() const { return m_steering; }

  /// Beamformed response w_dir^H a(azimuth, elevation).
  std::complex<double> response(int dir, double azimuth_rad, double elevation_rad) const;

  /// Responses of every direction toward one angle; `out` must hold n_directions().
  void responses(double azimuth_rad, double elevation_rad, std::span<std::complex<double>> out) const;

  double gain_linear(int dir, double azimuth_rad, double elevation_rad) const
  {
    return std::norm(response(dir, azimuth_rad, elevation_rad));
  }

  double peak_gain_db() const;

private:
  std::complex<double> unchecked_response(int dir, double azimuth_rad, double elevation_rad) const;

  int m_rows;
  int m_cols;
  double m_spacing;
  std::vector<SteeringAngle> m_steering;
};

Codebook make_codebook(int rows, int cols, int n_directions, double spacing_wavelengths = 0.5);

/// Gain in dB of direction `dir` toward (azimuth, elevation); -inf behind a panel.
double array_gain_db(const Codebook& cb, int dir, double azimuth_rad, double elevation_rad);

/// Wraps an angle to [-pi, pi).
double wrap_angle(double rad);

} // namespace mmwmc
