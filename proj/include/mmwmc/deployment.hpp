#pragma once

#include "mmwmc/rng.hpp"

#include <cstddef>
#include <vector>

namespace mmwmc {

/// Planar position in meters.
struct Point
{
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Rectangular simulation region. Default is a square of 0.5 km^2.
struct SimArea
{
  double width_km = 0.7071067811865476;
  double height_km = 0.7071067811865476;

  double area_km2() const { return width_km * height_km; }
  double width_m() const { return width_km * 1e3; }
  double height_m() const { return height_km * 1e3; }
  bool contains(Point p) const;
};

/// Throws std::invalid_argument unless both sides are strictly positive.
void validate(const SimArea& area);

/// One UE plus the SCells dropped around it. SCell ids run 1..M in drop order.
struct Deployment
{
  Point ue_position;
  std::vector<Point> scell_positions;
  std::vector<int> scell_ids;

  std::size_t scell_count() const { return scell_positions.size(); }
};

/// Homogeneous PPP drop: M ~ Poisson(lambda_bs * A), positions and UE i.i.d. uniform.
Deployment sample_deployment(Rng& rng, double lambda_bs, const SimArea& area);

double distance_m(Point p, Point q);

} // namespace mmwmc
