#include "mmwmc/deployment.hpp"

#include <cmath>
#include <stdexcept>

namespace mmwmc {

bool SimArea::contains(Point p) const
{
  return p.x >= 0.0 && p.x <= width_m() && p.y >= 0.0 && p.y <= height_m();
}

void validate(const SimArea& area)
{
  if (!(area.width_km > 0.0) || !(area.height_km > 0.0)) {
    throw std::invalid_argument("simulation area sides must be positive");
  }
}

Deployment sample_deployment(Rng& rng, double lambda_bs, const SimArea& area)
{
  validate(area);
  if (!(lambda_bs >= 0.0)) {
    throw std::invalid_argument("lambda_bs must be non-negative");
  }

  std::uniform_real_distribution<double> ux(0.0, area.width_m());
  std::uniform_real_distribution<double> uy(0.0, area.height_m());

  Deployment d;
  d.ue_position = {ux(rng), uy(rng)};

  const double mean = lambda_bs * area.area_km2();
  std::size_t count = 0;
  if (mean > 0.0) {
    std::poisson_distribution<std::size_t> poisson(mean);
    count = poisson(rng);
  }

  d.scell_positions.reserve(count);
  d.scell_ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    d.scell_positions.push_back({x, y});
    d.scell_ids.push_back(static_cast<int>(i) + 1);
  }
  return d;
}

double distance_m(Point p, Point q)
{
  return std::hypot(p.x - q.x, p.y - q.y);
}

} // namespace mmwmc
