// Walk-through of the library on the two-map system with weights (1/3, 2/3)
// and ratio 1/3: closed-form dimensions, a finite discretization, estimates
// on it, and a density construction around a small measure.
#include <cmath>
#include <cstdio>

#include "fracdim/fracdim.hpp"

int main() {
  using namespace fracdim;
  const IFSystem ifs = IFSystem::on_line(1.0 / 3.0, {0.0, 2.0 / 3.0}, {1.0 / 3.0, 2.0 / 3.0});

  std::printf("lower dimension      %.6f\n", lower_dim_formula(ifs));
  std::printf("hausdorff dimension  %.6f\n", hausdorff_dim_formula(ifs));
  std::printf("D_2 (Graf-Luschgy)   %.6f\n", solve_graf_luschgy(ifs, 2.0).value);

  const auto disc = discretize_depth(ifs, 10);
  const ScaleGrid triadic{std::pow(3.0, -9), std::pow(3.0, -2), 8, 8.0};
  std::printf("lower-measure est.   %.6f\n", estimate_lower_dim_measure(disc.measure, triadic).value);

  const auto curve = error_curve(discretize_depth(ifs, 8).measure, 32, 2.0, QuantEngine::exact1d);
  std::printf("quant-dim est.       %.6f\n", estimate_quant_dim(curve).value);

  const DiscreteMeasure target(1, {0.0, 0.4, 1.0}, {0.25, 0.25, 0.5});
  const auto approx = approximate_measure_quant_dim(target, 0.1, std::log(2.0) / std::log(3.0), 2.0, 6);
  std::printf("approx: certified D_2 %.6f, d_L %.6f < 0.1\n", *approx.certified.quant_dim,
              *approx.kantorovich_check);
  return 0;
}
