#ifndef SBRIDGE_HEATFLOW_HPP
#define SBRIDGE_HEATFLOW_HPP

#include "grid.hpp"

namespace sbridge {

struct HeatParams {
    double epsilon;  // diffusivity scale, > 0
    double t;        // time in [0,1]

    HeatParams(double eps, double time) : epsilon(eps), t(time) {
        if (!(epsilon > 0.0)) fail("NonPositiveTime", "epsilon must be positive");
        if (!(t >= 0.0 && t <= 1.0)) fail("InvalidTime", "t must lie in [0,1]");
    }
};

// (2*pi*s)^(-n/2) * exp(-|x-y|^2 / (2s)), s > 0.
double heat_kernel(std::array<double, Grid::kMaxDim> x, std::array<double, Grid::kMaxDim> y,
                   int dim, double s);
double log_heat_kernel_dist2(double dist2, int dim, double s);

struct EvolveInfo {
    bool boundary_warning = false;  // boundary values exceed 1e-10 of the max
    double boundary_ratio = 0.0;
};

// Core routine: given log(v) on the grid, returns log of the kernel smoothing
//   (K_s v)(x_i) = sum_j w_j v_j r_s(x_i, x_j)
// with trapezoidal weights w. s == 0 returns a copy. Runs entirely in shifted
// space so it is safe for inputs spanning hundreds of nats (g may grow
// exponentially); falls back to per-row log-sum-exp for extreme spans.
Field log_heat_apply(const Field& log_vals, double s, EvolveInfo* info = nullptr);

// Forward heat semigroup: bandwidth epsilon * t. Input must be >= -1e-12.
Field evolve_forward(const Field& f0, const HeatParams& p, EvolveInfo* info = nullptr);

// Backward heat semigroup: bandwidth epsilon * (1 - t); identity at t = 1.
Field evolve_backward(const Field& g1, const HeatParams& p, EvolveInfo* info = nullptr);

}  // namespace sbridge

#endif
