// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "rcflab/grid.hpp"

namespace rcflab::transfer {

// Raised when a grid is too coarse for the requested measurement.
struct GridResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cumulative distribution function on [0,1] carried by a GridFunction:
// nondecreasing node values with F(0) = 0 and F(1) = 1.
class DistributionFunction {
  public:
    explicit DistributionFunction(GridFunction g);

    static DistributionFunction sample(int n, const std::function<double(double)>& cdf) {
        return DistributionFunction(GridFunction::sample(n, cdf));
    }

    const GridFunction& grid() const { return g_; }
    int size() const { return g_.size(); }

  private:
    GridFunction g_;
};

// One application of the Markov operator,
//   (Uf)(x) = sum_i P_i(x) f(1/(x+i)),
// truncated at i_max with the telescoped tail mass (x+1)/(x+i_max+1)
// attached to f(0). The tail makes constants exact.
GridFunction apply_U(const GridFunction& f, std::int64_t i_max);

// Integral of f against the Gauss density: (1/log2) * int_0^1 f(x)/(1+x) dx,
// exact on each linear piece. This is the limit of U^n f.
double u_infinity(const GridFunction& f);

// int_a^b f(x)/(1+x) dx without the 1/log2 normalization, exact per piece.
double integral_inv1p(const GridFunction& f, double a, double b);

// Applies U repeatedly; row n records sup over nodes of |U^n f0 - u_infinity(f0)|
// and the ratio to the previous row. Stops early below 1e-13.
ConvergenceTable iterate_U(const GridFunction& f0, int n_iters, std::int64_t i_max);

// One step of the distribution-function recursion
//   F'(x) = sum_i (F(1/i) - F(1/(x+i))),
// truncated at i_max; the i > i_max tail telescopes to
// F'(0) * log(1 + x/(i_max+1)) with F'(0) read off the first grid cell.
// The output is clamped back to a valid distribution function; the largest
// adjustment is written to *clamp_out when given, and a clamp beyond 1e-6
// raises GridResolutionError instead of being hidden.
DistributionFunction gk_step(const DistributionFunction& F, std::int64_t i_max,
                             double* clamp_out = nullptr);

// Iterates gk_step; row n records the sup-node distance to log(1+x)/log2.
ConvergenceTable gk_iterate(const DistributionFunction& F0, int n_iters, std::int64_t i_max);

// f(x) = (x+1) F'(x) and back: the conjugation between densities and the
// functions U acts on.
GridFunction density_to_f(const GridFunction& density);
GridFunction f_to_density(const GridFunction& f);

// Empirical geometric rate of U: iterates the zero-mean start f0(x) = x+1 -
// u_infinity(x+1) and returns the median of successive sup-error ratios over
// the geometric regime (errors inside [1e-10, 1e-2], before the grid floor).
// Fewer than 3 usable ratios raises GridResolutionError.
double spectral_gap_estimate(int grid_n, std::int64_t i_max, int n_iters);

} // namespace rcflab::transfer
