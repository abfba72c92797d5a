// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rcflab {

// Piecewise-linear function on [0,1] with n uniform cells (n+1 nodes).
class GridFunction {
  public:
    GridFunction() = default;
    GridFunction(int n, double fill = 0.0) : n_(n), values_(check_n(n) + 1, fill) {}
    GridFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        check_n(n);
        if (values_.size() != static_cast<std::size_t>(n) + 1)
            throw std::invalid_argument("GridFunction: need n+1 node values");
    }

    static GridFunction sample(int n, const std::function<double(double)>& f) {
        GridFunction g(n);
        for (int j = 0; j <= n; ++j) g.values_[j] = f(g.node_x(j));
        return g;
    }

    int size() const { return n_; }
    double node_x(int j) const { return static_cast<double>(j) / n_; }
    double& operator[](int j) { return values_[j]; }
    double operator[](int j) const { return values_[j]; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double x) const {
        const double pos = x * n_;
        int k = static_cast<int>(pos);
        if (k < 0) k = 0;
        if (k >= n_) k = n_ - 1;
        const double t = pos - k;
        return values_[k] + t * (values_[k + 1] - values_[k]);
    }

    double sup_distance(const GridFunction& other) const {
        if (other.n_ != n_)
            throw std::invalid_argument("GridFunction: grids differ");
        double d = 0.0;
        for (int j = 0; j <= n_; ++j) d = std::max(d, std::abs(values_[j] - other.values_[j]));
        return d;
    }

  private:
    static int check_n(int n) {
        if (n < 1) throw std::invalid_argument("GridFunction: n must be >= 1");
        return n;
    }

    int n_ = 0;
    std::vector<double> values_;
};

struct ConvergenceRow {
    int n;            // iteration index
    double sup_error; // sup-norm distance to the comparison target
    double ratio;     // sup_error[n] / sup_error[n-1]; NaN when undefined
};

using ConvergenceTable = std::vector<ConvergenceRow>;

} // namespace rcflab
