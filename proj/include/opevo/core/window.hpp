#pragma once

#include <cmath>
#include <vector>

#include "opevo/core/grid.hpp"

namespace opevo {

// Smooth plateau window: ~1 for |q| < half_width, rolling off over a tanh
// edge of the given width. Used wherever a non-normalizable state (unit
// function, bare polynomial) needs a finite-grid surrogate.
inline std::vector<double> plateau_window(const Grid1D& grid, double half_width,
                                          double edge_width) {
    std::vector<double> w(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double q = grid.q_at(j);
        w[j] = 0.5 * (std::tanh((q + half_width) / edge_width) -
                      std::tanh((q - half_width) / edge_width));
    }
    return w;
}

} // namespace opevo
