#pragma once

// Umbrella header: the full operator-evolution toolkit.

#include "opevo/core/errors.hpp"
#include "opevo/core/grid.hpp"
#include "opevo/core/fft.hpp"
#include "opevo/core/window.hpp"
#include "opevo/core/wavefunction.hpp"

#include "opevo/algebra/rational_complex.hpp"
#include "opevo/algebra/operator_polynomial.hpp"
#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/algebra/series.hpp"
#include "opevo/algebra/classical.hpp"
#include "opevo/algebra/grid_apply.hpp"
#include "opevo/algebra/render.hpp"

#include "opevo/prop/dispersion.hpp"
#include "opevo/prop/kernels.hpp"
#include "opevo/prop/fourier.hpp"
#include "opevo/prop/polynomial.hpp"
#include "opevo/prop/series_evolution.hpp"

#include "opevo/oracle/split_step.hpp"
#include "opevo/oracle/spectral.hpp"
#include "opevo/oracle/residual.hpp"
#include "opevo/oracle/recursive_poly.hpp"

#include "opevo/cli/scenario.hpp"
