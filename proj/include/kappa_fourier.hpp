#pragma once

// Numerical library only; report.hpp additionally needs json.hpp.

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/genpoly.hpp"
#include "kappa_fourier/kernels.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/specfun.hpp"
#include "kappa_fourier/suites.hpp"
#include "kappa_fourier/transforms.hpp"
