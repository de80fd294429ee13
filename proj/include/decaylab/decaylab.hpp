#pragma once

#include "decaylab/common.hpp"
#include "decaylab/grid.hpp"
#include "decaylab/field.hpp"
#include "decaylab/fft.hpp"
#include "decaylab/spectral_ops.hpp"
#include "decaylab/propagator.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/radial_profile.hpp"
#include "decaylab/decay.hpp"
#include "decaylab/nonlinear.hpp"
#include "decaylab/splitting.hpp"
#include "decaylab/solver.hpp"
#include "decaylab/picard.hpp"
#include "decaylab/fit.hpp"
#include "decaylab/io.hpp"
#include "decaylab/experiment.hpp"
