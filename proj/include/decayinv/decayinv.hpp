#pragma once

// Umbrella header.

#include "decayinv/errors.hpp"
#include "decayinv/numerics.hpp"
#include "decayinv/lattice_matrix.hpp"
#include "decayinv/weights.hpp"
#include "decayinv/compositions.hpp"
#include "decayinv/norms.hpp"
#include "decayinv/besov.hpp"
#include "decayinv/random_matrices.hpp"
#include "decayinv/bounds.hpp"
#include "decayinv/quotient_rules.hpp"
#include "decayinv/experiments.hpp"
#include "decayinv/io.hpp"
