#pragma once

// Umbrella header: the whole toolkit in one include.

#include "hamlink/periodic_sequence.hpp"
#include "hamlink/norms.hpp"
#include "hamlink/matrix.hpp"
#include "hamlink/spectral.hpp"
#include "hamlink/potential.hpp"
#include "hamlink/hypotheses.hpp"
#include "hamlink/functional.hpp"
#include "hamlink/rng.hpp"
#include "hamlink/solver.hpp"
#include "hamlink/linking.hpp"
#include "hamlink/certificate.hpp"
#include "hamlink/io.hpp"
#include "hamlink/config.hpp"
#include "hamlink/results.hpp"
