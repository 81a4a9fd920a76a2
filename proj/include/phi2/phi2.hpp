#pragma once

// Umbrella header.

#include "phi2/coeff_ring.hpp"
#include "phi2/hecke_ring.hpp"
#include "phi2/koszul.hpp"
#include "phi2/linalg_local.hpp"
#include "phi2/report.hpp"
#include "phi2/theorem.hpp"
