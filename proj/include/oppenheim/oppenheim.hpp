#pragma once

/**
 * @file oppenheim.hpp
 * @brief Everything: special functions, digit expansions, distribution
 *        families, weights, the stable limit law, experiments and configs.
 */

#include "oppenheim/config.hpp"
#include "oppenheim/distributions.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/expansions.hpp"
#include "oppenheim/experiments.hpp"
#include "oppenheim/limitlaw.hpp"
#include "oppenheim/quadrature.hpp"
#include "oppenheim/rng.hpp"
#include "oppenheim/sequence.hpp"
#include "oppenheim/specfun.hpp"
#include "oppenheim/stats.hpp"
#include "oppenheim/weights.hpp"
#include "oppenheim/verify.hpp"
