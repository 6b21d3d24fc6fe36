#ifndef FOGFED_FOGFED_HPP_
#define FOGFED_FOGFED_HPP_

#include "fogfed/domain.hpp"
#include "fogfed/engine/simulator.hpp"
#include "fogfed/errors.hpp"
#include "fogfed/federation.hpp"
#include "fogfed/geometry.hpp"
#include "fogfed/handover.hpp"
#include "fogfed/mobility.hpp"
#include "fogfed/queuing.hpp"
#include "fogfed/rng.hpp"
#include "fogfed/scenario/config.hpp"
#include "fogfed/scenario/csv.hpp"
#include "fogfed/scenario/experiments.hpp"
#include "fogfed/topology.hpp"

#endif  // FOGFED_FOGFED_HPP_
