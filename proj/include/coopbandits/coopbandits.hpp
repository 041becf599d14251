#pragma once

#include "coopbandits/adversary.hpp"
#include "coopbandits/bounds.hpp"
#include "coopbandits/drift_checks.hpp"
#include "coopbandits/graph.hpp"
#include "coopbandits/graph_io.hpp"
#include "coopbandits/harness.hpp"
#include "coopbandits/independence.hpp"
#include "coopbandits/policy.hpp"
#include "coopbandits/report.hpp"
#include "coopbandits/rng.hpp"
#include "coopbandits/simulator.hpp"
#include "coopbandits/verify.hpp"
