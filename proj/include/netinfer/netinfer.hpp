#pragma once

#include "netinfer/clustering.hpp"
#include "netinfer/errors.hpp"
#include "netinfer/estimators.hpp"
#include "netinfer/graph.hpp"
#include "netinfer/harness/config.hpp"
#include "netinfer/harness/csv.hpp"
#include "netinfer/harness/runner.hpp"
#include "netinfer/harness/svg.hpp"
#include "netinfer/metrics.hpp"
#include "netinfer/moments.hpp"
#include "netinfer/rng.hpp"
#include "netinfer/sampling.hpp"
