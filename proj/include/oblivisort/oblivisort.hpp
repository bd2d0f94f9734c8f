#pragma once

// oblivisort: randomized data-oblivious sorting with full instrumentation.
// Round-robin random compare-exchange (spin-the-bottle) and
// temperature-scheduled local compare-exchange (annealing) sorts, plus the
// machinery to record their gate sequences, replay them as sorting networks,
// certify them over all 0-1 inputs, and benchmark their growth.

#include "oblivisort/algorithms.hpp"
#include "oblivisort/bench.hpp"
#include "oblivisort/compare_exchange.hpp"
#include "oblivisort/contract.hpp"
#include "oblivisort/element.hpp"
#include "oblivisort/fit.hpp"
#include "oblivisort/metrics.hpp"
#include "oblivisort/obliviousness.hpp"
#include "oblivisort/rng.hpp"
#include "oblivisort/schedule.hpp"
#include "oblivisort/trace.hpp"
