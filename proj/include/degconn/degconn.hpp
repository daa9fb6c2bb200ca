#pragma once

#include "degconn/census.hpp"
#include "degconn/components.hpp"
#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"
#include "degconn/exploration.hpp"
#include "degconn/families.hpp"
#include "degconn/graph.hpp"
#include "degconn/harness.hpp"
#include "degconn/oracle.hpp"
#include "degconn/random.hpp"
#include "degconn/sampler.hpp"
