#pragma once

#include "trustswarm/vec2.hpp"
#include "trustswarm/steering.hpp"
#include "trustswarm/network.hpp"
#include "trustswarm/engine.hpp"
#include "trustswarm/experiments.hpp"
#include "trustswarm/config.hpp"
#include "trustswarm/report.hpp"
