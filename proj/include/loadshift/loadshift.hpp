#pragma once

#include "loadshift/core.hpp"
#include "loadshift/experiments.hpp"
#include "loadshift/io.hpp"
#include "loadshift/metrics.hpp"
#include "loadshift/oracle.hpp"
#include "loadshift/scheduling.hpp"
