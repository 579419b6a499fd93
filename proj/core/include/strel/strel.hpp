#pragma once

#include "strel/formula.hpp"
#include "strel/interval.hpp"
#include "strel/io.hpp"
#include "strel/monitor.hpp"
#include "strel/offline.hpp"
#include "strel/parallel.hpp"
#include "strel/parser.hpp"
#include "strel/signal.hpp"
#include "strel/sliding_window.hpp"
#include "strel/space.hpp"
#include "strel/spatial_kernels.hpp"
