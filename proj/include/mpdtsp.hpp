#pragma once

#include "mpdtsp/bench.hpp"
#include "mpdtsp/cih.hpp"
#include "mpdtsp/error.hpp"
#include "mpdtsp/exact.hpp"
#include "mpdtsp/generator.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/instance_io.hpp"
#include "mpdtsp/multistart.hpp"
#include "mpdtsp/nnh.hpp"
#include "mpdtsp/parallel.hpp"
#include "mpdtsp/svg.hpp"
#include "mpdtsp/tour.hpp"
#include "mpdtsp/tsplib.hpp"
