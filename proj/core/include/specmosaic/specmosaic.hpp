#pragma once

#include "specmosaic/dataset.hpp"
#include "specmosaic/demosaic.hpp"
#include "specmosaic/error.hpp"
#include "specmosaic/freqsel.hpp"
#include "specmosaic/geometry.hpp"
#include "specmosaic/io.hpp"
#include "specmosaic/metrics.hpp"
#include "specmosaic/parallel.hpp"
#include "specmosaic/sfa.hpp"
#include "specmosaic/types.hpp"
#include "specmosaic/version.hpp"
