#pragma once

// Umbrella header for the qctree library.

#include "qctree/core.hpp"
#include "qctree/dimension.hpp"
#include "qctree/gluing.hpp"
#include "qctree/graphs.hpp"
#include "qctree/io.hpp"
#include "qctree/metric.hpp"
#include "qctree/planar.hpp"
#include "qctree/structure.hpp"
