#pragma once

#include "diffrec/dataset.hpp"
#include "diffrec/diffusion.hpp"
#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"
#include "diffrec/harness.hpp"
#include "diffrec/io.hpp"
#include "diffrec/metrics.hpp"
#include "diffrec/split.hpp"
