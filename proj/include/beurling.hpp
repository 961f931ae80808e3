#pragma once

#include "beurling/ball.hpp"
#include "beurling/config.hpp"
#include "beurling/error.hpp"
#include "beurling/generators.hpp"
#include "beurling/interpolation.hpp"
#include "beurling/json_io.hpp"
#include "beurling/lemma_audit.hpp"
#include "beurling/metric.hpp"
#include "beurling/sequence.hpp"
#include "beurling/system.hpp"
