#pragma once

// Umbrella header for the reliability scoring library.

#include "scg/error.hpp"
#include "scg/golden.hpp"
#include "scg/ingest.hpp"
#include "scg/model.hpp"
#include "scg/report.hpp"
#include "scg/scoring.hpp"
#include "scg/sensitivity.hpp"
