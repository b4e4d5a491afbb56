#pragma once

#include "okun/error.hpp"
#include "okun/estimator.hpp"
#include "okun/format.hpp"
#include "okun/ingest.hpp"
#include "okun/manifest.hpp"
#include "okun/model.hpp"
#include "okun/projector.hpp"
#include "okun/report.hpp"
#include "okun/series.hpp"
