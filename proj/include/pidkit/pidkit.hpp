#pragma once

#include "pidkit/error.hpp"
#include "pidkit/csv.hpp"
#include "pidkit/ingest.hpp"
#include "pidkit/spline.hpp"
#include "pidkit/curves.hpp"
#include "pidkit/scaling.hpp"
#include "pidkit/inequality.hpp"
#include "pidkit/model.hpp"
#include "pidkit/matcher.hpp"
#include "pidkit/serialize.hpp"
#include "pidkit/cli.hpp"
