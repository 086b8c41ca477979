#pragma once

#include "probmetric/error.hpp"
#include "probmetric/flow.hpp"
#include "probmetric/formula_metric.hpp"
#include "probmetric/io.hpp"
#include "probmetric/logic.hpp"
#include "probmetric/metrics.hpp"
#include "probmetric/mimicking.hpp"
#include "probmetric/pts.hpp"
#include "probmetric/random.hpp"
#include "probmetric/rational.hpp"
#include "probmetric/relations.hpp"
#include "probmetric/transport.hpp"
#include "probmetric/verify.hpp"
