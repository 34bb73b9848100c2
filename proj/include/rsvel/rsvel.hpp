#pragma once

#include "rsvel/composition_laws.hpp"
#include "rsvel/equivalence_engine.hpp"
#include "rsvel/errors.hpp"
#include "rsvel/property_suite.hpp"
#include "rsvel/velocity_core.hpp"
#include "rsvel/velocity_definitions.hpp"
