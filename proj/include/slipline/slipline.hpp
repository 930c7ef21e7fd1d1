#pragma once

#include "errors.hpp"
#include "numerics.hpp"
#include "core.hpp"
#include "stress_field.hpp"
#include "stress_catalog.hpp"
#include "characteristics.hpp"
#include "velocity.hpp"
#include "symmetry.hpp"
#include "residuals.hpp"
#include "registry.hpp"
#include "output.hpp"
#include "verification.hpp"
