#pragma once

#include "cylq/basis.hpp"
#include "cylq/closed_forms.hpp"
#include "cylq/coherent.hpp"
#include "cylq/core.hpp"
#include "cylq/quadrature.hpp"
#include "cylq/quantizer.hpp"
#include "cylq/symbols.hpp"
