#pragma once

// Umbrella header: the full max-min / max-plus measure algebra.

#include "idem/cone.hpp"
#include "idem/convexity.hpp"
#include "idem/errors.hpp"
#include "idem/function.hpp"
#include "idem/functorial.hpp"
#include "idem/json_io.hpp"
#include "idem/label.hpp"
#include "idem/measure.hpp"
#include "idem/monad.hpp"
#include "idem/rational.hpp"
#include "idem/sampling.hpp"
#include "idem/scalar.hpp"
#include "idem/space.hpp"
