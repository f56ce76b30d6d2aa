#pragma once

#include "opqsl/autocorr.hpp"
#include "opqsl/diagnostics.hpp"
#include "opqsl/ensembles.hpp"
#include "opqsl/gapdist.hpp"
#include "opqsl/linops.hpp"
#include "opqsl/qfi.hpp"
#include "opqsl/qsl.hpp"
#include "opqsl/response.hpp"
#include "opqsl/states.hpp"
#include "opqsl/types.hpp"
