#pragma once

#include "qpricing/bench.hpp"
#include "qpricing/bruteforce.hpp"
#include "qpricing/core.hpp"
#include "qpricing/error.hpp"
#include "qpricing/flow.hpp"
#include "qpricing/gen.hpp"
#include "qpricing/json_io.hpp"
#include "qpricing/lp.hpp"
#include "qpricing/oracle.hpp"
#include "qpricing/revenue.hpp"
#include "qpricing/schemes.hpp"
#include "qpricing/verify.hpp"
