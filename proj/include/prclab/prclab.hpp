#pragma once

#include "prclab/bitstring.hpp"
#include "prclab/boolean_analysis.hpp"
#include "prclab/channel.hpp"
#include "prclab/compiler.hpp"
#include "prclab/errors.hpp"
#include "prclab/generators.hpp"
#include "prclab/info_theory.hpp"
#include "prclab/oracle.hpp"
#include "prclab/parallel.hpp"
#include "prclab/prc.hpp"
#include "prclab/prf_prc.hpp"
#include "prclab/rng.hpp"
#include "prclab/stats.hpp"
#include "prclab/toy_schemes.hpp"
