#ifndef BITFACTOR_BITFACTOR_HPP
#define BITFACTOR_BITFACTOR_HPP

#include "bench.hpp"
#include "bits.hpp"
#include "candidates.hpp"
#include "column.hpp"
#include "oracle.hpp"
#include "search.hpp"
#include "sysexport.hpp"

#endif
