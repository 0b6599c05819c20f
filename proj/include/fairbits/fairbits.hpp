#pragma once

#include "fairbits/bit_source.hpp"
#include "fairbits/continuous.hpp"
#include "fairbits/discrete.hpp"
#include "fairbits/dyadic.hpp"
#include "fairbits/entropy_bounds.hpp"
#include "fairbits/errors.hpp"
#include "fairbits/extract.hpp"
#include "fairbits/real.hpp"
