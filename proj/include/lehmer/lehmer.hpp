#pragma once

#include "lehmer/bigint.hpp"
#include "lehmer/bounds.hpp"
#include "lehmer/carmichael.hpp"
#include "lehmer/constants.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factorization.hpp"
#include "lehmer/group_spec.hpp"
#include "lehmer/lehmer_engine.hpp"
#include "lehmer/order_spectrum.hpp"
#include "lehmer/pi_bounds.hpp"
#include "lehmer/primality.hpp"
#include "lehmer/rational.hpp"
#include "lehmer/report.hpp"
#include "lehmer/scan.hpp"
#include "lehmer/sieve.hpp"
