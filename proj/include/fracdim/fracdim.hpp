#ifndef FRACDIM_FRACDIM_HPP
#define FRACDIM_FRACDIM_HPP

#include "fracdim/construct.hpp"
#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/ifs.hpp"
#include "fracdim/io.hpp"
#include "fracdim/lowerdim.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/quantization.hpp"
#include "fracdim/symbolic.hpp"
#include "fracdim/transport.hpp"
#include "fracdim/verify.hpp"

#endif  // FRACDIM_FRACDIM_HPP
