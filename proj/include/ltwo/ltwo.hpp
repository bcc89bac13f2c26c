#ifndef LTWO_LTWO_HPP
#define LTWO_LTWO_HPP

#include "ltwo/error.hpp"
#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"
#include "ltwo/hilb.hpp"
#include "ltwo/functor.hpp"
#include "ltwo/factorize.hpp"
#include "ltwo/inversecat.hpp"
#include "ltwo/io.hpp"
#include "ltwo/random.hpp"
#include "ltwo/lawlab.hpp"

#endif // LTWO_LTWO_HPP
