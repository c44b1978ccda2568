#pragma once

#include "hypercf/attack.hpp"
#include "hypercf/bigint.hpp"
#include "hypercf/continued_fraction.hpp"
#include "hypercf/hyperbola.hpp"
#include "hypercf/parallel_search.hpp"
#include "hypercf/primality.hpp"
#include "hypercf/rational.hpp"
#include "hypercf/rsa.hpp"
#include "hypercf/verify.hpp"
