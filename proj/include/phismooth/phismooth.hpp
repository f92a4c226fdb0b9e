#pragma once

#include "asymptotics.hpp"
#include "counting.hpp"
#include "format.hpp"
#include "grid.hpp"
#include "harness.hpp"
#include "identities.hpp"
#include "primeset.hpp"
#include "rational.hpp"
#include "sieve.hpp"
#include "volterra.hpp"
