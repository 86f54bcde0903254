#pragma once

#include "stacksp/errors.hpp"
#include "stacksp/scalar.hpp"
#include "stacksp/instance.hpp"
#include "stacksp/instance_io.hpp"
#include "stacksp/buyer.hpp"
#include "stacksp/random.hpp"
#include "stacksp/raz.hpp"
#include "stacksp/far_sequence.hpp"
#include "stacksp/reduction.hpp"
#include "stacksp/simplex.hpp"
#include "stacksp/solvers.hpp"
#include "stacksp/decomposition.hpp"
#include "stacksp/pipeline.hpp"
