#pragma once

#include "qdyn/error.hpp"
#include "qdyn/quiver.hpp"
#include "qdyn/classify.hpp"
#include "qdyn/linalg.hpp"
#include "qdyn/roots.hpp"
#include "qdyn/coxeter.hpp"
#include "qdyn/semisimple.hpp"
#include "qdyn/phases.hpp"
#include "qdyn/kronecker_pairs.hpp"
#include "qdyn/io.hpp"
