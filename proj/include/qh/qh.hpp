#pragma once

// Umbrella header: the whole library.

#include "qh/algebra.hpp"
#include "qh/block.hpp"
#include "qh/heredity.hpp"
#include "qh/json_io.hpp"
#include "qh/matrix.hpp"
#include "qh/module.hpp"
#include "qh/morita.hpp"
#include "qh/quiver.hpp"
#include "qh/scalar.hpp"
#include "qh/subspace.hpp"
#include "qh/util.hpp"
