#pragma once

#include "codim1/classifier.hpp"
#include "codim1/error.hpp"
#include "codim1/fiber.hpp"
#include "codim1/lattice.hpp"
#include "codim1/poly.hpp"
