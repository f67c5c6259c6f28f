#pragma once

#include "cvcap/capacity.hpp"
#include "cvcap/cli.hpp"
#include "cvcap/errors.hpp"
#include "cvcap/gaussian.hpp"
#include "cvcap/io.hpp"
#include "cvcap/multiplex.hpp"
#include "cvcap/optimizer.hpp"
#include "cvcap/teleport.hpp"
#include "cvcap/verify.hpp"
