/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "decompose.hpp"
#include "errors.hpp"
#include "gate.hpp"
#include "metrics.hpp"
#include "real_io.hpp"
#include "reports.hpp"
#include "rewrite.hpp"
#include "simulate.hpp"
#include "unitary.hpp"
