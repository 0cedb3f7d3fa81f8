#pragma once

// Everything except the command-line front end.

#include "thermocone/cone.hpp"
#include "thermocone/diagram.hpp"
#include "thermocone/error.hpp"
#include "thermocone/exchange.hpp"
#include "thermocone/numerics.hpp"
#include "thermocone/system.hpp"
#include "thermocone/thermal.hpp"
#include "thermocone/protocol/coarse_graining.hpp"
#include "thermocone/protocol/dilation.hpp"
#include "thermocone/protocol/distribution.hpp"
#include "thermocone/protocol/entropy_protocol.hpp"
#include "thermocone/protocol/sumset.hpp"
#include "thermocone/protocol/typicality.hpp"
