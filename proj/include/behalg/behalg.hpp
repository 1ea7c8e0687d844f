#pragma once

#include <behalg/common.hpp>
#include <behalg/numkernel.hpp>
#include <behalg/poly.hpp>
#include <behalg/structmat.hpp>
#include <behalg/behavior.hpp>
#include <behalg/behops.hpp>
