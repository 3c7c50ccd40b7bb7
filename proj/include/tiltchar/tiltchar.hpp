#pragma once

// Characters and composition multiplicities of simple modules for semisimple
// algebraic groups in characteristic p, computed from tilting-module
// characters through the twisted tensor basis L(la0) (x) nabla(la1)^(r).

#include "tiltchar/charring.hpp"
#include "tiltchar/common.hpp"
#include "tiltchar/driver.hpp"
#include "tiltchar/io.hpp"
#include "tiltchar/oracle.hpp"
#include "tiltchar/pipeline.hpp"
#include "tiltchar/rootsystem.hpp"
#include "tiltchar/tilting.hpp"
#include "tiltchar/weylchar.hpp"
