#pragma once

#include "boxdim.hpp"
#include "clearance.hpp"
#include "core.hpp"
#include "corpus.hpp"
#include "cspace.hpp"
#include "io.hpp"
#include "motion.hpp"
#include "pathfind.hpp"
#include "scenario.hpp"
#include "setgen.hpp"
#include "shadow.hpp"
#include "tube.hpp"
