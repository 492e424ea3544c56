#pragma once

#include "bte/error.hpp"
#include "bte/ring.hpp"
#include "bte/material.hpp"
#include "bte/engine.hpp"
#include "bte/gates.hpp"
#include "bte/protocols/layout.hpp"
#include "bte/protocols/equality.hpp"
#include "bte/protocols/overflow.hpp"
#include "bte/protocols/comparison.hpp"
#include "bte/protocols/b2a.hpp"
#include "bte/protocols/max.hpp"
#include "bte/protocols/tlu.hpp"
#include "bte/protocols/baseline.hpp"
#include "bte/editdist.hpp"
#include "bte/dump.hpp"
