#pragma once

#include "analysis.hpp"
#include "bitset.hpp"
#include "certify.hpp"
#include "document.hpp"
#include "dpolygon.hpp"
#include "e33.hpp"
#include "efactor.hpp"
#include "emn.hpp"
#include "flags.hpp"
#include "gallery.hpp"
#include "geometry.hpp"
#include "iso.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "scalar.hpp"
#include "structure.hpp"
