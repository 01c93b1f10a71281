#pragma once

// Umbrella header: the full pipeline from raw elevation tiles to
// synthesized heightmaps and their evaluation.

#include "wfcterrain/adjacency.hpp"
#include "wfcterrain/ascii_grid.hpp"
#include "wfcterrain/error.hpp"
#include "wfcterrain/generate.hpp"
#include "wfcterrain/gradient.hpp"
#include "wfcterrain/grid.hpp"
#include "wfcterrain/heightmap.hpp"
#include "wfcterrain/hgt.hpp"
#include "wfcterrain/model.hpp"
#include "wfcterrain/pattern.hpp"
#include "wfcterrain/pgm.hpp"
#include "wfcterrain/reconstruct.hpp"
#include "wfcterrain/resample.hpp"
#include "wfcterrain/rng.hpp"
#include "wfcterrain/stats.hpp"
#include "wfcterrain/synthetic.hpp"
#include "wfcterrain/wave.hpp"
