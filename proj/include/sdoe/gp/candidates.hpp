#pragma once

#include "sdoe/core/rng.hpp"
#include "sdoe/core/types.hpp"

namespace sdoe {

// Candidate pool for posterior-mean argmin searches (and for the acquisition
// argmax in the batch-BO baseline). Low dimensions get a full grid; higher
// dimensions fall back to uniform random points.
struct CandidateSpec {
  int grid_per_dim = 64;
  int random_count = 4096;
};

// Grid over the normalized domain for dim <= 2, `random_count` seeded uniform
// draws otherwise. Rows are points. Callers append the current training
// inputs before searching.
Mat make_base_candidates(const CandidateSpec& spec, int dim, Rng& rng);

// vstack helper: base candidates followed by `extra` rows.
Mat append_rows(const Mat& base, const Mat& extra);

}  // namespace sdoe
