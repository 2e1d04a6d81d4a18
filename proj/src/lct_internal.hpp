#pragma once

#include "canonical_tf/param_matrix.hpp"
#include "canonical_tf/signal.hpp"

namespace canonical_tf::detail {

// lct_fast without the sampling guard. Callers that assemble many transforms
// into one map check resolution on the assembled result instead.
SampledSignal lct_fast_unchecked(const ParamMatrix& A, const SampledSignal& f);

}  // namespace canonical_tf::detail
