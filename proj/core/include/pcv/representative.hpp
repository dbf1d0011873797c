#pragma once

#include "pcv/bucketing.hpp"
#include "pcv/distribution.hpp"

namespace pcv {

/// Picks an element of a non-empty bucket whose tau/3-neighborhood carries at
/// least a third of the bucket's mass. The bucket's elements are sorted by
/// mass and cut greedily into runs of multiplicative width at most (1+tau/3);
/// at most three runs fit in one multiplicative bucket, and every element of
/// the heaviest run has the whole run inside its tau/3-neighborhood. The
/// run's weighted median is returned.
///
/// The mass-third guarantee holds for bucket indices >= 1. Bucket 0 has no
/// multiplicative width bound, so there the result is only the best run of
/// the same construction.
Element find_heavy_representative(const Distribution& dist, const Bucketing& bucketing,
                                  int bucket_index);

}  // namespace pcv
