#include "pcv/representative.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pcv {

Element find_heavy_representative(const Distribution& dist, const Bucketing& bucketing,
                                  int bucket_index) {
  std::vector<Element> members;
  for (Element x = 0; x < dist.n(); ++x) {
    if (bucketing.bucket_of(dist[x]) == bucket_index) members.push_back(x);
  }
  if (members.empty()) {
    throw std::invalid_argument("find_heavy_representative: empty bucket");
  }
  std::sort(members.begin(), members.end(),
            [&](Element a, Element b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });

  const double widen = 1.0 + bucketing.tau() / 3.0;

  struct Run {
    std::size_t begin, end;  // [begin, end)
    double mass;
  };
  std::vector<Run> runs;
  std::size_t start = 0;
  double run_mass = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (dist[members[i]] > dist[members[start]] * widen) {
      runs.push_back({start, i, run_mass});
      start = i;
      run_mass = 0.0;
    }
    run_mass += dist[members[i]];
  }
  runs.push_back({start, members.size(), run_mass});

  const Run* best = &runs.front();
  for (const Run& r : runs) {
    if (r.mass > best->mass) best = &r;
  }

  // Weighted median of the heaviest run.
  double cum = 0.0;
  for (std::size_t i = best->begin; i < best->end; ++i) {
    cum += dist[members[i]];
    if (cum >= 0.5 * best->mass) return members[i];
  }
  return members[best->end - 1];
}

}  // namespace pcv
