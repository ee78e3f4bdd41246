#include "polyflow/rng.hpp"

#include <algorithm>

#include "polyflow/error.hpp"

namespace polyflow {

std::vector<double> Rng::separated_roots(int n, double lo, double hi, double min_gap) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "need at least one root");
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<double> q(static_cast<size_t>(n));
    for (double& v : q) v = uniform(lo, hi);
    std::sort(q.begin(), q.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (q[i + 1] - q[i] < min_gap) { ok = false; break; }
    if (ok) return q;
  }
  raise(ErrorCode::NoConvergence, "could not sample separated roots in the given box");
}

}  // namespace polyflow
