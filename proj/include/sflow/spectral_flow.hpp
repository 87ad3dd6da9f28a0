#ifndef SFLOW_SPECTRAL_FLOW_HPP
#define SFLOW_SPECTRAL_FLOW_HPP

#include <utility>
#include <vector>

#include "sflow/paths.hpp"

namespace sflow {

struct FlowOptions {
  int probe_points = 9;    // eigenvalue probes per segment before bisection
  double delta = 0.0;      // guard band; 0 means 1e-6 * spectral scale
  int max_depth = 40;      // bisection depth limit
};

/// Outcome of the partition algorithm: the integer flow plus the full
/// partition, per-segment mu values and endpoint counts.
struct SpectralFlowResult {
  long value = 0;
  std::vector<double> partition;                 // a = t_0 < ... < t_k = b
  std::vector<double> mu_per_segment;            // one mu per segment
  std::vector<std::pair<long, long>> counts;     // (dim Ran 1_{[0,mu]} at start, at end)
  double min_gap_seen = 0.0;                     // smallest accepted mu margin
  int subdivision_depth = 0;                     // deepest bisection level used
};

/// Spectral flow of a path of Hermitian matrices: partition the interval until
/// each segment admits a mu with all probed eigenvalues at distance >= delta
/// from {-mu, +mu} (and per-probe eigenvalue movement below that margin), then
/// sum dim Ran 1_{[0,mu]}(D_end) - dim Ran 1_{[0,mu]}(D_start) over segments.
SpectralFlowResult spectral_flow(const OperatorPath& p, FlowOptions opts = {});

/// Independent oracle: track ordered eigenvalues across `samples` uniform
/// steps and count net sign changes. Throws OracleResolutionError when the
/// ascending pairing between consecutive samples is ambiguous.
long spectral_flow_oracle(const OperatorPath& p, int samples);

/// ind(P, Q) = ind(QP : Ran P -> Ran Q). Computed from the kernel dimensions
/// of QP|Ran P and PQ|Ran Q, cross-checked against rank P - rank Q.
long projection_index(const Projection& p, const Projection& q);

/// Spectral flow of t -> t(2P-1) + (1-t)(2Q-1); equals projection_index(P, Q).
long projection_pair_flow(const Projection& p, const Projection& q);

struct RelativeIndexSides {
  long lhs = 0;  // spectral flow of (D_t)
  long rhs = 0;  // ind(1_{>=0}(D_b), 1_{>=0}(D_b+K_b)) - ind(1_{>=0}(D_a), 1_{>=0}(D_a+K_a))
};

/// Both sides of the relative-index identity; the caller asserts equality.
/// Preconditions: D_a, D_b invertible and D_t + K_t invertible at probed t
/// (spectral gap >= delta).
RelativeIndexSides relative_index_check(const OperatorPath& p_d, const OperatorPath& p_k,
                                        FlowOptions opts = {});

/// Alternating sum of the four boundary-edge flows; 0 for continuous families.
long rectangle_defect(const OperatorRectangle& r, FlowOptions opts = {});

}  // namespace sflow

#endif
