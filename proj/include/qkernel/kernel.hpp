#pragma once

#include <optional>
#include <string>

#include "qkernel/digraph.hpp"

namespace qk {

/// An independent set together with its reach radius and the BFS distances
/// that witness every vertex lies within that radius.
struct KernelCertificate {
  VertexSet members;
  int radius = 0;
  DistanceTable witness;
};

/// Why a set failed to be a q-kernel.
struct KernelViolation {
  enum class Kind { Dependent, OutOfReach };

  Kind kind;
  /// Set for Dependent.
  Arc arc{-1, -1};
  /// Set for OutOfReach: the first vertex beyond the radius and its distance
  /// (DistanceTable::kInfinite when unreachable).
  Vertex vertex = -1;
  int distance = 0;

  std::string describe() const;
};

class KernelCheck {
 public:
  explicit KernelCheck(KernelCertificate c) : certificate_(std::move(c)) {}
  explicit KernelCheck(KernelViolation v) : violation_(v) {}

  bool ok() const noexcept { return certificate_.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
  const KernelCertificate& certificate() const { return certificate_.value(); }
  const KernelViolation& violation() const { return violation_.value(); }

 private:
  std::optional<KernelCertificate> certificate_;
  std::optional<KernelViolation> violation_;
};

/// Checks that Q is independent and every vertex is within distance q of Q.
/// The empty set passes only on the empty digraph.
KernelCheck is_q_kernel(const Digraph& d, const VertexSet& q_set, int q);

/// Throws VerificationError unless `q_set` is a q-kernel; `what` prefixes the message.
KernelCertificate require_q_kernel(const Digraph& d, const VertexSet& q_set, int q, const std::string& what);

/// The unique kernel of an acyclic digraph. Throws PreconditionError on a cycle.
VertexSet kernel_of_acyclic(const Digraph& d);

/// A quasikernel built by the avoid-the-pivot recursion: take the lowest
/// remaining vertex x, solve D - N⁺[x], and add x unless the sub-solution
/// already hits an in-neighbour of x.
VertexSet quasikernel(const Digraph& d);

/// Quasikernel of D[alive], returned in the universe of D. Same recursion as
/// `quasikernel`, unverified; callers verify what they build from it.
VertexSet quasikernel_in(const Digraph& d, const VertexSet& alive);

/// A quasikernel Q with Q ∩ N⁺(x) = ∅ and Q ∩ N⁻[x] ≠ ∅.
VertexSet quasikernel_avoiding(const Digraph& d, Vertex x);

/// A quasikernel Q with Q ∩ N⁺(X) = ∅ for an independent X.
VertexSet quasikernel_avoiding_set(const Digraph& d, const VertexSet& x_set);

}  // namespace qk
