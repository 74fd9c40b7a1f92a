#pragma once

#include "gapa/bit_matrix.hpp"

namespace gapa {

// Boolean reachability closure; entry (u, v) says whether any path joins
// u and v. Symmetric with an all-ones diagonal.
using AccessibilityMatrix = BitMatrix;

// Exact: square (A+I) until the matrix stops changing.
// SixDegrees: stop after at most 3 squarings, which covers all paths of
// length <= 8; exact only when the diameter is at most 8.
enum class ClosurePolicy { Exact, SixDegrees };

struct ClosureStats {
    int multiplications = 0;
};

// Reachability closure: entry (u, v) is 1 iff a path of any length
// (including length 0 on the diagonal) joins u and v. Computed as the
// binarized fixpoint of squaring A + I, so every product stays boolean
// and n-independent of how large true path counts would grow.
// On a graph of diameter D the fixpoint needs ceil(log2 max(D,1)) + 1
// products: doublings until coverage, plus the one that detects no change.
AccessibilityMatrix accessibility_matrix(const BitMatrix& adjacency,
                                         ClosurePolicy policy = ClosurePolicy::Exact,
                                         ClosureStats* stats = nullptr);

}  // namespace gapa
