#include "gapa/accessibility.hpp"

namespace gapa {

namespace {

// dst = src x src over the boolean semiring:
// dst.row(i) = OR of src.row(k) for every k with src[i][k] = 1.
void boolean_square(const BitMatrix& src, BitMatrix& dst) {
    const int n = src.size();
    for (int i = 0; i < n; ++i) {
        auto out = dst.row(i);
        for (auto& w : out) w = 0;
        src.for_each_in_row(i, [&](int k) { BitMatrix::or_into(out, src.row(k)); });
    }
}

}  // namespace

AccessibilityMatrix accessibility_matrix(const BitMatrix& adjacency, ClosurePolicy policy,
                                         ClosureStats* stats) {
    const int n = adjacency.size();
    BitMatrix current = adjacency;
    for (int i = 0; i < n; ++i) current.set(i, i);  // A + I

    BitMatrix next(n);
    int multiplications = 0;
    const int max_squarings = policy == ClosurePolicy::SixDegrees ? 3 : -1;
    while (max_squarings < 0 || multiplications < max_squarings) {
        boolean_square(current, next);
        ++multiplications;
        if (next == current) break;
        std::swap(current, next);
    }
    if (stats) stats->multiplications = multiplications;
    return current;
}

}  // namespace gapa
