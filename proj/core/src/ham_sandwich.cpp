#include "pachsel/ham_sandwich.hpp"

#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {

OrientedHyperplane ham_sandwich_bisect(const std::vector<std::vector<const Point*>>& sets) {
  if (sets.empty()) throw PreconditionError("ham_sandwich_bisect: no sets");
  const std::size_t d = sets.size();
  for (const auto& s : sets) {
    if (s.empty()) throw PreconditionError("ham_sandwich_bisect: empty set");
    for (const Point* p : s)
      if (p->dim() != d) throw DimensionMismatch("ham_sandwich_bisect: need d sets in R^d");
  }
  std::vector<std::size_t> pos(d, 0);
  // side(q) of the spanned hyperplane equals orientation(x_1, ..., x_d, q),
  // which the filtered predicate answers quickly.
  std::vector<const Point*> tuple(d + 1);
  const std::span<const Point* const> span_pts(tuple.data(), d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) tuple[i] = sets[i][pos[i]];
    if (geometry::affine_dimension(span_pts) == static_cast<int>(d) - 1) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        const std::size_t half = sets[i].size() / 2;
        std::size_t pos_side = 0, neg_side = 0;
        for (const Point* q : sets[i]) {
          tuple[d] = q;
          const int s = geometry::orientation(std::span<const Point* const>(tuple));
          pos_side += s > 0;
          neg_side += s < 0;
        }
        ok = pos_side <= half && neg_side <= half;
      }
      if (ok) return geometry::hyperplane_through(span_pts);
    }
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++pos[i] < sets[i].size()) break;
      pos[i] = 0;
      if (i == 0)
        throw PreconditionError("ham_sandwich_bisect: no spanned cut found (sets not in general position?)");
    }
  }
}

}  // namespace pachsel::selection
