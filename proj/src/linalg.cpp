#include "skelcoh/linalg.hpp"

namespace skelcoh {

std::vector<Integer> smith_invariants(IntMatrix a) {
  std::vector<Integer> diag;
  const Index rows = a.rows();
  const Index cols = a.cols();
  Index t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the trailing block
    Index pr = -1, pc = -1;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < abs(a(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    a.row(t).swap(a.row(pr));
    a.col(t).swap(a.col(pc));

    bool clean = false;
    while (!clean) {
      clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = a(i, t) / a(t, t);
        a.row(i) -= q * a.row(t);
        if (a(i, t) != 0) {
          a.row(t).swap(a.row(i));
          clean = false;
        }
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = a(t, j) / a(t, t);
        a.col(j) -= q * a.col(t);
        if (a(t, j) != 0) {
          a.col(t).swap(a.col(j));
          clean = false;
        }
      }
      if (!clean) continue;
      // the pivot must divide the whole trailing block
      for (Index i = t + 1; i < rows && clean; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            clean = false;
            break;
          }
    }
    diag.push_back(abs(a(t, t)));
    ++t;
  }
  return diag;
}

}  // namespace skelcoh
