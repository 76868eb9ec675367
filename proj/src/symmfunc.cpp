#include "quermass/symmfunc.hpp"

#include <array>

namespace quermass {

namespace {

constexpr int kMaxDim = 8;

double minor_det(const Mat& m, const std::array<int, kMaxDim>& idx, int k) {
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return m(idx[0], idx[0]);
    case 2:
      return m(idx[0], idx[0]) * m(idx[1], idx[1]) - m(idx[0], idx[1]) * m(idx[1], idx[0]);
    case 3: {
      const double a = m(idx[0], idx[0]), b = m(idx[0], idx[1]), c = m(idx[0], idx[2]);
      const double d = m(idx[1], idx[0]), e = m(idx[1], idx[1]), f = m(idx[1], idx[2]);
      const double g = m(idx[2], idx[0]), h = m(idx[2], idx[1]), i = m(idx[2], idx[2]);
      return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    }
    default: {
      Mat sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
      return sub.determinant();
    }
  }
}

}  // namespace

double elem_sym(const SymMatrix& a, int k) {
  const int n = a.size();
  if (k < 0 || k > n) throw std::domain_error("elem_sym: k outside 0..N");
  if (n > kMaxDim) throw std::domain_error("elem_sym: N > 8 unsupported");
  if (k == 0) return 1.0;

  // Sum of principal k x k minors, enumerating k-subsets in lexicographic order.
  const Mat& m = a.mat();
  std::array<int, kMaxDim> idx{};
  for (int i = 0; i < k; ++i) idx[i] = i;
  double sum = 0.0;
  while (true) {
    sum += minor_det(m, idx, k);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return sum;
}

double elem_sym(const Vec& eigenvalues, int k) {
  const int n = static_cast<int>(eigenvalues.size());
  if (k < 0 || k > n) throw std::domain_error("elem_sym: k outside 0..N");
  // e_k via the stable one-pass recurrence e_j <- e_j + lambda * e_{j-1}.
  std::vector<double> e(static_cast<size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += eigenvalues(i) * e[j - 1];
  return e[static_cast<size_t>(k)];
}

SymMatrix cofactor_matrix(const SymMatrix& a, int k) {
  const int n = a.size();
  if (k < 1 || k > n) throw std::domain_error("cofactor_matrix: k outside 1..N");
  Mat t = Mat::Identity(n, n);
  for (int m = 1; m < k; ++m) t = elem_sym(a, m) * Mat::Identity(n, n) - t * a.mat();
  // Round-off can leave t asymmetric at machine level; mirror through SymMatrix.
  return SymMatrix::from(0.5 * (t + t.transpose()));
}

}  // namespace quermass
