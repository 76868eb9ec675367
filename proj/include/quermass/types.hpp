#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace quermass {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Small dense symmetric matrix. Symmetry is enforced by construction:
/// every write mirrors the entry across the diagonal, and `from` copies
/// the lower triangle onto the upper one.
class SymMatrix {
 public:
  explicit SymMatrix(int n) : m_(Mat::Zero(n, n)) {
    if (n < 1) throw std::domain_error("SymMatrix: size must be positive");
  }

  static SymMatrix from(const Mat& a) {
    if (a.rows() != a.cols()) throw std::domain_error("SymMatrix: matrix must be square");
    SymMatrix s(static_cast<int>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j <= i; ++j) {
        s.m_(i, j) = a(i, j);
        s.m_(j, i) = a(i, j);
      }
    return s;
  }

  static SymMatrix identity(int n) { return from(Mat::Identity(n, n)); }
  static SymMatrix diagonal(const Vec& d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < d.size(); ++i) s.m_(i, i) = d(i);
    return s;
  }

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Mat& mat() const { return m_; }

  Vec eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

 private:
  Mat m_;
};

}  // namespace quermass
