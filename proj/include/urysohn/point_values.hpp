#pragma once

#include "urysohn/quadrature.hpp"

namespace urysohn {

/// Values attached to the coarse partition points t_0 = 0 < ... < t_n = 1.
template <typename Scalar>
struct PointValues {
  Vector<Scalar> t;
  Vector<Scalar> values;

  Eigen::Index size() const { return t.size(); }
};

template <typename Scalar>
Vector<Scalar> partition_points(int n) {
  Vector<Scalar> t(n + 1);
  for (int i = 0; i <= n; ++i) t(i) = Scalar(i) / n;
  return t;
}

template <typename Scalar, typename Function>
PointValues<Scalar> sample_partition(const Function& x, int n) {
  PointValues<Scalar> out{partition_points<Scalar>(n), Vector<Scalar>(n + 1)};
  for (int i = 0; i <= n; ++i) out.values(i) = x(out.t(i));
  return out;
}

}  // namespace urysohn
