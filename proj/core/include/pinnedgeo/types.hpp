#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pinnedgeo {

inline constexpr int kMaxDim = 7;
inline constexpr int kMaxAmbient = kMaxDim + 1;

// Small fixed-capacity vectors/matrices: no heap traffic in the inner loops.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAmbient, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxAmbient, kMaxAmbient>;

// Raised when a computation produces non-finite values or an
// ill-conditioned solve that the theory says cannot happen.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves A X = B by partial-pivot LU, refusing when the reciprocal
// condition estimate says cond(A) > max_cond.
Mat solve_checked(const Mat& A, const Mat& B, double max_cond = 1e12);
Mat inverse_checked(const Mat& A, double max_cond = 1e12);

// Operator 2-norm of a small matrix.
double op_norm(const Mat& A);

}  // namespace pinnedgeo
