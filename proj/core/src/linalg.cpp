#include <cmath>
#include <sstream>

#include "pinnedgeo/types.hpp"

namespace pinnedgeo {

Mat solve_checked(const Mat& A, const Mat& B, double max_cond) {
  if (!A.allFinite() || !B.allFinite()) throw NumericalError("solve: non-finite input");
  Eigen::PartialPivLU<Mat> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || 1.0 / rc > max_cond) {
    std::ostringstream os;
    os << "solve: matrix ill-conditioned (rcond " << rc << ")";
    throw NumericalError(os.str());
  }
  return lu.solve(B);
}

Mat inverse_checked(const Mat& A, double max_cond) {
  return solve_checked(A, Mat::Identity(A.rows(), A.cols()), max_cond);
}

double op_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

}  // namespace pinnedgeo
