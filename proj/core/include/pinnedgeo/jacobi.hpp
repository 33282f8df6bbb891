#pragma once

#include <vector>

#include "pinnedgeo/geom.hpp"
#include "pinnedgeo/paths.hpp"

namespace pinnedgeo {

enum class JacobiMethod { ClosedForm, RungeKutta };

// Matrix Jacobi solutions on one geodesic segment with frame velocity xi:
// C(0) = I, C'(0) = 0, S(0) = 0, S'(0) = I, Y'' = A_xi Y.
struct CosSin {
  Mat C;
  Mat S;
};

CosSin solve_cs(const CurvatureModel& m, const Vec& xi, double s,
                JacobiMethod method = JacobiMethod::ClosedForm, int substeps = 100);

// Evaluator for one interval of length h; eval(s) accepts s in [0, h].
class IntervalCS {
 public:
  IntervalCS(const CurvatureModel& m, const Vec& xi, double h,
             JacobiMethod method = JacobiMethod::ClosedForm, int substeps = 100);
  CosSin eval(double s) const;
  double length() const { return h_; }

 private:
  CurvatureModel model_;
  Vec xi_;
  double h_;
  JacobiMethod method_;
  int substeps_;
};

// C_i, S_i, f_{P,i}(s_j) and K_P(s_j) along a (possibly truncated) path.
struct JacobiFamily {
  CurvatureModel model;
  Partition partition;
  int m = 0;              // number of intervals covered
  std::vector<Vec> xi;    // xi[i] = n Delta_i beta, index 1..m (xi[0] unused)
  std::vector<Mat> C, S;  // at right endpoints, index 1..m
  std::vector<Mat> f;     // f[i*(m+1)+j] = f_{P,i}(s_j)
  std::vector<Mat> K;     // K_P(s_j), j = 0..m

  int dim() const { return model.dim; }
  const Mat& fm(int i, int j) const { return f[static_cast<std::size_t>(i) * (m + 1) + j]; }
};

JacobiFamily build_family(const CurvatureModel& model, const BrokenGeodesic& path,
                          JacobiMethod method = JacobiMethod::ClosedForm, int substeps = 100);

// J(s_j), j = 0..m, for the broken Jacobi field with right slopes k_0..k_{m-1}.
std::vector<Vec> jacobi_from_slopes(const JacobiFamily& fam, const Slopes& k);
// Same field evaluated at an arbitrary s in [0, s_m].
Vec jacobi_at(const JacobiFamily& fam, const Slopes& k, double s);

// Recovers right slopes from knot values J(s_0..s_m) of a broken Jacobi field.
Slopes slopes_from_knots(const CurvatureModel& model, const Partition& p,
                         const std::vector<Vec>& increments, const std::vector<Vec>& J);

double normal_jacobian(const JacobiFamily& fam);
double rho_P(const JacobiFamily& fam);

// Endpoint Gram operator K_P(s_m) without materializing the f table.
Mat endpoint_gram(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& increments);

// sqrt(det(I + L F L^T)) for the body (first n-1 intervals) and the frame
// increment of the closing segment to x.
double volume_change_Vx(const CurvatureModel& model, const Partition& p,
                        const std::vector<Vec>& body_increments, const Vec& tip_increment);
double volume_change_Vx(const JacobiFamily& body, const Vec& tip_increment);

// Upper bound sum_k C(d,k) n^{k/2} e^{N k d^2(sigma(tau),x)/2} prod_j e^{k N d^2(knot_j, knot_{j+1})}.
double volume_change_bound(const CurvatureModel& model, const Partition& p,
                           const std::vector<Vec>& body_increments, double tip_distance);

struct DetIdentity {
  double lhs = 0.0;  // det(S^T S), S = [I; A]
  double rhs = 0.0;  // det(I + A A^T)
  double rel_diff = 0.0;
};
DetIdentity det_identity_check(const Eigen::MatrixXd& A);

}  // namespace pinnedgeo
