#include "kmlab/operator_checks.hpp"

#include <cmath>

#include "kmlab/errors.hpp"
#include "kmlab/km_step.hpp"

namespace kmlab {

Certificate check_relaxed_inequalities(const Point& x, const AveragedMap& T,
                                       double lambda, double eta, const Point& e,
                                       const Point& xbar) {
  require_same_dim(x, xbar, "check_relaxed_inequalities");
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw hypothesis_error("check_relaxed_inequalities: lambda must be >= 0");
  }
  if ((T(xbar) - xbar).norm() > 1e-10) {
    throw precondition_error("check_relaxed_inequalities: xbar is not a fixed point of " + T.name);
  }

  const double alpha = T.alpha;
  const Point tx = T(x);
  const Point y = relaxed_from_image(x, tx, lambda);
  const Point z = y + eta * e;

  const double dx2 = (x - xbar).squaredNorm();
  const double dy = (y - xbar).norm();
  const double dz = (z - xbar).norm();
  const double res = (x - tx).norm();
  const double err = eta * e.norm();
  const double descent = lambda * (1.0 / alpha - lambda) * res * res;

  Certificate cert;
  cert.name = "relaxed-step-inequalities";
  cert.citation =
      "||y-xbar||^2 <= ||x-xbar||^2 - lambda(1/alpha-lambda)||x-Tx||^2; "
      "||z-xbar||^2 <= same + eta||e||(2||y-xbar||+eta||e||); "
      "for lambda <= 1/alpha: ||y-xbar|| <= ||x-xbar||, "
      "||z-xbar|| <= ||y-xbar||+eta||e||, ||Ty-y|| <= ||Tx-x||";
  cert.tolerance = 1e-10;

  cert.add_slack(dx2 - descent - dy * dy, 0);                       // (a)
  cert.add_slack(dx2 - descent + err * (2.0 * dy + err) - dz * dz, 1);  // (b)

  const bool c_applicable = lambda <= 1.0 / alpha;
  cert.metrics["c_applicable"] = c_applicable ? 1.0 : 0.0;
  if (c_applicable) {
    cert.add_slack(std::sqrt(dx2) - dy, 2);
    cert.add_slack(dy + err - dz, 3);
    const Point ty = T(y);
    cert.add_slack(res - (ty - y).norm(), 4);
  }

  cert.finalize();
  return cert;
}

}  // namespace kmlab
