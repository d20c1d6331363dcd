#include "trapid/regression.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "trapid/errors.hpp"

namespace trapid {

LinearFit least_squares(const std::vector<std::vector<double>>& columns,
                        std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto p = static_cast<Eigen::Index>(columns.size());
  if (p == 0 || n < p) throw DomainError("least_squares: fewer samples than unknowns");
  Eigen::MatrixXd A(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (static_cast<Eigen::Index>(columns[j].size()) != n) {
      throw DomainError("least_squares: column length mismatch");
    }
    for (Eigen::Index i = 0; i < n; ++i) A(i, j) = columns[j][i];
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) throw DomainError("least_squares: degenerate (collinear) design");
  const Eigen::VectorXd x = qr.solve(b);
  const Eigen::VectorXd r = b - A * x;

  LinearFit fit;
  fit.coef.assign(x.data(), x.data() + p);
  fit.dof = static_cast<std::size_t>(n - p);
  fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  fit.std_error.assign(static_cast<std::size_t>(p), 0.0);
  if (fit.dof > 0) {
    const double sigma2 = r.squaredNorm() / static_cast<double>(fit.dof);
    const Eigen::MatrixXd cov = (A.transpose() * A).inverse() * sigma2;
    for (Eigen::Index j = 0; j < p; ++j) {
      fit.std_error[static_cast<std::size_t>(j)] = std::sqrt(std::max(0.0, cov(j, j)));
    }
  }
  return fit;
}

LinearFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit_power_law: size mismatch");
  std::vector<double> ones(x.size(), 1.0), lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("fit_power_law: needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return least_squares({ones, lx}, ly);
}

double t_critical(std::size_t dof, double confidence) {
  if (dof == 0) return std::numeric_limits<double>::infinity();
  const boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, 0.5 * (1.0 - confidence)));
}

}  // namespace trapid
