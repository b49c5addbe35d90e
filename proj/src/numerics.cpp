#include "skelcal/numerics.hpp"

#include "skelcal/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace skelcal
{
Polynomial::Polynomial()
    : coeffs_{0.0}
{}

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients))
{
   if(coeffs_.empty())
      throw Error(ErrorCode::InvalidConfig, "polynomial needs at least one coefficient");
   for(const auto c : coeffs_)
      if(!std::isfinite(c))
         throw Error(ErrorCode::InvalidConfig, "polynomial coefficient is not finite");
}

double Polynomial::operator()(double x) const noexcept { return polyeval(*this, x); }

double polyeval(const Polynomial& p, double x) noexcept
{
   const auto& c = p.coefficients();
   double acc = 0.0;
   for(auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
   return acc;
}

double arithmetic_mean(std::span<const double> values)
{
   if(values.empty()) throw Error(ErrorCode::EmptyInput, "mean of an empty list");
   double sum = 0.0;
   for(const auto v : values) sum += v;
   return sum / double(values.size());
}

double geometric_mean(std::span<const double> values)
{
   if(values.empty()) throw Error(ErrorCode::EmptyInput, "geometric mean of an empty list");
   double log_sum = 0.0;
   for(const auto v : values) {
      if(!(v > 0.0))
         throw Error(ErrorCode::NonPositiveValue,
                     "geometric mean needs positive values, got " + std::to_string(v));
      log_sum += std::log(v);
   }
   return std::exp(log_sum / double(values.size()));
}

Polynomial polyfit_least_squares(std::span<const FitPoint> points, int degree)
{
   if(degree < 0) throw Error(ErrorCode::InvalidConfig, "negative fit degree");

   std::vector<double> xs;
   xs.reserve(points.size());
   for(const auto& p : points) {
      if(!std::isfinite(p.x) || !std::isfinite(p.y))
         throw Error(ErrorCode::InvalidConfig, "fit point is not finite");
      xs.push_back(p.x);
   }
   std::sort(xs.begin(), xs.end());
   const auto distinct = std::unique(xs.begin(), xs.end()) - xs.begin();
   if(distinct <= degree)
      throw Error(ErrorCode::InsufficientPoints,
                  std::to_string(distinct) + " distinct x values for degree "
                      + std::to_string(degree));

   const auto n_rows = Eigen::Index(points.size());
   const auto n_cols = Eigen::Index(degree + 1);
   Eigen::MatrixXd design(n_rows, n_cols);
   Eigen::VectorXd rhs(n_rows);
   for(Eigen::Index r = 0; r < n_rows; ++r) {
      double power = 1.0;
      for(Eigen::Index c = 0; c < n_cols; ++c) {
         design(r, c) = power;
         power *= points[std::size_t(r)].x;
      }
      rhs(r) = points[std::size_t(r)].y;
   }

   const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
   if(qr.rank() < n_cols)
      throw Error(ErrorCode::DegenerateSystem,
                  "design matrix rank " + std::to_string(qr.rank()) + " < "
                      + std::to_string(n_cols));

   const Eigen::VectorXd solution = qr.solve(rhs);
   std::vector<double> coeffs(solution.data(), solution.data() + solution.size());
   for(const auto c : coeffs)
      if(!std::isfinite(c)) throw Error(ErrorCode::DegenerateSystem, "fit diverged");
   return Polynomial(std::move(coeffs));
}

double sum_squared_residuals(const Polynomial& p, std::span<const FitPoint> points) noexcept
{
   double ssr = 0.0;
   for(const auto& pt : points) {
      const double r = polyeval(p, pt.x) - pt.y;
      ssr += r * r;
   }
   return ssr;
}

} // namespace skelcal
