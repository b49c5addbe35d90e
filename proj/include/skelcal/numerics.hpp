#pragma once

#include <span>
#include <vector>

namespace skelcal
{
/// Polynomial with ascending coefficients: c0 + c1*x + ... + cd*x^d.
class Polynomial
{
 public:
   /// The zero polynomial (single coefficient 0).
   Polynomial();
   /// Throws InvalidConfig when `coefficients` is empty or non-finite.
   explicit Polynomial(std::vector<double> coefficients);

   int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
   const std::vector<double>& coefficients() const noexcept { return coeffs_; }

   double operator()(double x) const noexcept;

   friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
   std::vector<double> coeffs_;
};

struct FitPoint
{
   double x = 0.0;
   double y = 0.0;
};

double arithmetic_mean(std::span<const double> values);

// (prod values)^(1/n), computed as exp(mean(log v)). Rejects v <= 0.
double geometric_mean(std::span<const double> values);

// Least-squares fit by column-pivoting Householder QR of the Vandermonde
// matrix. Needs more distinct x values than `degree`.
Polynomial polyfit_least_squares(std::span<const FitPoint> points, int degree);

// Horner evaluation.
double polyeval(const Polynomial& p, double x) noexcept;

// Sum of squared residuals of `p` over `points`.
double sum_squared_residuals(const Polynomial& p, std::span<const FitPoint> points) noexcept;

} // namespace skelcal
