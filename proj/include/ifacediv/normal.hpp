#pragma once

namespace ifacediv {

/// Standard normal density.
double normal_pdf(double z);

/// Standard normal CDF, accurate to better than 1e-14 absolute.
double normal_cdf(double z);

/// Inverse of normal_cdf on (0,1): |normal_cdf(result) - p| <= 1e-10.
/// Throws DomainError for p outside (0,1).
double inverse_normal_cdf(double p);

}  // namespace ifacediv
