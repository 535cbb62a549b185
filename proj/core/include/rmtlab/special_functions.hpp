#pragma once

namespace rmtlab {

/// Scaled complementary error function exp(x^2) erfc(x), finite for large x.
double erfcx(double x);

/// Dawson's integral F(x) = exp(-x^2) * integral_0^x exp(t^2) dt.
double dawson(double x);

}  // namespace rmtlab
