//
// Copyright 2026 The gdpaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "gdpaudit/special_functions.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gdpaudit::math {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Hastings-style rational approximation for the lower-tail normal quantile,
// |error| < 4.5e-4; used only as the Newton starting point.
double QuantileInitialGuess(double q) {
  const double t = std::sqrt(-2.0 * std::log(q));
  const double num = 2.515517 + t * (0.802853 + t * 0.010328);
  const double den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308));
  return -(t - num / den);
}

// Solves NormalCdf(x) = q for q in (0, 0.5]. The residual is formed as
// 0.5*erfc(-x/sqrt(2)) - q, which stays cancellation-free in the lower tail.
double LowerQuantile(double q) {
  double x = QuantileInitialGuess(q);
  for (int i = 0; i < 4; ++i) {
    const double err = 0.5 * std::erfc(-x / kSqrt2) - q;
    const double pdf = NormalPdf(x);
    if (pdf <= 0.0) break;
    const double step = err / pdf;
    // Halley correction: one extra term of the Taylor expansion of the CDF.
    x -= step / (1.0 + 0.5 * x * step);
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// Series expansion of P(a, x), valid for x < a + 1.
double GammaPSeries(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double GammaQContinuedFraction(double a, double x) {
  constexpr double kFpMin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double NormalCdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double NormalPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("NormalQuantile: p must lie in (0,1)");
  }
  // For p > 0.5, 1-p is exact (Sterbenz), so the reflection loses nothing.
  return p <= 0.5 ? LowerQuantile(p) : -LowerQuantile(1.0 - p);
}

double RegularizedGammaP(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("RegularizedGammaP: need a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return GammaPSeries(a, x);
  return 1.0 - GammaQContinuedFraction(a, x);
}

double RegularizedGammaQ(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("RegularizedGammaQ: need a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x >= a + 1.0) return GammaQContinuedFraction(a, x);
  return 1.0 - GammaPSeries(a, x);
}

double ChiSquareQuantile(double nu, double p) {
  if (!(nu > 0.0)) {
    throw std::invalid_argument("ChiSquareQuantile: need nu > 0");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("ChiSquareQuantile: p must lie in (0,1)");
  }
  const double a = 0.5 * nu;
  // Wilson-Hilferty starting point.
  const double z = NormalQuantile(p);
  const double g = 2.0 / (9.0 * nu);
  double x = nu * std::pow(1.0 - g + z * std::sqrt(g), 3.0);
  if (!(x > 0.0)) x = 0.5 * nu;

  // Bracket the root, then safeguarded Newton.
  double lo = 0.0;
  double hi = x;
  while (RegularizedGammaP(a, 0.5 * hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    const double f = RegularizedGammaP(a, 0.5 * x) - p;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    // Chi-square density at x.
    const double logpdf =
        -0.5 * x + (a - 1.0) * std::log(0.5 * x) - std::lgamma(a) -
        std::log(2.0);
    const double pdf = std::exp(logpdf);
    double next = pdf > 0.0 ? x - f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-8 * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace gdpaudit::math
