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

#ifndef GDPAUDIT_SPECIAL_FUNCTIONS_H_
#define GDPAUDIT_SPECIAL_FUNCTIONS_H_

namespace gdpaudit::math {

// CDF of the standard normal distribution, evaluated via erfc so that both
// tails keep full relative precision (absolute error well below 1e-15).
double NormalCdf(double x);

// Density of the standard normal distribution.
double NormalPdf(double x);

// Quantile (inverse CDF) of the standard normal distribution for p in (0,1).
// A rational initial guess is polished with Newton steps against the
// erfc-based CDF; absolute error is below 1e-13 across the open interval.
double NormalQuantile(double p);

// Regularized lower incomplete gamma function P(a, x) for a > 0, x >= 0,
// computed by series expansion (x < a+1) or continued fraction (x >= a+1).
double RegularizedGammaP(double a, double x);

// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).
double RegularizedGammaQ(double a, double x);

// Quantile of the chi-square distribution with nu > 0 degrees of freedom at
// probability p in (0,1): the x with P(nu/2, x/2) = p, solved by a
// Wilson-Hilferty start and safeguarded Newton iteration to 1e-8.
double ChiSquareQuantile(double nu, double p);

}  // namespace gdpaudit::math

#endif  // GDPAUDIT_SPECIAL_FUNCTIONS_H_
