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

#ifndef GDPAUDIT_ACCOUNTING_H_
#define GDPAUDIT_ACCOUNTING_H_

namespace gdpaudit::accounting {

// Conversions between approximate DP, zero-concentrated DP, and Gaussian DP,
// plus the theoretical FPR/FNR frontiers each notion induces. All functions
// are pure and safe to call from any number of threads.

// One operating point on a tradeoff curve: alpha is the false positive rate,
// beta the false negative rate.
struct TradeoffPoint {
  double alpha = 0.0;
  double beta = 0.0;
};

// A privacy budget together with everything the audit derives from it. The
// zCDP parameter is the conversion's boundary value for (epsilon, delta);
// mu_implied = sqrt(2*rho) is the audit target, and mu_direct comes from
// inverting the GDP<->DP identity without the zCDP detour. The zCDP path is
// conservative, so mu_implied <= mu_direct always holds.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  double mu_implied = 0.0;
  double mu_direct = 0.0;

  static PrivacyBudget FromDp(double epsilon, double delta);
};

// Smallest delta for which rho-zCDP implies (epsilon, delta)-DP:
//   min(1, inf over a>1 of exp((a-1)(a*rho - epsilon)) * (1-1/a)^a / (a-1)).
// The infimum is found in log space (the objective is strictly convex in a)
// by golden-section search over a in (1, 500], seeded from a coarse grid.
double ZcdpDelta(double rho, double epsilon);

// The zCDP parameter at which ZcdpDelta(rho, epsilon) meets delta, found by
// bisection to absolute tolerance 1e-9. This is the budget a mechanism that
// internally accounts in zCDP may spend for a target (epsilon, delta).
// delta = 1 returns 0 (every mechanism is (epsilon,1)-DP); delta = 0 is
// rejected (no finite rho reaches it under this conversion).
double RhoFromDp(double epsilon, double delta);

// mu-GDP parameter implied by rho-zCDP for (compositions of) Gaussian
// mechanisms: sqrt(2*rho).
double RhoToMu(double rho);

// Loose closed-form zCDP -> DP bound: epsilon = rho + 2*sqrt(rho*ln(1/delta)).
double ZcdpEpsilonSimple(double rho, double delta);

// delta(epsilon) of a mu-GDP mechanism:
//   Phi(-epsilon/mu + mu/2) - exp(epsilon) * Phi(-epsilon/mu - mu/2),
// with the mu = 0 limit defined as 0.
double GdpDelta(double mu, double epsilon);

// The unique mu with GdpDelta(mu, epsilon) = delta, by bisection on
// mu in [0, 100] to absolute tolerance 1e-9.
double MuFromDp(double epsilon, double delta);

// The audit's theoretical target: RhoToMu(RhoFromDp(epsilon, delta)).
double ImpliedMu(double epsilon, double delta);

// Gaussian tradeoff curve G_mu(alpha) = Phi(Phi^{-1}(1 - alpha) - mu), the
// optimal FNR at FPR alpha when testing N(0,1) against N(mu,1).
double GaussTradeoff(double mu, double alpha);

// (epsilon, delta)-DP hypothesis-testing frontier (two supporting lines):
//   beta = max(0, 1 - delta - e^epsilon * alpha, e^{-epsilon} * (1 - delta - alpha)).
double DpTradeoff(double epsilon, double delta, double alpha);

}  // namespace gdpaudit::accounting

#endif  // GDPAUDIT_ACCOUNTING_H_
