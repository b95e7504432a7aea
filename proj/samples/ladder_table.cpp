// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

// Prints the coboson ladder quantities for a chosen spectrum: chi_N, the
// ratio chi_{N+1}/chi_N with its purity bounds, alpha_N, and both routes to
// the epsilon-state norm.

#include <cstdio>

#include "cobosim/coboson.hpp"

int main() {
  using namespace cobosim;
  const SchmidtSpectrum spectrum({0.4, 0.3, 0.2, 0.1});
  std::printf("spectrum: d=%d purity=%.6f\n", spectrum.d(), purity(spectrum));
  std::printf("%2s %12s %12s %10s %14s %16s\n", "N", "chi_N", "ratio",
              "alpha_N", "eps (formula)", "eps (construct)");
  for (int n = 1; n <= spectrum.d(); ++n) {
    const LadderReport r = chi_ratio_bounds(spectrum, n);
    std::printf("%2d %12.8f %12.8f %10.6f %14.10f %16.10f\n", r.n, r.chi_n,
                r.chi_ratio, r.alpha_n, r.eps_norm_formula,
                r.eps_norm_constructed);
  }
  return 0;
}
