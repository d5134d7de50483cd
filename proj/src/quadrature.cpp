// Copyright 2026 The slowshot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slowshot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slowshot/errors.hpp"

namespace slowshot {
namespace {

struct Panel {
  double a, m, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p,
              double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  // Halving tol can push it below what double arithmetic resolves on this
  // panel; accept at that roundoff floor instead of recursing forever.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       (std::fabs(left) + std::fabs(right));
  if (std::fabs(delta) <= std::max(15.0 * tol, floor) || lm <= p.a ||
      rm >= p.b) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw NumericError("adaptive_simpson: depth budget exhausted");
  }
  return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol,
                depth - 1) +
         refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol,
                depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  // Endpoints are sampled one ulp inside so an integrand that jumps exactly at
  // a or b contributes its one-sided limit.
  const double fa = f(std::nextafter(a, b)), fm = f(m),
               fb = f(std::nextafter(b, a));
  // One forced split so a coincidentally flat first estimate cannot stop early.
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  return refine(f, {a, lm, m, fa, flm, fm, simpson(a, m, fa, flm, fm)},
                0.5 * tol, max_depth) +
         refine(f, {m, rm, b, fm, frm, fb, simpson(m, b, fm, frm, fb)},
                0.5 * tol, max_depth);
}

}  // namespace slowshot
