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

#ifndef SLOWSHOT_QUADRATURE_HPP_
#define SLOWSHOT_QUADRATURE_HPP_

#include <functional>

namespace slowshot {

/// Adaptive composite Simpson on [a, b] with Richardson correction.
/// Throws NumericError if the recursion depth is exhausted before the
/// local error estimate drops below tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

}  // namespace slowshot

#endif  // SLOWSHOT_QUADRATURE_HPP_
