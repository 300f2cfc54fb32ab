// Copyright 2026 The gridshift Authors
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

#ifndef GRIDSHIFT_LP_LP_TEXT_HPP
#define GRIDSHIFT_LP_LP_TEXT_HPP

#include <ostream>
#include <string>

#include "gridshift/lp/linear_program.hpp"

namespace gridshift::lp {

/// Line-oriented dump for cross-checking with external solvers:
///
///   obj <c_0> <c_1> ...
///   bound <j> <lower> <upper>
///   eq <row> <j>:<a> ... = <rhs>
///   ineq <row> <j>:<a> ... <=|>= <rhs>
///
/// Numbers use the shortest round-trip form; infinite bounds print as inf.
void write_lp_text(std::ostream& out, const LinearProgram<double>& lp);
std::string to_lp_text(const LinearProgram<double>& lp);

}  // namespace gridshift::lp

#endif  // GRIDSHIFT_LP_LP_TEXT_HPP
