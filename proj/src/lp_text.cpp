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

#include "gridshift/lp/lp_text.hpp"

#include <sstream>
#include <vector>

#include "gridshift/format.hpp"

namespace gridshift::lp {

namespace {

void write_rows(std::ostream& out, const char* kind, const LinearProgram<double>::SparseMatrix& m,
                const Eigen::VectorXd& rhs, const std::vector<Sense>* sense) {
  // Row-major copy so each constraint prints on one line in column order.
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(m);
  for (Eigen::Index i = 0; i < rhs.size(); ++i) {
    out << kind << ' ' << i;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, i); it; ++it) {
      out << ' ' << it.col() << ':' << format_double(it.value());
    }
    const char* op = sense == nullptr ? "=" : ((*sense)[i] == Sense::less_equal ? "<=" : ">=");
    out << ' ' << op << ' ' << format_double(rhs[i]) << '\n';
  }
}

}  // namespace

void write_lp_text(std::ostream& out, const LinearProgram<double>& lp) {
  lp.check();
  out << "obj";
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) out << ' ' << format_double(lp.objective[j]);
  out << '\n';
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
    out << "bound " << j << ' ' << format_double(lp.lower[j]) << ' ' << format_double(lp.upper[j])
        << '\n';
  }
  write_rows(out, "eq", lp.eq_matrix, lp.eq_rhs, nullptr);
  write_rows(out, "ineq", lp.ineq_matrix, lp.ineq_rhs, &lp.ineq_sense);
}

std::string to_lp_text(const LinearProgram<double>& lp) {
  std::ostringstream out;
  write_lp_text(out, lp);
  return out.str();
}

}  // namespace gridshift::lp
