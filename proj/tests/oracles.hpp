// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles for the unit and acceptance suites. Everything here
// goes through literal 2x2 matrices and Kronecker products only, so it
// shares no code path with the symplectic bit representation it checks.
#pragma once

#include <string>
#include <vector>

#include "qamsim/linalg.hpp"

namespace oracle {

using qamsim::CMatrix;
using qamsim::cplx;

inline CMatrix letter_matrix(char c) {
  CMatrix m(2, 2);
  switch (c) {
    case 'I':
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::runtime_error("oracle: bad letter");
  }
  return m;
}

// "+XZ", "-YY", "iX", "-iZ" -> sign * X (x) Z etc., by direct Kronecker product.
inline CMatrix dense_from_text(const std::string& text) {
  std::size_t pos = 0;
  cplx phase(1.0, 0.0);
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = -phase;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase *= cplx(0.0, 1.0);
    ++pos;
  }
  CMatrix acc = letter_matrix(text[pos]);
  for (std::size_t j = pos + 1; j < text.size(); ++j)
    acc = qamsim::kron(acc, letter_matrix(text[j]));
  return acc * phase;
}

// 2^{-n} sum_k Tr((I + s_k)/2 rho) over explicitly given subset products.
inline double pass_probability_povm(const CMatrix& rho,
                                    const std::vector<CMatrix>& subset_products) {
  const std::size_t dim = rho.rows();
  double acc = 0.0;
  for (const CMatrix& s : subset_products) {
    CMatrix proj = (CMatrix::identity(dim) + s) * cplx(0.5, 0.0);
    acc += (proj * rho).trace().real();
  }
  return acc / static_cast<double>(subset_products.size());
}

inline double max_entry_distance(const CMatrix& a, const CMatrix& b) {
  return (a - b).max_abs();
}

}  // namespace oracle
