#pragma once

#include <vector>

#include "invpoly/invpoly.hpp"
#include "oracles.hpp"

namespace support {

inline invpoly::IntMatrix to_int(const oracle::Dense& d) {
  invpoly::IntMatrix m(d.size(), d.empty() ? 0 : d[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d[i][j];
  return m;
}

inline oracle::Dense to_dense(const invpoly::ExponentMatrix& m) {
  oracle::Dense d;
  for (const auto& r : m.data()) d.emplace_back(r.begin(), r.end());
  return d;
}

inline invpoly::ExponentMatrix poly(const char* text) { return invpoly::parse_polynomial(text).matrix; }

inline invpoly::ExponentMatrix mat(std::vector<std::vector<invpoly::Exponent>> rows) {
  return invpoly::ExponentMatrix(std::move(rows));
}

inline std::vector<invpoly::Integer> ints(std::initializer_list<long long> v) {
  return {v.begin(), v.end()};
}

}  // namespace support
