#pragma once

// Exponent matrices of polynomials, the polynomial text grammar, and the
// JSON form {"monomials": [[...], ...]}.

#include <cctype>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "invpoly/error.hpp"
#include "invpoly/intlin.hpp"

namespace invpoly {

using Exponent = std::int64_t;

/// k x n matrix of monomial exponents; entry (i, j) is the exponent of
/// variable j in monomial i. Entries are non-negative, no row or column is
/// all zero.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;

  explicit ExponentMatrix(std::vector<std::vector<Exponent>> rows) {
    if (rows.empty()) throw Error(Errc::InvalidMatrix, "polynomial has no monomials");
    cols_ = rows.front().size();
    if (cols_ == 0) throw Error(Errc::InvalidMatrix, "polynomial has no variables");
    for (const auto& r : rows)
      if (r.size() != cols_) throw Error(Errc::InvalidMatrix, "ragged exponent matrix");
    rows_ = std::move(rows);
    validate();
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows() == cols(); }

  Exponent operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  std::span<const Exponent> row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::vector<Exponent>>& data() const noexcept { return rows_; }

  IntMatrix to_int_matrix() const {
    IntMatrix m(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = rows_[i][j];
    return m;
  }

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

 private:
  void validate() const {
    std::vector<bool> col_seen(cols_, false);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows_[i][j] < 0)
          throw Error(Errc::InvalidMatrix, "negative exponent in monomial " + std::to_string(i + 1));
        if (rows_[i][j] > 0) {
          nonzero = true;
          col_seen[j] = true;
        }
      }
      if (!nonzero)
        throw Error(Errc::InvalidMatrix, "monomial " + std::to_string(i + 1) + " is constant");
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (!col_seen[j])
        throw Error(Errc::InvalidMatrix, "variable x" + std::to_string(j + 1) + " does not appear");
  }

  std::vector<std::vector<Exponent>> rows_;
  std::size_t cols_ = 0;
};

struct ParsedPolynomial {
  ExponentMatrix matrix;
  std::vector<std::string> warnings;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  ParsedPolynomial parse() {
    std::vector<std::vector<Exponent>> terms;
    terms.push_back(term());
    skip_ws();
    while (pos_ < text_.size()) {
      expect('+');
      terms.push_back(term());
      skip_ws();
    }
    std::size_t n = 0;
    for (const auto& t : terms) n = std::max(n, t.size());
    std::vector<bool> seen(n, false);
    for (auto& t : terms) {
      t.resize(n, 0);
      for (std::size_t j = 0; j < n; ++j)
        if (t[j] > 0) seen[j] = true;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j])
        throw ParseError(text_.size(), "variable indices must be contiguous from 1; x" +
                                           std::to_string(j + 1) + " is missing");
    return {ExponentMatrix(std::move(terms)), std::move(warnings_)};
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError(pos_, std::string("expected '") + c + "' but reached end of input");
    if (text_[pos_] != c)
      throw ParseError(pos_, std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
    ++pos_;
  }

  std::int64_t integer(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<std::int32_t>::max() - 9) / 10)
        throw ParseError(start, std::string(what) + " is too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError(start, std::string("expected ") + what);
    return v;
  }

  // coeff := [+-]? DIGITS ('.' DIGITS)?
  void coefficient() {
    skip_ws();
    const std::size_t start = pos_;
    if (text_[pos_] == '+' || text_[pos_] == '-') ++pos_;
    bool digits = false, nonzero = false;
    auto run = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits = true;
        nonzero = nonzero || text_[pos_] != '0';
        ++pos_;
      }
    };
    run();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      run();
    }
    if (!digits) throw ParseError(start, "malformed coefficient");
    const std::string_view lit = text_.substr(start, pos_ - start);
    if (!nonzero) throw ParseError(start, "term has coefficient 0", Errc::ZeroCoefficient);
    if (lit != "1" && lit != "+1" && lit != "1.0")
      warnings_.push_back("coefficient " + std::string(lit) + " at position " +
                          std::to_string(start) + " normalized to 1");
    expect('*');
  }

  void factor(std::vector<Exponent>& exps) {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] != 'x')
      throw ParseError(pos_, "expected a variable x<index>");
    ++pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(pos_, "expected a variable index after 'x'");
    const std::int64_t index = integer("variable index");
    if (index < 1) throw ParseError(start, "variable indices start at 1");
    std::int64_t e = 1;
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::size_t epos = pos_;
      e = integer("exponent");
      if (e < 1) throw ParseError(epos, "exponents must be at least 1");
    }
    const auto j = static_cast<std::size_t>(index - 1);
    if (exps.size() <= j) exps.resize(j + 1, 0);
    exps[j] += e;
  }

  std::vector<Exponent> term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "expected a term but reached end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '+')
      coefficient();
    std::vector<Exponent> exps;
    factor(exps);
    while (peek('*')) {
      ++pos_;
      factor(exps);
    }
    return exps;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace detail

/// Parses `term ('+' term)*`. Coefficients are accepted and dropped; any
/// coefficient other than 1 produces a warning.
inline ParsedPolynomial parse_polynomial(std::string_view text) {
  return detail::PolyParser(text).parse();
}

/// Renders monomials in row order with 1-based variable names. `names`, when
/// given, supplies the displayed index of each column.
inline std::string to_text(const ExponentMatrix& m, std::span<const std::size_t> names = {}) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += " + ";
    bool first = true;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Exponent e = m(i, j);
      if (e == 0) continue;
      if (!first) out += "*";
      first = false;
      out += "x" + std::to_string(names.empty() ? j + 1 : names[j] + 1);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

inline ExponentMatrix transpose(const ExponentMatrix& m) {
  if (!m.square()) throw Error(Errc::NonSquare, "transpose needs as many monomials as variables");
  std::vector<std::vector<Exponent>> t(m.cols(), std::vector<Exponent>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t[j][i] = m(i, j);
  return ExponentMatrix(std::move(t));
}

/// Block-diagonal join: the second polynomial's variables follow the first's.
inline ExponentMatrix thom_sebastiani(const ExponentMatrix& a, const ExponentMatrix& b) {
  const std::size_t n = a.cols() + b.cols();
  std::vector<std::vector<Exponent>> rows;
  rows.reserve(a.rows() + b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Exponent> r(n, 0);
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::vector<Exponent> r(n, 0);
    for (std::size_t j = 0; j < b.cols(); ++j) r[a.cols() + j] = b(i, j);
    rows.push_back(std::move(r));
  }
  return ExponentMatrix(std::move(rows));
}

inline void to_json(nlohmann::ordered_json& j, const ExponentMatrix& m) {
  j = nlohmann::ordered_json{{"monomials", m.data()}};
}

inline ExponentMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("monomials") || !j["monomials"].is_array())
    throw ParseError(0, "expected an object {\"monomials\": [[...], ...]}");
  std::vector<std::vector<Exponent>> rows;
  for (const auto& r : j["monomials"]) {
    if (!r.is_array()) throw ParseError(0, "each monomial must be an array of exponents");
    std::vector<Exponent> row;
    for (const auto& e : r) {
      if (!e.is_number_integer()) throw ParseError(0, "exponents must be integers");
      row.push_back(e.get<Exponent>());
    }
    rows.push_back(std::move(row));
  }
  return ExponentMatrix(std::move(rows));
}

/// Accepts either polynomial text or the JSON matrix form.
inline ParsedPolynomial parse_input(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.byte, "malformed JSON matrix");
    }
    return {matrix_from_json(j), {}};
  }
  return parse_polynomial(text);
}

}  // namespace invpoly
