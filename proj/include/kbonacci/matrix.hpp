#pragma once

// Dense square matrices over ExactInt.

#include <kbonacci/exact_int.hpp>

#include <json.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kbonacci {

class SquareMatrix {
 public:
  /// dim x dim zero matrix. Throws std::invalid_argument for dim == 0.
  explicit SquareMatrix(std::size_t dim);

  /// Row-major literal; rows must be non-empty and square.
  SquareMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static SquareMatrix zero(std::size_t dim) { return SquareMatrix(dim); }
  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix ones(std::size_t dim);
  static SquareMatrix from_rows(const std::vector<std::vector<ExactInt>>& rows);

  std::size_t dim() const noexcept { return dim_; }

  ExactInt& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const ExactInt& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<const ExactInt> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }
  std::span<const ExactInt> entries() const { return data_; }

  bool is_symmetric() const;

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator-=(const SquareMatrix& other);
  SquareMatrix& operator*=(const ExactInt& scalar);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<ExactInt> data_;
};

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a);
SquareMatrix operator*(const ExactInt& c, SquareMatrix a);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

/// a^e by binary exponentiation; a^0 = I.
SquareMatrix pow(const SquareMatrix& a, unsigned long long e);

// A k x k arrangement of equally sized square blocks, row-major.
struct BlockGrid {
  std::size_t k = 0;
  std::vector<SquareMatrix> blocks;

  const SquareMatrix& at(std::size_t row, std::size_t col) const { return blocks[row * k + col]; }
};

/// Flattens the grid. Throws std::invalid_argument for a malformed grid.
SquareMatrix compose(const BlockGrid& grid);

/// Splits into a k x k grid. Throws std::invalid_argument unless k divides dim.
BlockGrid decompose(const SquareMatrix& a, std::size_t k);

/// Kronecker product a (x) b.
SquareMatrix kronecker(const SquareMatrix& a, const SquareMatrix& b);

// Serialization: {"dim": n, "entries": [["1","0"],["0","1"]]}; entries are
// decimal strings so no precision is lost.
nlohmann::json to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const nlohmann::json& j);

/// Right-aligned columns, one row per line, trailing newline.
std::string to_plain(const SquareMatrix& m);

}  // namespace kbonacci
