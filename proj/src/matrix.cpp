#include <kbonacci/matrix.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kbonacci {

namespace {

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("matrix dimension must be >= 1");
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<long>> rows) : SquareMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw std::invalid_argument("matrix literal is not square");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

SquareMatrix SquareMatrix::ones(std::size_t dim) {
  SquareMatrix m(dim);
  std::fill(m.data_.begin(), m.data_.end(), ExactInt(1));
  return m;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<ExactInt>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw std::invalid_argument("matrix rows are not square");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.dim_));
  }
  return m;
}

bool SquareMatrix::is_symmetric() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& other) {
  require_same_dim(*this, other, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(const ExactInt& scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }

SquareMatrix operator-(SquareMatrix a) {
  a *= ExactInt(-1);
  return a;
}

SquareMatrix operator*(const ExactInt& c, SquareMatrix a) { return a *= c; }

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "mul");
  const std::size_t n = a.dim();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      const ExactInt& lhs = a(i, t);
      if (lhs == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        mpz_addmul(out(i, j).get_mpz_t(), lhs.get_mpz_t(), b(t, j).get_mpz_t());
      }
    }
  }
  return out;
}

SquareMatrix pow(const SquareMatrix& a, unsigned long long e) {
  SquareMatrix result = SquareMatrix::identity(a.dim());
  if (e == 0) return result;
  SquareMatrix base = a;
  bool first = true;
  while (true) {
    if (e & 1ULL) {
      if (first) {
        result = base;
        first = false;
      } else {
        result = result * base;
      }
    }
    e >>= 1;
    if (e == 0) break;
    base = base * base;
  }
  return result;
}

SquareMatrix compose(const BlockGrid& grid) {
  if (grid.k == 0 || grid.blocks.size() != grid.k * grid.k) {
    throw std::invalid_argument("block grid must hold k*k blocks");
  }
  const std::size_t m = grid.blocks.front().dim();
  for (const auto& b : grid.blocks) {
    if (b.dim() != m) throw std::invalid_argument("block grid has non-uniform block dimensions");
  }
  SquareMatrix out(grid.k * m);
  for (std::size_t br = 0; br < grid.k; ++br) {
    for (std::size_t bc = 0; bc < grid.k; ++bc) {
      const SquareMatrix& b = grid.at(br, bc);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) out(br * m + r, bc * m + c) = b(r, c);
      }
    }
  }
  return out;
}

BlockGrid decompose(const SquareMatrix& a, std::size_t k) {
  if (k == 0 || a.dim() % k != 0) {
    throw std::invalid_argument("cannot split a " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                                " matrix into a " + std::to_string(k) + "x" + std::to_string(k) + " grid");
  }
  const std::size_t m = a.dim() / k;
  BlockGrid grid{k, {}};
  grid.blocks.reserve(k * k);
  for (std::size_t br = 0; br < k; ++br) {
    for (std::size_t bc = 0; bc < k; ++bc) {
      SquareMatrix b(m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) b(r, c) = a(br * m + r, bc * m + c);
      }
      grid.blocks.push_back(std::move(b));
    }
  }
  return grid;
}

SquareMatrix kronecker(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t n = a.dim(), m = b.dim();
  SquareMatrix out(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) out(i * m + r, j * m + c) = a(i, j) * b(r, c);
      }
    }
  }
  return out;
}

nlohmann::json to_json(const SquareMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : m.row(r)) row.push_back(to_decimal(x));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("matrix JSON needs \"dim\" and \"entries\"");
  }
  const auto dim = j.at("dim").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != dim) throw std::invalid_argument("matrix JSON row count != dim");
  SquareMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = entries[r];
    if (!row.is_array() || row.size() != dim) throw std::invalid_argument("matrix JSON row length != dim");
    for (std::size_t c = 0; c < dim; ++c) {
      if (!row[c].is_string()) throw std::invalid_argument("matrix JSON entries must be decimal strings");
      m(r, c) = parse_decimal(row[c].get<std::string>());
    }
  }
  return m;
}

std::string to_plain(const SquareMatrix& m) {
  std::vector<std::string> cells;
  cells.reserve(m.dim() * m.dim());
  std::size_t width = 1;
  for (const auto& x : m.entries()) {
    cells.push_back(to_decimal(x));
    width = std::max(width, cells.back().size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const auto& cell = cells[r * m.dim() + c];
      if (c) out << ' ';
      out << std::string(width - cell.size(), ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace kbonacci
