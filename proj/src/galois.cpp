#include "stcode/galois.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <utility>

namespace stcode::gf {

FieldSpec FieldSpec::standard(int w) {
  switch (w) {
    case 8:
      return {8, 0x11D};
    case 16:
      return {16, 0x1100B};
    default:
      throw ParameterError("unsupported field width " + std::to_string(w) + " (expected 8 or 16)");
  }
}

std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int w) {
  std::uint32_t acc = 0;
  const std::uint32_t top = std::uint32_t{1} << w;
  while (b != 0) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus;
  }
  return acc;
}

namespace {

int degree(std::uint64_t p) {
  int d = -1;
  while (p != 0) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t poly, int w) {
  if (degree(poly) != w) return false;
  for (std::uint64_t d = 2; degree(d) <= w / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

Field::Field(FieldSpec spec) : spec_(spec) {
  if (spec.w != 8 && spec.w != 16) {
    throw ParameterError("unsupported field width " + std::to_string(spec.w) + " (expected 8 or 16)");
  }
  if (!is_irreducible(spec.modulus, spec.w)) {
    throw ParameterError("modulus is not irreducible of degree w");
  }
  const std::uint32_t q = order();
  log_.assign(q, 0);
  exp_.assign(2 * (q - 1), 0);

  // Smallest element whose powers cover the whole multiplicative group.
  std::vector<bool> seen(q);
  for (std::uint32_t g = 2; g < q; ++g) {
    std::fill(seen.begin(), seen.end(), false);
    std::uint32_t x = 1;
    std::uint32_t e = 0;
    for (; e < q - 1; ++e) {
      if (seen[x]) break;
      seen[x] = true;
      exp_[e] = static_cast<Elem>(x);
      log_[x] = e;
      x = poly_mulmod(x, g, spec.modulus, spec.w);
    }
    if (e == q - 1 && x == 1) {
      generator_ = static_cast<Elem>(g);
      break;
    }
  }
  if (generator_ == 0) throw ParameterError("no multiplicative generator found");
  for (std::uint32_t e = q - 1; e < 2 * (q - 1); ++e) exp_[e] = exp_[e - (q - 1)];
}

std::shared_ptr<const Field> Field::standard(int w) {
  const FieldSpec spec = FieldSpec::standard(w);
  static std::mutex mu;
  static std::shared_ptr<const Field> f8;
  static std::shared_ptr<const Field> f16;
  std::lock_guard lock(mu);
  auto& slot = (w == 8) ? f8 : f16;
  if (!slot) slot = std::make_shared<const Field>(spec);
  return slot;
}

std::shared_ptr<const Field> Field::make(FieldSpec spec) {
  if (spec == FieldSpec::standard(spec.w)) return standard(spec.w);
  return std::make_shared<const Field>(spec);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (order() - 1))) % (order() - 1)];
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw ParameterError("matrix data length does not match shape");
}

Matrix Matrix::identity(std::size_t order) {
  Matrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::ranges::copy(row(rows[i]), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(r, cols[c]);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::vector<Elem> mul(const Field& f, const Matrix& m, std::span<const Elem> x) {
  if (x.size() != m.cols()) throw ParameterError("matrix-vector shape mismatch");
  std::vector<Elem> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Elem acc = 0;
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc ^= f.mul(row[c], x[c]);
    out[r] = acc;
  }
  return out;
}

std::vector<Elem> mul_left(const Field& f, std::span<const Elem> x, const Matrix& m) {
  if (x.size() != m.rows()) throw ParameterError("vector-matrix shape mismatch");
  std::vector<Elem> out(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0) continue;
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out[c] ^= f.mul(x[r], row[c]);
  }
  return out;
}

Matrix mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix-matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Elem s = a(i, t);
      if (s == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) ^= f.mul(s, b(t, j));
    }
  }
  return out;
}

namespace {

// Reduces [m | aug] to [I | m^-1 aug]; returns the rank reached before a
// missing pivot, or m.rows() on success.
std::size_t gauss_jordan(const Field& f, Matrix& m, Matrix& aug) {
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return col;
    if (pivot != col) {
      std::swap_ranges(m.row(col).begin(), m.row(col).end(), m.row(pivot).begin());
      std::swap_ranges(aug.row(col).begin(), aug.row(col).end(), aug.row(pivot).begin());
    }
    const Elem scale = f.inv(m(col, col));
    for (auto& v : m.row(col)) v = f.mul(v, scale);
    for (auto& v : aug.row(col)) v = f.mul(v, scale);
    for (std::size_t r = 0; r < n; ++r) {
      const Elem factor = m(r, col);
      if (r == col || factor == 0) continue;
      auto dst = m.row(r);
      auto src = m.row(col);
      for (std::size_t c = col; c < n; ++c) dst[c] ^= f.mul(factor, src[c]);
      auto adst = aug.row(r);
      auto asrc = aug.row(col);
      for (std::size_t c = 0; c < aug.cols(); ++c) adst[c] ^= f.mul(factor, asrc[c]);
    }
  }
  return n;
}

}  // namespace

std::vector<Elem> solve(const Field& f, const Matrix& m, std::span<const Elem> rhs) {
  if (m.rows() != m.cols()) throw ParameterError("solve requires a square matrix");
  if (rhs.size() != m.rows()) throw ParameterError("right-hand side length mismatch");
  Matrix work = m;
  Matrix aug(rhs.size(), 1, std::vector<Elem>(rhs.begin(), rhs.end()));
  if (gauss_jordan(f, work, aug) != m.rows()) throw SingularMatrixError(rank(f, m), m.rows());
  return {aug.data().begin(), aug.data().end()};
}

Matrix inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("inverse requires a square matrix");
  Matrix work = m;
  Matrix aug = Matrix::identity(m.rows());
  if (gauss_jordan(f, work, aug) != m.rows()) throw SingularMatrixError(rank(f, m), m.rows());
  return aug;
}

std::size_t rank(const Field& f, Matrix m) {
  std::vector<Elem> data(m.data().begin(), m.data().end());
  return rank_in_place(f, data, m.rows(), m.cols());
}

std::size_t rank_in_place(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols) {
  const auto log = f.log_table();
  const auto exp = f.exp_table();
  const std::uint32_t period = f.order() - 1;
  constexpr std::uint32_t kZero = ~std::uint32_t{0};
  std::vector<std::uint32_t> pivot_log(cols);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && data[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    Elem* prow = data.data() + pivot * cols;
    if (pivot != rank) {
      std::swap_ranges(prow + col, prow + cols, data.data() + rank * cols + col);
      prow = data.data() + rank * cols;
    }
    for (std::size_t c = col; c < cols; ++c) pivot_log[c] = prow[c] ? log[prow[c]] : kZero;
    const std::uint32_t inv_lead = period - pivot_log[col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      Elem* row = data.data() + r * cols;
      if (row[col] == 0) continue;
      std::uint32_t lf = log[row[col]] + inv_lead;
      if (lf >= period) lf -= period;
      for (std::size_t c = col; c < cols; ++c) {
        if (pivot_log[c] != kZero) row[c] ^= exp[lf + pivot_log[c]];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace stcode::gf
