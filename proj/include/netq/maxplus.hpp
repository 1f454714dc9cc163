#pragma once

// Idempotent (max,+) semiring over R ∪ {eps}, with dense matrices.
// operator+ is the semiring addition (max), operator* the multiplication
// (ordinary addition). eps is the additive null and absorbs under *;
// 0 is the multiplicative identity.

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netq::maxplus {

class Scalar {
 public:
  // Default-constructed scalars are eps.
  constexpr Scalar() noexcept = default;
  constexpr Scalar(double v) noexcept : finite_(true), v_(v) {}

  static constexpr Scalar eps() noexcept { return Scalar{}; }
  static constexpr Scalar unit() noexcept { return Scalar{0.0}; }

  constexpr bool is_eps() const noexcept { return !finite_; }
  constexpr bool is_finite() const noexcept { return finite_; }

  constexpr double value() const noexcept {
    assert(finite_);
    return v_;
  }
  constexpr double value_or(double fallback) const noexcept {
    return finite_ ? v_ : fallback;
  }

  friend constexpr Scalar operator+(Scalar a, Scalar b) noexcept {
    if (a.is_eps()) return b;
    if (b.is_eps()) return a;
    return Scalar{a.v_ > b.v_ ? a.v_ : b.v_};
  }
  friend constexpr Scalar operator*(Scalar a, Scalar b) noexcept {
    if (a.is_eps() || b.is_eps()) return Scalar{};
    return Scalar{a.v_ + b.v_};
  }
  Scalar& operator+=(Scalar o) noexcept { return *this = *this + o; }
  Scalar& operator*=(Scalar o) noexcept { return *this = *this * o; }

  friend constexpr bool operator==(Scalar a, Scalar b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend constexpr bool operator!=(Scalar a, Scalar b) noexcept { return !(a == b); }

  // Total order with eps below every finite value.
  friend constexpr bool operator<(Scalar a, Scalar b) noexcept {
    if (a.is_eps()) return b.is_finite();
    if (b.is_eps()) return false;
    return a.v_ < b.v_;
  }
  friend constexpr bool operator<=(Scalar a, Scalar b) noexcept { return a < b || a == b; }
  friend constexpr bool operator>(Scalar a, Scalar b) noexcept { return b < a; }
  friend constexpr bool operator>=(Scalar a, Scalar b) noexcept { return b <= a; }

 private:
  bool finite_ = false;
  double v_ = 0.0;
};

// x^q = q*x in conventional notation; x^0 is the multiplicative identity.
Scalar pow(Scalar x, int q);

std::string to_string(Scalar s);  // eps rendered as "."

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix null(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix identity(int n);
  static Matrix diag(std::span<const double> d);
  static Matrix column(const Vector& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return e_[size_t(i) * cols_ + j];
  }
  Scalar at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return e_[size_t(i) * cols_ + j];
  }

  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> e_;
};

// Entrywise max / (max,+) product. Shape mismatches are rejected with a
// message reporting both shapes.
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Vector operator*(const Matrix& x, const Vector& v);

// X^0 = I; repeated product. X must be square, q >= 0.
Matrix pow(const Matrix& x, int q);

Scalar norm(const Matrix& x);  // max over entries; eps for the null matrix
Scalar norm(const Vector& v);

// eps-0 adjacency pattern of x (finite entries become 0).
Matrix pattern(const Matrix& x);

bool entrywise_leq(const Matrix& x, const Matrix& y);
bool entrywise_leq(const Vector& x, const Vector& y);

// Treats the eps/non-eps pattern of a square matrix as an adjacency matrix
// (arc i->j iff entry (i,j) is not eps).
std::optional<std::vector<int>> topological_order(const Matrix& adj);

// Length in arcs of the longest path; nullopt when the graph has a cycle.
std::optional<int> longest_path(const Matrix& adj);

// A node sequence v0 -> v1 -> ... -> v0 witnessing a cycle; empty if acyclic.
std::vector<int> find_cycle(const Matrix& adj);

// Unique bounded solution of x = U*x + v for acyclic U, by forward
// substitution in topological order. Throws std::invalid_argument when the
// graph of U has a cycle (no unique bounded solution).
Vector solve_implicit(const Matrix& u, const Vector& v);

// Column-wise solve_implicit: returns the matrix whose j-th column solves
// x = U*x + b_j. Equals (I + U)^p * B for acyclic U.
Matrix solve_columns(const Matrix& u, const Matrix& b);

// Debug rendering: eps as ".", finite entries with 6-decimal precision.
std::string to_string(const Matrix& x);

}  // namespace netq::maxplus
