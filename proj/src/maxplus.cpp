#include "netq/maxplus.hpp"

#include <cstdio>
#include <stdexcept>

namespace netq::maxplus {

namespace {

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

[[noreturn]] void shape_error(const char* op, const Matrix& x, const Matrix& y) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + shape_of(x) +
                              " vs " + shape_of(y));
}

}  // namespace

Scalar pow(Scalar x, int q) {
  assert(q >= 0);
  Scalar r = Scalar::unit();
  for (int i = 0; i < q; ++i) r *= x;
  return r;
}

std::string to_string(Scalar s) {
  if (s.is_eps()) return ".";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", s.value());
  return buf;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(int(rows.size())) {
  cols_ = rows_ == 0 ? 0 : int(rows.begin()->size());
  e_.reserve(size_t(rows_) * cols_);
  for (const auto& r : rows) {
    assert(int(r.size()) == cols_);
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::unit();
  return m;
}

Matrix Matrix::diag(std::span<const double> d) {
  Matrix m(int(d.size()), int(d.size()));
  for (int i = 0; i < int(d.size()); ++i) m.at(i, i) = Scalar{d[i]};
  return m;
}

Matrix Matrix::column(const Vector& v) {
  Matrix m(int(v.size()), 1);
  for (int i = 0; i < int(v.size()); ++i) m.at(i, 0) = v[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) shape_error("matrix add", x, y);
  Matrix r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j) + y.at(i, j);
  return r;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) shape_error("matrix product", x, y);
  Matrix r(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int k = 0; k < x.cols(); ++k) {
      const Scalar xik = x.at(i, k);
      if (xik.is_eps()) continue;
      for (int j = 0; j < y.cols(); ++j) r.at(i, j) += xik * y.at(k, j);
    }
  }
  return r;
}

Vector operator*(const Matrix& x, const Vector& v) {
  if (x.cols() != int(v.size()))
    throw std::invalid_argument("matrix-vector product: incompatible shapes " +
                                shape_of(x) + " vs " + std::to_string(v.size()));
  Vector r(size_t(x.rows()));
  for (int i = 0; i < x.rows(); ++i) {
    Scalar acc;
    for (int j = 0; j < x.cols(); ++j) acc += x.at(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

Matrix pow(const Matrix& x, int q) {
  if (!x.is_square()) throw std::invalid_argument("matrix power: matrix not square");
  assert(q >= 0);
  Matrix r = Matrix::identity(x.rows());
  for (int i = 0; i < q; ++i) r = r * x;
  return r;
}

Scalar norm(const Matrix& x) {
  Scalar r;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r += x.at(i, j);
  return r;
}

Scalar norm(const Vector& v) {
  Scalar r;
  for (Scalar s : v) r += s;
  return r;
}

Matrix pattern(const Matrix& x) {
  Matrix g(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (x.at(i, j).is_finite()) g.at(i, j) = Scalar::unit();
  return g;
}

bool entrywise_leq(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) shape_error("entrywise compare", x, y);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (!(x.at(i, j) <= y.at(i, j))) return false;
  return true;
}

bool entrywise_leq(const Vector& x, const Vector& y) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < x.size(); ++i)
    if (!(x[i] <= y[i])) return false;
  return true;
}

std::optional<std::vector<int>> topological_order(const Matrix& adj) {
  assert(adj.is_square());
  const int n = adj.rows();
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adj.at(i, j).is_finite()) ++indegree[j];

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> ready;
  for (int j = 0; j < n; ++j)
    if (indegree[j] == 0) ready.push_back(j);
  while (!ready.empty()) {
    int i = ready.back();
    ready.pop_back();
    order.push_back(i);
    for (int j = 0; j < n; ++j)
      if (adj.at(i, j).is_finite() && --indegree[j] == 0) ready.push_back(j);
  }
  if (int(order.size()) != n) return std::nullopt;
  return order;
}

std::optional<int> longest_path(const Matrix& adj) {
  auto order = topological_order(adj);
  if (!order) return std::nullopt;
  const int n = adj.rows();
  std::vector<int> depth(n, 0);  // longest path, in arcs, ending at each node
  int best = 0;
  for (int i : *order) {
    for (int j = 0; j < n; ++j) {
      if (adj.at(i, j).is_finite() && depth[i] + 1 > depth[j]) {
        depth[j] = depth[i] + 1;
        if (depth[j] > best) best = depth[j];
      }
    }
  }
  return best;
}

std::vector<int> find_cycle(const Matrix& adj) {
  assert(adj.is_square());
  const int n = adj.rows();
  enum { WHITE, GRAY, BLACK };
  std::vector<int> color(n, WHITE), stack, pos_in_stack(n, -1);

  // Iterative DFS; when a gray node is re-entered the stack tail is a cycle.
  for (int root = 0; root < n; ++root) {
    if (color[root] != WHITE) continue;
    std::vector<std::pair<int, int>> frames{{root, 0}};
    color[root] = GRAY;
    pos_in_stack[root] = int(stack.size());
    stack.push_back(root);
    while (!frames.empty()) {
      auto& [i, j] = frames.back();
      if (j == n) {
        color[i] = BLACK;
        pos_in_stack[i] = -1;
        stack.pop_back();
        frames.pop_back();
        continue;
      }
      int next = j++;
      if (!adj.at(i, next).is_finite()) continue;
      if (color[next] == GRAY) {
        std::vector<int> cycle(stack.begin() + pos_in_stack[next], stack.end());
        cycle.push_back(next);
        return cycle;
      }
      if (color[next] == WHITE) {
        color[next] = GRAY;
        pos_in_stack[next] = int(stack.size());
        stack.push_back(next);
        frames.push_back({next, 0});
      }
    }
  }
  return {};
}

Vector solve_implicit(const Matrix& u, const Vector& v) {
  if (!u.is_square() || u.rows() != int(v.size()))
    throw std::invalid_argument("solve_implicit: incompatible shapes " + shape_of(u) +
                                " vs " + std::to_string(v.size()));
  auto order = topological_order(u);
  if (!order)
    throw std::invalid_argument(
        "solve_implicit: graph of U is not acyclic, no unique bounded solution");

  const int n = u.rows();
  Vector x = v;
  // x_i depends on x_j when u_ij != eps, i.e. along arc i->j; solve sinks first.
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const int i = *it;
    Scalar acc = v[i];
    for (int j = 0; j < n; ++j) acc += u.at(i, j) * x[j];
    x[i] = acc;
  }
  return x;
}

Matrix solve_columns(const Matrix& u, const Matrix& b) {
  if (!u.is_square() || u.rows() != b.rows()) shape_error("solve_columns", u, b);
  auto order = topological_order(u);
  if (!order)
    throw std::invalid_argument(
        "solve_columns: graph of U is not acyclic, no unique bounded solution");

  const int n = u.rows();
  Matrix x = b;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const int i = *it;
    for (int col = 0; col < b.cols(); ++col) {
      Scalar acc = b.at(i, col);
      for (int j = 0; j < n; ++j) acc += u.at(i, j) * x.at(j, col);
      x.at(i, col) = acc;
    }
  }
  return x;
}

std::string to_string(const Matrix& x) {
  // Column-aligned; eps prints as ".".
  std::vector<std::string> cells(size_t(x.rows()) * x.cols());
  size_t width = 1;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      auto& c = cells[size_t(i) * x.cols() + j] = to_string(x.at(i, j));
      width = std::max(width, c.size());
    }
  std::string out;
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      const auto& c = cells[size_t(i) * x.cols() + j];
      out.append(width - c.size(), ' ');
      out += c;
      out += (j + 1 == x.cols()) ? "\n" : "  ";
    }
  }
  return out;
}

}  // namespace netq::maxplus
