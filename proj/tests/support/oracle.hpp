#pragma once

// Brute-force double-precision reference for the three complex norms on
// polyhedral spaces. Shares no code with the library beyond reading the cone
// description: extreme rays, states and unit-ball vertices come from
// exhaustive subset enumeration, and the norms from small phase-grid LPs
// solved by a dense two-phase simplex.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ordspace/space.hpp"

namespace ordspace::oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// min c.z subject to A z = b, z >= 0. Empty when infeasible or unbounded.
inline std::optional<double> solve_min(const Mat& a_in, const Vec& b_in, const Vec& c) {
  const double eps = 1e-10;
  const long m = a_in.rows();
  const long n = a_in.cols();
  Mat t = Mat::Zero(m, n + m + 1);
  for (long i = 0; i < m; ++i) {
    double s = b_in(i) < 0 ? -1.0 : 1.0;
    t.block(i, 0, 1, n) = s * a_in.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = s * b_in(i);
  }
  std::vector<long> basis(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  auto pivot = [&](long r, long col) {
    t.row(r) /= t(r, col);
    for (long i = 0; i < m; ++i) {
      if (i != r && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = col;
  };

  // Returns false when unbounded.
  auto optimize = [&](const Vec& cost, long allowed) {
    for (int iter = 0; iter < 200000; ++iter) {
      bool bland = iter > 5000;
      long enter = -1;
      double best = -1e-9;
      for (long j = 0; j < allowed; ++j) {
        double r = cost(j);
        for (long i = 0; i < m; ++i) r -= cost(basis[static_cast<std::size_t>(i)]) * t(i, j);
        if (r < best) {
          enter = j;
          best = r;
          if (bland) break;
        }
      }
      if (enter < 0) return true;
      long leave = -1;
      double ratio = 0;
      for (long i = 0; i < m; ++i) {
        if (t(i, enter) > eps) {
          double q = t(i, n + m) / t(i, enter);
          if (leave < 0 || q < ratio - 1e-12 ||
              (q <= ratio + 1e-12 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            leave = i;
            ratio = q;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  };

  Vec phase1 = Vec::Zero(n + m);
  phase1.tail(m).setOnes();
  optimize(phase1, n + m);
  double infeasibility = 0;
  for (long i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= n) infeasibility += t(i, n + m);
  }
  if (infeasibility > 1e-7) return std::nullopt;
  for (long i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    for (long j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > 1e-9) {
        pivot(i, j);
        break;
      }
    }
  }
  Vec cost = Vec::Zero(n + m);
  cost.head(n) = c;
  // Artificials left in the basis sit on redundant rows at zero; they may not re-enter.
  if (!optimize(cost, n)) return std::nullopt;
  double value = 0;
  for (long i = 0; i < m; ++i) value += cost(basis[static_cast<std::size_t>(i)]) * t(i, n + m);
  return value;
}

inline void for_each_subset(long total, long size, const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> idx(static_cast<std::size_t>(size));
  std::function<void(long, long)> rec = [&](long start, long depth) {
    if (depth == size) {
      fn(idx);
      return;
    }
    for (long i = start; i < total; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline void push_unique(std::vector<Vec>& out, const Vec& v) {
  for (const auto& w : out) {
    if ((w - v).norm() < 1e-9) return;
  }
  out.push_back(v);
}

/// Extreme rays of the pointed cone {x : rows x >= 0}, unit length.
inline std::vector<Vec> extreme_directions(const Mat& rows) {
  const long n = rows.cols();
  std::vector<Vec> out;
  if (n == 1) {
    for (double s : {1.0, -1.0}) {
      Vec x = Vec::Constant(1, s);
      if ((rows * x).minCoeff() >= -1e-9) out.push_back(x);
    }
    return out;
  }
  for_each_subset(rows.rows(), n - 1, [&](const std::vector<long>& pick) {
    Mat sub(n - 1, n);
    for (long i = 0; i < n - 1; ++i) sub.row(i) = rows.row(pick[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Mat> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.rank() != n - 1) return;
    Vec r = lu.kernel().col(0).normalized();
    for (double s : {1.0, -1.0}) {
      Vec x = s * r;
      if ((rows * x).minCoeff() >= -1e-9) push_unique(out, x);
    }
  });
  return out;
}

struct Space {
  Vec unit;
  std::vector<Vec> rays;    // generators of the closed cone
  std::vector<Vec> states;  // extreme states, f . e = 1
  std::vector<Vec> ball;    // vertices of {h : |f(h)| <= 1 for all states}
};

inline Mat to_dense(const QMatrix& m, std::size_t cols) {
  Mat out(static_cast<long>(m.size()), static_cast<long>(cols));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(static_cast<long>(i), static_cast<long>(j)) = m[i][j].get_d();
  }
  return out;
}

/// Closed pointed polyhedral cones with an interior unit only.
inline Space build(const OrderedSpace& v) {
  const std::size_t n = v.dim();
  Space s;
  s.unit = Vec(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) s.unit(static_cast<long>(i)) = v.unit[i].get_d();
  std::vector<Vec> normals;
  if (v.cone.kind() == ConeSpec::Kind::PolyhedralH) {
    QMatrix rows;
    for (const auto& r : v.cone.rows()) rows.push_back(r.a);
    Mat dense = to_dense(rows, n);
    for (long i = 0; i < dense.rows(); ++i) normals.push_back(dense.row(i).transpose());
    s.rays = extreme_directions(dense);
  } else {
    Mat gens = to_dense(v.cone.input_generators(), n);
    for (long i = 0; i < gens.rows(); ++i) s.rays.push_back(gens.row(i).transpose());
    normals = extreme_directions(gens);
  }
  for (const auto& a : normals) push_unique(s.states, a / a.dot(s.unit));

  const long k = static_cast<long>(s.states.size());
  Mat g(2 * k, static_cast<long>(n));
  for (long i = 0; i < k; ++i) {
    g.row(2 * i) = s.states[static_cast<std::size_t>(i)].transpose();
    g.row(2 * i + 1) = -s.states[static_cast<std::size_t>(i)].transpose();
  }
  for_each_subset(2 * k, static_cast<long>(n), [&](const std::vector<long>& pick) {
    Mat sub(static_cast<long>(n), static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) sub.row(static_cast<long>(i)) = g.row(pick[i]);
    Eigen::FullPivLU<Mat> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.rank() != static_cast<long>(n)) return;
    Vec h = lu.solve(Vec::Ones(static_cast<long>(n)));
    if ((g * h).maxCoeff() <= 1 + 1e-9) push_unique(s.ball, h);
  });
  return s;
}

inline Vec dense(const QVector& x) {
  Vec out(static_cast<long>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out(static_cast<long>(i)) = x[i].get_d();
  return out;
}

inline double seminorm(const Space& s, const Vec& h) {
  double best = 0;
  for (const auto& f : s.states) best = std::max(best, std::abs(f.dot(h)));
  return best;
}

inline double minimal(const Space& s, const Vec& x, const Vec& y) {
  double best = 0;
  for (const auto& f : s.states) best = std::max(best, std::hypot(f.dot(x), f.dot(y)));
  return best;
}

struct Bracket {
  double lower;
  double upper;
};

/// Phases pi k / K with signed unit-ball vertices; step pi / K.
inline Bracket maximal(const Space& s, const Vec& x, const Vec& y, int phases = 64) {
  const long n = x.size();
  const long cols = phases * static_cast<long>(s.ball.size());
  Mat a(2 * n, cols);
  long c = 0;
  for (int k = 0; k < phases; ++k) {
    double th = M_PI * k / phases;
    for (const auto& b : s.ball) {
      a.col(c).head(n) = std::cos(th) * b;
      a.col(c).tail(n) = std::sin(th) * b;
      ++c;
    }
  }
  Vec rhs(2 * n);
  rhs << x, y;
  double u = solve_min(a, rhs, Vec::Ones(cols)).value_or(NAN);
  return {u * std::cos(M_PI / (2.0 * phases)), u};
}

/// Phases 2 pi k / K on the cone's rays; step 2 pi / K. Minimizes tau with
/// tau >= f(sum of positive parts) for every extreme state f.
inline Bracket decomposition(const Space& s, const Vec& x, const Vec& y, int phases = 128) {
  const long n = x.size();
  const long k = static_cast<long>(s.states.size());
  const long rays = static_cast<long>(s.rays.size());
  const long cols = phases * rays + 1 + k;
  Mat a = Mat::Zero(2 * n + k, cols);
  long c = 0;
  for (int p = 0; p < phases; ++p) {
    double th = 2 * M_PI * p / phases;
    for (const auto& g : s.rays) {
      a.col(c).head(n) = std::cos(th) * g;
      a.col(c).segment(n, n) = std::sin(th) * g;
      for (long i = 0; i < k; ++i) a(2 * n + i, c) = s.states[static_cast<std::size_t>(i)].dot(g);
      ++c;
    }
  }
  const long tau = c;
  for (long i = 0; i < k; ++i) {
    a(2 * n + i, tau) = -1.0;
    a(2 * n + i, tau + 1 + i) = 1.0;
  }
  Vec rhs = Vec::Zero(2 * n + k);
  rhs.head(n) = x;
  rhs.segment(n, n) = y;
  Vec cost = Vec::Zero(cols);
  cost(tau) = 1.0;
  double u = solve_min(a, rhs, cost).value_or(NAN);
  return {u * std::cos(M_PI / phases), u};
}

}  // namespace ordspace::oracle
