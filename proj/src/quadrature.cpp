// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace cutstokes {

namespace {

// Gauss rule from the symmetric Jacobi matrix of a three-term recurrence
// (Golub-Welsch): nodes are eigenvalues, weights mu0 * (first eigenvector
// component)^2. `a` holds diagonal entries, `b` off-diagonals (sqrt of the
// recurrence b_k^2).
void golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                  double mu0, std::vector<double>& x, std::vector<double>& w) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) jm(i, i) = a[i];
  for (int i = 0; i + 1 < n; ++i) jm(i, i + 1) = jm(i + 1, i) = b[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

// Legendre weight 1 on [-1,1], mapped to [0,1].
Rule1D make_gauss_legendre(int n) {
  std::vector<double> a(n, 0.0), b(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) b[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  std::vector<double> x, w;
  golub_welsch(a, b, 2.0, x, w);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (x[i] + 1.0);
    r.w[i] = 0.5 * w[i];
  }
  return r;
}

// Jacobi weight (1-t) on [-1,1], mapped to [0,1] where it integrates against
// (1-u) with total mass 1/2. Recurrence for alpha=1, beta=0:
//   a_k = -1 / ((2k+1)(2k+3)),  b_k^2 = k(k+1) / (2k+1)^2,  mu0 = 2.
Rule1D make_gauss_jacobi10(int n) {
  std::vector<double> a(n), b(n - 1 > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) a[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  for (int k = 1; k < n; ++k) b[k - 1] = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  std::vector<double> x, w;
  golub_welsch(a, b, 2.0, x, w);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (x[i] + 1.0);
    r.w[i] = 0.25 * w[i];
  }
  return r;
}

// Symmetric rule from barycentric orbits; w is the barycentric weight
// (fraction of the triangle area) of each point in the orbit.
void push_orbit1(TriRule& r, double w) {  // centroid
  r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
  r.weights.push_back(0.5 * w);
}
void push_orbit3(TriRule& r, double l, double w) {  // (1-2l, l, l) permutations
  const double m = 1.0 - 2.0 * l;
  const std::array<std::array<double, 3>, 3> bary = {{{m, l, l}, {l, m, l}, {l, l, m}}};
  for (const auto& b : bary) {
    r.points.emplace_back(b[1], b[2]);
    r.weights.push_back(0.5 * w);
  }
}

TriRule make_triangle_rule(int degree) {
  TriRule r;
  if (degree <= 1) {
    push_orbit1(r, 1.0);
  } else if (degree == 2) {
    push_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
  } else if (degree <= 4) {
    push_orbit3(r, 0.445948490915965, 0.223381589678011);
    push_orbit3(r, 0.091576213509771, 0.109951743655322);
  } else if (degree == 5) {
    push_orbit1(r, 0.225);
    push_orbit3(r, 0.470142064105115, 0.132394152788506);
    push_orbit3(r, 0.101286507323456, 0.125939180544827);
  } else {
    // Conical product: xi from the Jacobi(1,0) rule (absorbing the 1-xi
    // Jacobian), eta = t*(1-xi) with t Gauss-Legendre. Exact for total
    // degree <= 2n-1.
    const int n = gauss_point_count(degree);
    const Rule1D gj = make_gauss_jacobi10(n);
    const Rule1D gl = make_gauss_legendre(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        r.points.emplace_back(gj.x[i], gl.x[j] * (1.0 - gj.x[i]));
        r.weights.push_back(gj.w[i] * gl.w[j]);
      }
  }
  return r;
}

std::mutex cache_mutex;

}  // namespace

const Rule1D& gauss_legendre(int n) {
  require(n >= 1 && n <= 64, ErrorCode::invalid_argument,
          "gauss_legendre: point count out of range");
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

const TriRule& triangle_rule(int degree) {
  require(degree >= 0 && degree <= 9, ErrorCode::invalid_argument,
          "triangle_rule: unsupported degree");
  static std::map<int, TriRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

}  // namespace cutstokes
