// Copyright 2026 The qsd developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsd/errors.hpp"

namespace qsd {

namespace {

// Unitary that diagonalizes the Hermitian 2x2 [[app, apq], [conj(apq), aqq]].
// Written as a diagonal phase times a real rotation; the combined column action is
//   col_p' = c * col_p - s * (w * col_q)
//   col_q' = s * col_p + c * (w * col_q)
// with w = conj(apq) / |apq|.
struct Rotation {
  double c;
  double s;
  Complex w;
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  const Complex w = std::conj(apq) / mag;
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, w};
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t d = a.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One two-sided rotation step: a <- J^dagger a J, v <- v J.
void rotate_two_sided(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q,
                      const Rotation& r) {
  const std::size_t d = a.rows();
  for (std::size_t row = 0; row < d; ++row) {
    const Complex ap = a(row, p);
    const Complex aq = r.w * a(row, q);
    a(row, p) = r.c * ap - r.s * aq;
    a(row, q) = r.s * ap + r.c * aq;
  }
  const Complex wc = std::conj(r.w);
  for (std::size_t col = 0; col < d; ++col) {
    const Complex ap = a(p, col);
    const Complex aq = wc * a(q, col);
    a(p, col) = r.c * ap - r.s * aq;
    a(q, col) = r.s * ap + r.c * aq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t row = 0; row < d; ++row) {
    const Complex vp = v(row, p);
    const Complex vq = r.w * v(row, q);
    v(row, p) = r.c * vp - r.s * vq;
    v(row, q) = r.s * vp + r.c * vq;
  }
}

// One-sided column sweeps: rotates column pairs of `work` until all pairs are
// orthogonal relative to their norms. Optionally accumulates the right factor.
void one_sided_sweeps(ComplexMatrix& work, ComplexMatrix* v_accum) {
  const std::size_t rows = work.rows();
  const std::size_t n = work.cols();
  if (n < 2) return;
  const int max_sweeps = 60;
  const double tol = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double a = 0.0, b = 0.0;
        Complex g = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex wi = work(r, i);
          const Complex wj = work(r, j);
          a += std::norm(wi);
          b += std::norm(wj);
          g += std::conj(wi) * wj;
        }
        if (a == 0.0 || b == 0.0) continue;
        if (std::abs(g) <= tol * std::sqrt(a) * std::sqrt(b)) continue;
        rotated = true;
        const Rotation rot = make_rotation(a, b, g);
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex wi = work(r, i);
          const Complex wj = rot.w * work(r, j);
          work(r, i) = rot.c * wi - rot.s * wj;
          work(r, j) = rot.s * wi + rot.c * wj;
        }
        if (v_accum) {
          for (std::size_t r = 0; r < v_accum->rows(); ++r) {
            const Complex vi = (*v_accum)(r, i);
            const Complex vj = rot.w * (*v_accum)(r, j);
            (*v_accum)(r, i) = rot.c * vi - rot.s * vj;
            (*v_accum)(r, j) = rot.s * vi + rot.c * vj;
          }
        }
      }
    }
    if (!rotated) return;
  }
  throw NoConvergence("one-sided Jacobi: sweep cap reached");
}

// Fill the listed columns of m with unit vectors orthonormal to every column
// not in `slots` and to the slots already filled, walking the standard basis.
void complete_orthonormal_columns(ComplexMatrix& m, const std::vector<std::size_t>& slots,
                                  const std::vector<bool>& is_slot) {
  const std::size_t d = m.rows();
  std::vector<std::size_t> filled;
  for (std::size_t c = 0; c < d; ++c)
    if (!is_slot[c]) filled.push_back(c);
  for (const std::size_t slot : slots) {
    bool placed = false;
    for (std::size_t seed = 0; seed < d && !placed; ++seed) {
      std::vector<Complex> v(d, Complex{0.0, 0.0});
      v[seed] = 1.0;
      // Two Gram-Schmidt passes keep the result orthogonal to working precision.
      for (int pass = 0; pass < 2; ++pass) {
        for (const std::size_t c : filled) {
          Complex proj = 0.0;
          for (std::size_t r = 0; r < d; ++r) proj += std::conj(m(r, c)) * v[r];
          for (std::size_t r = 0; r < d; ++r) v[r] -= proj * m(r, c);
        }
      }
      double norm2 = 0.0;
      for (const Complex& z : v) norm2 += std::norm(z);
      if (norm2 > 0.25) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t r = 0; r < d; ++r) m(r, slot) = v[r] * inv;
        filled.push_back(slot);
        placed = true;
      }
    }
    if (!placed) throw NoConvergence("orthonormal completion failed");
  }
}

}  // namespace

EigDecomposition hermitian_eig(const ComplexMatrix& m, const NumericPolicy& pol) {
  if (!m.is_square()) throw NotHermitian("hermitian_eig: matrix not square");
  if (m.hermiticity_defect() > pol.hermitian_tol)
    throw NotHermitian("hermitian_eig: matrix not Hermitian within tolerance");
  const std::size_t d = m.rows();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const double fro = a.frobenius_norm();
  if (d > 1 && fro > 0.0) {
    const double stop = 1e-15 * fro;
    const double discard = 1e-18 * fro;
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
      if (off_diagonal_norm(a) <= stop) break;
      for (std::size_t p = 0; p + 1 < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
          const Complex apq = a(p, q);
          if (std::abs(apq) <= discard) {
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            continue;
          }
          const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), apq);
          rotate_two_sided(a, v, p, q, r);
        }
      }
    }
    if (sweep == max_sweeps) throw NoConvergence("hermitian_eig: sweep cap reached");
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = ComplexMatrix(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < d; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m, const NumericPolicy&) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  ComplexMatrix work = m.rows() >= m.cols() ? m : m.adjoint();
  one_sided_sweeps(work, nullptr);
  std::vector<double> sigma(work.cols());
  for (std::size_t c = 0; c < work.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < work.rows(); ++r) s += std::norm(work(r, c));
    sigma[c] = std::sqrt(s);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

Svd svd_square(const ComplexMatrix& m, const NumericPolicy&) {
  if (!m.is_square()) throw DimensionMismatch("svd_square: matrix not square");
  const std::size_t d = m.rows();
  ComplexMatrix work = m;
  ComplexMatrix v = ComplexMatrix::identity(d);
  one_sided_sweeps(work, &v);

  std::vector<double> sigma(d);
  for (std::size_t c = 0; c < d; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < d; ++r) s += std::norm(work(r, c));
    sigma[c] = std::sqrt(s);
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out;
  out.u = ComplexMatrix(d, d);
  out.v = ComplexMatrix(d, d);
  out.singular_values.resize(d);
  const double sigma_max = d == 0 ? 0.0 : sigma[order[0]];
  const double rank_cutoff = sigma_max * 1e-13;
  std::vector<std::size_t> null_slots;
  std::vector<bool> is_null(d, false);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = order[k];
    out.singular_values[k] = sigma[src];
    for (std::size_t r = 0; r < d; ++r) out.v(r, k) = v(r, src);
    if (sigma[src] > rank_cutoff) {
      const double inv = 1.0 / sigma[src];
      for (std::size_t r = 0; r < d; ++r) out.u(r, k) = work(r, src) * inv;
    } else {
      null_slots.push_back(k);
      is_null[k] = true;
    }
  }
  if (!null_slots.empty()) {
    complete_orthonormal_columns(out.u, null_slots, is_null);
    // The right factor is rebuilt over the same basis walk so that u * v^dagger
    // degrades to the identity on the null space of a normal input.
    complete_orthonormal_columns(out.v, null_slots, is_null);
  }
  return out;
}

PolarDecomposition polar_decompose(const ComplexMatrix& m, const NumericPolicy& pol) {
  if (!m.is_square()) throw DimensionMismatch("polar_decompose: matrix not square");
  const Svd s = svd_square(m, pol);
  const std::size_t d = m.rows();
  ComplexMatrix scaled(d, d);  // u * diag(sigma)
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) scaled(r, c) = s.u(r, c) * s.singular_values[c];
  PolarDecomposition out;
  out.positive_part = (scaled * s.u.adjoint()).hermitian_part();
  out.unitary_part = s.u * s.v.adjoint();
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const NumericPolicy& pol) {
  EigDecomposition eig = hermitian_eig(m, pol);
  const std::size_t d = m.rows();
  for (double& lambda : eig.eigenvalues) {
    if (lambda < -pol.psd_tol)
      throw NotPsd("matrix_sqrt_psd: eigenvalue below -psd_tol");
    lambda = lambda < 0.0 ? 0.0 : std::sqrt(lambda);
  }
  ComplexMatrix scaled(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) scaled(r, c) = eig.eigenvectors(r, c) * eig.eigenvalues[c];
  return (scaled * eig.eigenvectors.adjoint()).hermitian_part();
}

SupportInverseSqrt pseudo_inverse_sqrt(const ComplexMatrix& m, const NumericPolicy& pol) {
  const EigDecomposition eig = hermitian_eig(m, pol);
  const std::size_t d = m.rows();
  double lambda_max = 0.0;
  for (const double lambda : eig.eigenvalues) {
    if (lambda < -pol.psd_tol)
      throw NotPsd("pseudo_inverse_sqrt: eigenvalue below -psd_tol");
    lambda_max = std::max(lambda_max, lambda);
  }
  const double cutoff = lambda_max * pol.pinv_cutoff;
  ComplexMatrix inv_scaled(d, d);
  ComplexMatrix kept(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    const double lambda = eig.eigenvalues[c];
    if (lambda <= cutoff) continue;
    const double inv = 1.0 / std::sqrt(lambda);
    for (std::size_t r = 0; r < d; ++r) {
      inv_scaled(r, c) = eig.eigenvectors(r, c) * inv;
      kept(r, c) = eig.eigenvectors(r, c);
    }
  }
  SupportInverseSqrt out;
  out.inv_sqrt = (inv_scaled * eig.eigenvectors.adjoint()).hermitian_part();
  out.support = (kept * kept.adjoint()).hermitian_part();
  return out;
}

}  // namespace qsd
