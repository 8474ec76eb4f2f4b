// Copyright 2026 The chshq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small fixed-size complex linear algebra for operators on C^2 and C^2 (x) C^2.

#ifndef CHSHQ_LINALG_H
#define CHSHQ_LINALG_H

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>

#include "chshq/tolerances.h"

namespace chshq {

using Complex = std::complex<double>;

/// Dense row-major N x N complex matrix. N is 2 or 4 throughout the library.
template <int N>
class Matrix {
    static_assert(N == 2 || N == 4, "only 2x2 and 4x4 operators are supported");

   public:
    static constexpr int kDim = N;

    Matrix() : data_{} {
    }

    /// Row-major initializer; throws if the count is not N*N or an entry is not finite.
    Matrix(std::initializer_list<Complex> entries) : data_{} {
        if (entries.size() != static_cast<std::size_t>(N * N)) {
            throw std::invalid_argument("Matrix: expected N*N entries");
        }
        int k = 0;
        for (const Complex &z : entries) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("Matrix: non-finite entry");
            }
            data_[k++] = z;
        }
    }

    static Matrix zero() {
        return Matrix();
    }

    static Matrix identity() {
        Matrix m;
        for (int i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    Complex &operator()(int row, int col) {
        return data_[row * N + col];
    }
    const Complex &operator()(int row, int col) const {
        return data_[row * N + col];
    }

    const std::array<Complex, N * N> &data() const {
        return data_;
    }

    Matrix &operator+=(const Matrix &o) {
        for (int k = 0; k < N * N; ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        for (int k = 0; k < N * N; ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(Complex s) {
        for (Complex &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        return a += b;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        return a -= b;
    }
    friend Matrix operator-(Matrix a) {
        return a *= -1.0;
    }
    friend Matrix operator*(Complex s, Matrix a) {
        return a *= s;
    }
    friend Matrix operator*(Matrix a, Complex s) {
        return a *= s;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        Matrix c;
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < N; ++k) {
                const Complex aik = a(i, k);
                for (int j = 0; j < N; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

   private:
    std::array<Complex, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <int N>
Matrix<N> matmul(const Matrix<N> &a, const Matrix<N> &b) {
    return a * b;
}

template <int N>
Matrix<N> adjoint(const Matrix<N> &m) {
    Matrix<N> out;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            out(i, j) = std::conj(m(j, i));
        }
    }
    return out;
}

template <int N>
Complex trace(const Matrix<N> &m) {
    Complex t = 0.0;
    for (int i = 0; i < N; ++i) {
        t += m(i, i);
    }
    return t;
}

/// Largest entry modulus.
template <int N>
double max_abs(const Matrix<N> &m) {
    double best = 0.0;
    for (const Complex &z : m.data()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

template <int N>
double frobenius_norm(const Matrix<N> &m) {
    double s = 0.0;
    for (const Complex &z : m.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

/// Tr[a b] without forming the product.
template <int N>
Complex trace_of_product(const Matrix<N> &a, const Matrix<N> &b) {
    Complex t = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) {
            t += a(i, k) * b(k, i);
        }
    }
    return t;
}

/// Kronecker product, entry[(2i+k)][(2j+l)] = a[i][j] * b[k][l].
Mat4 tensor(const Mat2 &a, const Mat2 &b);

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

/// Matrix exponential by scaling and squaring with a degree-16 Taylor core.
template <int N>
Matrix<N> expm(const Matrix<N> &m);

/// Hermitian matrix. Construction symmetrizes (m + m^dagger)/2 and rejects
/// inputs whose anti-Hermitian part exceeds tol::kHermitianReject in max norm.
template <int N>
class HermitianMatrix {
   public:
    static constexpr int kDim = N;

    explicit HermitianMatrix(const Matrix<N> &m);

    static HermitianMatrix identity() {
        return HermitianMatrix(Matrix<N>::identity());
    }

    const Matrix<N> &matrix() const {
        return m_;
    }
    const Complex &operator()(int row, int col) const {
        return m_(row, col);
    }
    double trace() const {
        return chshq::trace(m_).real();
    }

   private:
    Matrix<N> m_;
};

using Herm2 = HermitianMatrix<2>;
using Herm4 = HermitianMatrix<4>;

/// Eigenvalues in ascending order, by cyclic Jacobi rotation. Complex input
/// is diagonalized through its 2N x 2N real-symmetric embedding. Throws
/// std::runtime_error if the off-diagonal norm has not dropped below
/// tol::kJacobiOffDiagonal (relative to the matrix norm) after
/// tol::kJacobiMaxSweeps sweeps.
template <int N>
std::array<double, N> herm_eigenvalues(const HermitianMatrix<N> &m);

/// Cyclic Jacobi on a real symmetric M x M matrix (row-major). Ascending.
template <int M>
std::array<double, M> symmetric_eigenvalues(std::array<double, M * M> a);

template <int N>
double min_eigenvalue(const HermitianMatrix<N> &m) {
    return herm_eigenvalues(m)[0];
}

template <int N>
bool is_psd(const HermitianMatrix<N> &m, double tol = tol::kPsdSlack) {
    return min_eigenvalue(m) >= -tol;
}

/// Unit-trace positive semi-definite operator on C^2 (x) C^2.
class DensityOperator {
   public:
    /// Throws std::invalid_argument unless |Tr - 1| <= tol::kTrace and the
    /// smallest eigenvalue is >= -tol::kPsdSlack.
    explicit DensityOperator(const Herm4 &m);

    static DensityOperator maximally_mixed();

    const Herm4 &herm() const {
        return m_;
    }
    const Mat4 &matrix() const {
        return m_.matrix();
    }

   private:
    Herm4 m_;
};

/// Re Tr[rho op].
double expectation(const DensityOperator &rho, const Mat4 &op);

extern template class HermitianMatrix<2>;
extern template class HermitianMatrix<4>;

}  // namespace chshq

#endif  // CHSHQ_LINALG_H
