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

#include "chshq/linalg.h"

#include <algorithm>
#include <string>

namespace chshq {

Mat4 tensor(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

namespace pauli {
Mat2 identity() {
    return Mat2::identity();
}
Mat2 x() {
    return Mat2{0.0, 1.0, 1.0, 0.0};
}
Mat2 y() {
    return Mat2{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
}
Mat2 z() {
    return Mat2{1.0, 0.0, 0.0, -1.0};
}
}  // namespace pauli

template <int N>
Matrix<N> expm(const Matrix<N> &m) {
    const double norm = frobenius_norm(m);
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Matrix<N> scaled = m * Complex(std::ldexp(1.0, -squarings));

    Matrix<N> result = Matrix<N>::identity();
    Matrix<N> term = Matrix<N>::identity();
    for (int k = 1; k <= 16; ++k) {
        term = term * scaled;
        term *= Complex(1.0 / k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

template Mat2 expm(const Mat2 &);
template Mat4 expm(const Mat4 &);

template <int N>
HermitianMatrix<N>::HermitianMatrix(const Matrix<N> &m) {
    double anti = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("HermitianMatrix: non-finite entry");
            }
            anti = std::max(anti, std::abs(z - std::conj(m(j, i))) / 2.0);
        }
    }
    if (anti > tol::kHermitianReject) {
        throw std::invalid_argument("HermitianMatrix: anti-Hermitian part " + std::to_string(anti) +
                                    " exceeds tolerance");
    }
    for (int i = 0; i < N; ++i) {
        m_(i, i) = m(i, i).real();
        for (int j = i + 1; j < N; ++j) {
            const Complex avg = (m(i, j) + std::conj(m(j, i))) / 2.0;
            m_(i, j) = avg;
            m_(j, i) = std::conj(avg);
        }
    }
}

template class HermitianMatrix<2>;
template class HermitianMatrix<4>;

template <int M>
std::array<double, M> symmetric_eigenvalues(std::array<double, M * M> a) {
    auto at = [&a](int r, int c) -> double & { return a[r * M + c]; };

    double total = 0.0;
    for (double v : a) {
        total += v * v;
    }
    const double threshold = tol::kJacobiOffDiagonal * std::max(1.0, std::sqrt(total));

    bool converged = false;
    for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < M; ++p) {
            for (int q = 0; q < M; ++q) {
                if (p != q) {
                    off += at(p, q) * at(p, q);
                }
            }
        }
        if (std::sqrt(off) < threshold) {
            converged = true;
            break;
        }
        for (int p = 0; p < M - 1; ++p) {
            for (int q = p + 1; q < M; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                for (int k = 0; k < M; ++k) {
                    const double kp = at(k, p);
                    const double kq = at(k, q);
                    at(k, p) = c * kp - s * kq;
                    at(k, q) = s * kp + c * kq;
                }
                for (int k = 0; k < M; ++k) {
                    const double pk = at(p, k);
                    const double qk = at(q, k);
                    at(p, k) = c * pk - s * qk;
                    at(q, k) = s * pk + c * qk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("symmetric_eigenvalues: Jacobi iteration did not converge");
    }

    std::array<double, M> eig;
    for (int i = 0; i < M; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

template std::array<double, 2> symmetric_eigenvalues<2>(std::array<double, 4>);
template std::array<double, 4> symmetric_eigenvalues<4>(std::array<double, 16>);
template std::array<double, 8> symmetric_eigenvalues<8>(std::array<double, 64>);

template <int N>
std::array<double, N> herm_eigenvalues(const HermitianMatrix<N> &m) {
    bool real = true;
    for (const Complex &z : m.matrix().data()) {
        if (z.imag() != 0.0) {
            real = false;
            break;
        }
    }
    if (real) {
        std::array<double, N * N> a;
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                a[i * N + j] = m(i, j).real();
            }
        }
        return symmetric_eigenvalues<N>(a);
    }

    // [[Re, -Im], [Im, Re]] has the spectrum of m with every eigenvalue doubled.
    constexpr int M = 2 * N;
    std::array<double, M * M> a;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const Complex z = m(i, j);
            a[i * M + j] = z.real();
            a[(i + N) * M + (j + N)] = z.real();
            a[i * M + (j + N)] = -z.imag();
            a[(i + N) * M + j] = z.imag();
        }
    }
    const std::array<double, M> doubled = symmetric_eigenvalues<M>(a);
    std::array<double, N> eig;
    for (int i = 0; i < N; ++i) {
        eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return eig;
}

template std::array<double, 2> herm_eigenvalues<2>(const HermitianMatrix<2> &);
template std::array<double, 4> herm_eigenvalues<4>(const HermitianMatrix<4> &);

DensityOperator::DensityOperator(const Herm4 &m) : m_(m) {
    const double tr = m_.trace();
    if (std::abs(tr - 1.0) > tol::kTrace) {
        throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr) + " is not 1");
    }
    const double lo = min_eigenvalue(m_);
    if (lo < -tol::kPsdSlack) {
        throw std::invalid_argument("DensityOperator: negative eigenvalue " + std::to_string(lo));
    }
}

DensityOperator DensityOperator::maximally_mixed() {
    return DensityOperator(Herm4(Mat4::identity() * Complex(0.25)));
}

double expectation(const DensityOperator &rho, const Mat4 &op) {
    return trace_of_product(rho.matrix(), op).real();
}

}  // namespace chshq
