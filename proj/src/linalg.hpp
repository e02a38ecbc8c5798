#pragma once

#include <array>
#include <complex>
#include <vector>

namespace tritangle {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Sizes here never exceed 8x8.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}
    Matrix(int rows, int cols, std::vector<cplx> entries);

    static Matrix identity(int n);
    static Matrix diag(const std::vector<cplx>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const std::vector<cplx>& data() const { return a_; }

    Matrix adjoint() const;
    Matrix conj() const;
    Matrix transpose() const;
    cplx trace() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    double max_abs() const;
    // max |M - M^dagger|
    double hermiticity_error() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// outer product |u><v|
Matrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

Matrix kron(const Matrix& a, const Matrix& b);

// Subsystems of the three-qubit register. Qubit A is the most significant bit
// of the computational index, |abc> <-> 4a + 2b + c.
enum class Subsystem { A, B, C, AB, AC, BC };

Matrix partial_trace(const Matrix& rho, Subsystem keep);

// reorder the qubits of an 8x8 operator: new qubit k is old qubit order[k]
Matrix permute_qubits(const Matrix& rho, const std::array<int, 3>& order);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns, unit norm
};

// Cyclic complex Jacobi. Throws on non-Hermitian input or if the off-diagonal
// norm is still above tol after the sweep budget.
EigenDecomposition herm_eig(const Matrix& h, double tol = 1e-13, int max_sweeps = 100);

using Sym3 = std::array<std::array<double, 3>, 3>;

// smallest eigenvalue of a real symmetric 3x3, trigonometric closed form
double min_eig_sym3(const Sym3& m);

// common single-qubit operators
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace tritangle
