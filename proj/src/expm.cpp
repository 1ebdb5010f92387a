#include "oe/expm.hpp"

#include <cmath>
#include <limits>

namespace oe {

Matrix expm_dense(const Matrix& a) {
    const Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("expm_dense: square matrix required");

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    }
    const Matrix scaled = a / std::ldexp(1.0, squarings);

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int k = 1; k <= 40; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        result += term;
        const double tnorm = term.cwiseAbs().colwise().sum().maxCoeff();
        const double rnorm = result.cwiseAbs().colwise().sum().maxCoeff();
        if (tnorm <= eps * rnorm) break;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();
    return result;
}

}  // namespace oe
