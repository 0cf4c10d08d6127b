#include "zigzag/fock.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <string>

namespace zigzag {

namespace {

void check_dim(int dim)
{
    if (dim < 1)
        throw invalid_parameter("matrix dimension must be >= 1, got " + std::to_string(dim));
    if (dim > max_oracle_dim)
        throw resource_error("matrix dimension " + std::to_string(dim) +
                             " exceeds the oracle ceiling " + std::to_string(max_oracle_dim));
}

} // namespace

Eigen::MatrixXd lowering_op(int dim)
{
    check_dim(dim);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Eigen::MatrixXd raising_op(int dim)
{
    return lowering_op(dim).transpose();
}

Eigen::MatrixXd two_photon_raise(int dim)
{
    check_dim(dim);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 2 < dim; ++n)
        k(n + 2, n) = 0.5 * std::sqrt(double(n + 1) * double(n + 2));
    return k;
}

Eigen::MatrixXd two_photon_lower(int dim)
{
    return two_photon_raise(dim).transpose();
}

Eigen::MatrixXd two_photon_number(int dim)
{
    check_dim(dim);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        k(n, n) = 0.5 * (double(n) + 0.5);
    return k;
}

Eigen::MatrixXd ladder_generator(double chi, int dim)
{
    if (!std::isfinite(chi))
        throw invalid_parameter("ladder generator weight must be finite");
    return two_photon_raise(dim) + chi * two_photon_number(dim) + two_photon_lower(dim);
}

Eigen::MatrixXd lattice_generator(const LatticeParams& p, int dim)
{
    validate(p);
    check_dim(dim);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        g(n, n) = p.lambda * double(n);
        if (n + 1 < dim) {
            const double c1 = p.alpha1 * std::sqrt(double(n + 1));
            g(n, n + 1) = c1;
            g(n + 1, n) = c1;
        }
        if (n + 2 < dim) {
            const double c2 = p.alpha2 * std::sqrt(double(n + 1) * double(n + 2));
            g(n, n + 2) = c2;
            g(n + 2, n) = c2;
        }
    }
    return g;
}

Eigen::MatrixXcd matrix_exp_oracle(const Eigen::MatrixXcd& G, double t)
{
    if (G.rows() != G.cols())
        throw invalid_parameter("matrix exponential needs a square matrix");
    check_dim(int(G.rows()));
    if (!std::isfinite(t))
        throw invalid_parameter("exponential parameter must be finite");

    const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
    if ((G - G.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw invalid_parameter("matrix exponential oracle requires a Hermitian generator");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G);
    if (solver.info() != Eigen::Success)
        throw resource_error("eigendecomposition failed in the exponential oracle");

    const Eigen::VectorXd& w = solver.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j)
        phases(j) = std::exp(std::complex<double>{0.0, t * w(j)});
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd matrix_exp_nilpotent(const Eigen::MatrixXcd& A)
{
    if (A.rows() != A.cols())
        throw invalid_parameter("matrix exponential needs a square matrix");
    check_dim(int(A.rows()));

    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);

    constexpr int max_terms = 5000;
    for (int p = 1; p <= max_terms; ++p) {
        term = (term * A) / double(p);
        const double t_norm = term.cwiseAbs().maxCoeff();
        if (!std::isfinite(t_norm))
            throw resource_error("Taylor exponential overflowed; argument is not "
                                 "effectively nilpotent at this dimension");
        sum += term;
        if (t_norm < 1e-18 * std::max(1.0, sum.cwiseAbs().maxCoeff()))
            return sum;
    }
    throw resource_error("Taylor exponential did not settle within the term cap");
}

Eigen::MatrixXcd displacement_matrix(std::complex<double> eta, int dim)
{
    check_dim(dim);
    const std::complex<double> i_unit{0.0, 1.0};
    const Eigen::MatrixXcd gen =
        -i_unit * (eta * raising_op(dim).cast<std::complex<double>>() -
                   std::conj(eta) * lowering_op(dim).cast<std::complex<double>>());
    return matrix_exp_oracle(gen, 1.0);
}

} // namespace zigzag
