#pragma once

// Test-only reference route for the contact forms: everything is derived from
// real second differences of rho, never from the holomorphic derivatives.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using RealFunction = std::function<double(const Eigen::VectorXd&)>;

/// Mixed second difference D^2 f(p)(u, v).
inline double second_difference(const RealFunction& f, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v, double h) {
    return (f(p + h * u + h * v) - f(p + h * u - h * v) - f(p - h * u + h * v) + f(p - h * u - h * v)) / (4.0 * h * h);
}

/// Complex structure on R^{2m} laid out as (Re z, Im z).
inline Eigen::VectorXd complex_structure(const Eigen::VectorXd& x) {
    const auto m = x.size() / 2;
    Eigen::VectorXd out(x.size());
    out << -x.tail(m), x.head(m);
    return out;
}

/// -dd^c rho(u, v) = D^2 rho(v, Ju) - D^2 rho(u, Jv) for constant fields u, v.
inline double levi_from_hessian(const RealFunction& rho, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v, double h) {
    return second_difference(rho, p, v, complex_structure(u), h) - second_difference(rho, p, u, complex_structure(v), h);
}

/// -d^c rho(v) = -d rho(Jv) by a central difference.
inline double alpha_from_rho(const RealFunction& rho, const Eigen::VectorXd& p, const Eigen::VectorXd& v, double h) {
    const Eigen::VectorXd jv = complex_structure(v);
    return -(rho(p + h * jv) - rho(p - h * jv)) / (2.0 * h);
}

/// rho = sum |phi_k|^2 for maps written as lambdas on complex coordinates.
inline RealFunction rug(std::function<std::vector<std::complex<double>>(const std::vector<std::complex<double>>&)> phi) {
    return [phi](const Eigen::VectorXd& x) {
        const auto m = x.size() / 2;
        std::vector<std::complex<double>> z(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j) z[static_cast<std::size_t>(j)] = {x(j), x(m + j)};
        double total = 0.0;
        for (const auto& value : phi(z)) total += std::norm(value);
        return total;
    };
}

/// Ambient real vector of the complex vector w.
inline Eigen::VectorXd realify(const Eigen::VectorXcd& w) {
    Eigen::VectorXd x(2 * w.size());
    x << w.real(), w.imag();
    return x;
}

}  // namespace oracle
