#pragma once

// Local models of an isolated singularity together with a holomorphic
// immersion Phi, and points on the levels rho = |Phi|^2 = epsilon.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "milnor/contact/polynomial.hpp"
#include "milnor/error.hpp"

namespace milnor::contact {

using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;
using VectorR = Eigen::VectorXd;
using MatrixR = Eigen::MatrixXd;

/// Either a smooth chart C^n with a polynomial immersion Phi: C^n -> C^N, or a
/// hypersurface {h = 0} in C^{n+1} embedded by the identity. In both cases the
/// rug function is rho = sum |phi_k|^2 and points live in "chart coordinates"
/// (C^n, respectively C^{n+1}).
class VarietyModel {
public:
    enum class Kind { SmoothChart, Hypersurface };

    /// Phi = identity on C^n when `map` is empty.
    static VarietyModel smooth_chart(std::size_t n, std::vector<Polynomial> map = {}) {
        if (n == 0) throw Error(ErrorCode::InvalidArgument, "chart dimension must be positive");
        VarietyModel v;
        v.kind_ = Kind::SmoothChart;
        v.chart_dim_ = n;
        if (map.empty()) {
            for (std::size_t j = 0; j < n; ++j) map.push_back(Polynomial::variable(n, j));
        }
        for (const auto& phi : map) {
            if (phi.num_vars() != n) throw Error(ErrorCode::DimensionMismatch, "immersion component has the wrong number of variables");
        }
        v.map_ = std::move(map);
        return v;
    }

    static VarietyModel hypersurface(Polynomial h) {
        if (h.num_vars() < 2) throw Error(ErrorCode::InvalidArgument, "a hypersurface needs at least two ambient variables");
        VarietyModel v;
        v.kind_ = Kind::Hypersurface;
        v.chart_dim_ = h.num_vars();
        for (std::size_t j = 0; j < v.chart_dim_; ++j) v.map_.push_back(Polynomial::variable(v.chart_dim_, j));
        v.defining_ = std::move(h);
        return v;
    }

    Kind kind() const { return kind_; }
    /// Dimension of the coordinate space points are written in.
    std::size_t chart_dim() const { return chart_dim_; }
    /// Complex dimension of the variety.
    std::size_t complex_dim() const { return kind_ == Kind::SmoothChart ? chart_dim_ : chart_dim_ - 1; }
    const std::vector<Polynomial>& immersion() const { return map_; }
    const std::optional<Polynomial>& defining() const { return defining_; }

    VectorC phi(const VectorC& z) const {
        VectorC out(map_.size());
        for (std::size_t k = 0; k < map_.size(); ++k) out(k) = map_[k](span(z));
        return out;
    }

    /// N x chart_dim matrix of holomorphic partials of Phi.
    MatrixC phi_jacobian(const VectorC& z) const {
        MatrixC out(map_.size(), chart_dim_);
        for (std::size_t k = 0; k < map_.size(); ++k) {
            const auto grad = map_[k].gradient(span(z));
            for (std::size_t j = 0; j < chart_dim_; ++j) out(k, j) = grad[j];
        }
        return out;
    }

    double rho(const VectorC& z) const { return phi(z).squaredNorm(); }

    static std::span<const Complex> span(const VectorC& z) { return {z.data(), static_cast<std::size_t>(z.size())}; }

    std::string describe() const {
        if (kind_ == Kind::Hypersurface) return "hypersurface {" + defining_->to_string() + " = 0} in C^" + std::to_string(chart_dim_);
        std::string out = "chart C^" + std::to_string(chart_dim_) + ", Phi = (";
        for (std::size_t k = 0; k < map_.size(); ++k) out += (k ? ", " : "") + map_[k].to_string();
        return out + ")";
    }

private:
    Kind kind_ = Kind::SmoothChart;
    std::size_t chart_dim_ = 0;
    std::vector<Polynomial> map_;
    std::optional<Polynomial> defining_;
};

/// A point of M_{rho,epsilon} with a complex basis of the tangent space of the
/// variety there, orthonormal for the standard hermitian product of the chart.
struct PointSample {
    VectorC point;
    MatrixC tangent_basis;  // chart_dim x complex_dim
    double rho_value = 0.0;
};

/// Orthonormal complex basis of ker(w -> a^T w), a != 0.
inline MatrixC kernel_basis(const VectorC& a) {
    const auto m = a.size();
    Eigen::HouseholderQR<MatrixC> qr(a.conjugate());
    const MatrixC q = qr.householderQ() * MatrixC::Identity(m, m);
    return q.rightCols(m - 1);
}

/// Builds the tangent frame at z. Throws DegenerateTangent if dh vanishes
/// (hypersurface) or dPhi loses rank (chart).
inline PointSample make_sample(const VarietyModel& v, const VectorC& z) {
    if (static_cast<std::size_t>(z.size()) != v.chart_dim()) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
    PointSample s;
    s.point = z;
    s.rho_value = v.rho(z);
    if (v.kind() == VarietyModel::Kind::Hypersurface) {
        const auto grad = v.defining()->gradient(VarietyModel::span(z));
        VectorC a(grad.size());
        for (std::size_t j = 0; j < grad.size(); ++j) a(static_cast<Eigen::Index>(j)) = grad[j];
        if (a.norm() <= 1e-14 * std::max(1.0, v.defining()->magnitude(VarietyModel::span(z)) / std::max(z.norm(), 1e-300))) {
            throw Error(ErrorCode::DegenerateTangent, "dh vanishes at the sample point");
        }
        s.tangent_basis = kernel_basis(a);
    } else {
        s.tangent_basis = MatrixC::Identity(v.chart_dim(), v.chart_dim());
    }
    const MatrixC pushed = v.phi_jacobian(z) * s.tangent_basis;
    Eigen::JacobiSVD<MatrixC> svd(pushed);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * std::max(sv(0), 1e-300) ||
        pushed.rows() < pushed.cols()) {
        throw Error(ErrorCode::DegenerateTangent, "dPhi is not injective on the tangent space at the sample point");
    }
    return s;
}

struct SamplingOptions {
    double newton_tolerance = 1e-12;
    double accept_tolerance = 1e-10;
    double damping = 0.5;
    int max_iterations = 50;
    int max_halvings = 30;
    /// Draws per requested point; fewer than count / attempts_per_point
    /// successes (a rate below 10% at the default) is a failure.
    int attempts_per_point = 10;
};

namespace detail {

struct LevelSystem {
    const VarietyModel& v;
    double epsilon;

    /// Real residual: (Re h, Im h, rho - eps) for hypersurfaces, (rho - eps) for charts.
    VectorR residual(const VectorC& z) const {
        const bool hyper = v.kind() == VarietyModel::Kind::Hypersurface;
        VectorR r(hyper ? 3 : 1);
        int k = 0;
        if (hyper) {
            const Complex value = (*v.defining())(VarietyModel::span(z));
            r(k++) = value.real();
            r(k++) = value.imag();
        }
        r(k) = v.rho(z) - epsilon;
        return r;
    }

    /// Real Jacobian with respect to (Re z, Im z).
    MatrixR jacobian(const VectorC& z) const {
        const auto m = static_cast<Eigen::Index>(v.chart_dim());
        const bool hyper = v.kind() == VarietyModel::Kind::Hypersurface;
        MatrixR jac = MatrixR::Zero(hyper ? 3 : 1, 2 * m);
        int k = 0;
        if (hyper) {
            const auto grad = v.defining()->gradient(VarietyModel::span(z));
            for (Eigen::Index j = 0; j < m; ++j) {
                const Complex g = grad[static_cast<std::size_t>(j)];
                jac(0, j) = g.real();
                jac(0, m + j) = -g.imag();
                jac(1, j) = g.imag();
                jac(1, m + j) = g.real();
            }
            k = 2;
        }
        // d rho(w) = 2 Re sum conj(phi_k) dphi_k(w)
        const VectorC b = v.phi_jacobian(z).transpose() * v.phi(z).conjugate();
        for (Eigen::Index j = 0; j < m; ++j) {
            jac(k, j) = 2.0 * b(j).real();
            jac(k, m + j) = -2.0 * b(j).imag();
        }
        return jac;
    }
};

inline bool converged(const VarietyModel& v, const VectorC& z, double epsilon, double tol) {
    if (std::abs(v.rho(z) - epsilon) > tol * epsilon) return false;
    if (v.kind() == VarietyModel::Kind::Hypersurface) {
        const auto s = VarietyModel::span(z);
        if (std::abs((*v.defining())(s)) > tol * std::max(v.defining()->magnitude(s), 1e-300)) return false;
    }
    return true;
}

}  // namespace detail

/// Moves z onto {h = 0, rho = epsilon} by damped minimum-norm Newton steps.
inline std::optional<VectorC> project_to_level(const VarietyModel& v, VectorC z, double epsilon, const SamplingOptions& options = {}) {
    const detail::LevelSystem system{v, epsilon};
    const auto m = static_cast<Eigen::Index>(v.chart_dim());
    VectorR r = system.residual(z);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (detail::converged(v, z, epsilon, options.newton_tolerance)) break;
        const MatrixR jac = system.jacobian(z);
        const VectorR step = jac.completeOrthogonalDecomposition().solve(-r);
        if (!step.allFinite()) return std::nullopt;
        double scale = 1.0;
        bool improved = false;
        for (int h = 0; h <= options.max_halvings; ++h, scale *= options.damping) {
            VectorC trial = z;
            for (Eigen::Index j = 0; j < m; ++j) trial(j) += Complex(scale * step(j), scale * step(m + j));
            const VectorR trial_r = system.residual(trial);
            if (trial_r.norm() < r.norm()) {
                z = trial;
                r = trial_r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (!detail::converged(v, z, epsilon, options.accept_tolerance)) return std::nullopt;
    return z;
}

/// Deterministic for a fixed seed: draws Gaussian directions, scales them to
/// |z|^2 = epsilon, projects onto the level and keeps the converged draws that
/// admit a tangent frame.
inline std::vector<PointSample> sample_points(const VarietyModel& v, double epsilon, std::size_t count, std::uint64_t seed,
                                              const SamplingOptions& options = {}) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorCode::SamplingFailed, "epsilon must be positive, got " + std::to_string(epsilon));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(v.chart_dim());
    std::vector<PointSample> out;
    out.reserve(count);
    const std::size_t max_attempts = count * static_cast<std::size_t>(options.attempts_per_point);
    std::size_t attempts = 0;
    while (out.size() < count && attempts < max_attempts) {
        ++attempts;
        VectorC z(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(j) = Complex(re, im);
        }
        z *= std::sqrt(epsilon) / z.norm();
        const auto projected = project_to_level(v, z, epsilon, options);
        if (!projected) continue;
        try {
            out.push_back(make_sample(v, *projected));
        } catch (const Error&) {
        }
    }
    if (out.size() < count) {
        throw Error(ErrorCode::SamplingFailed, "only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                                   " points converged after " + std::to_string(attempts) + " draws");
    }
    return out;
}

}  // namespace milnor::contact
