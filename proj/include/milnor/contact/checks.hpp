#pragma once

// Sampled certifications built on the pointwise forms: the Levi form of rho,
// the rescaled Reeb field of alpha_c = exp(-c|f|^2) alpha, the adaptation
// constant, the proportionality cone, and the open-book criterion for arg f.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "milnor/contact/forms.hpp"

namespace milnor::contact {

constexpr double infinity = std::numeric_limits<double>::infinity();

struct SpshReport {
    double min_quotient = infinity;    // min over samples and random v of omega(v, Jv) / |v|^2
    double min_eigenvalue = infinity;  // min over samples of the smallest eigenvalue of g
    std::size_t samples = 0;
    std::size_t trials = 0;
};

inline SpshReport check_spsh(const VarietyModel& v, const std::vector<PointSample>& samples, std::size_t trials,
                             std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpshReport report;
    report.samples = samples.size();
    report.trials = trials;
    for (const auto& s : samples) {
        const FormsAtPoint forms = eval_forms(v, s);
        const Eigen::Index n = s.tangent_basis.cols();
        for (std::size_t t = 0; t < trials; ++t) {
            VectorC c(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const double re = normal(rng);
                const double im = normal(rng);
                c(j) = Complex(re, im);
            }
            const double length2 = (s.tangent_basis * c).squaredNorm();
            if (!(length2 > 0.0)) continue;
            const VectorR x = to_real(c);
            const VectorR jx = to_real(apply_j(c));
            report.min_quotient = std::min(report.min_quotient, x.dot(forms.omega * jx) / length2);
        }
        // The real basis is orthonormal for the ambient metric, so the smallest
        // eigenvalue of g is the infimum of the quotient at this sample.
        Eigen::SelfAdjointEigenSolver<MatrixR> eig(forms.metric_g, Eigen::EigenvaluesOnly);
        report.min_eigenvalue = std::min(report.min_eigenvalue, eig.eigenvalues()(0));
    }
    return report;
}

/// Data of f at a sample off the binding.
struct AngularData {
    Complex value;
    double modulus2 = 0.0;
    VectorC grad_theta;      // i grad f / conj f
    VectorC grad_rho;
    VectorC reeb;
    VectorC xi_part;         // pr_xi grad theta
    double d_theta_reeb = 0.0;
};

inline bool on_binding(const Polynomial& f, const VectorC& z) {
    const auto s = VarietyModel::span(z);
    return std::abs(f(s)) <= 1e-10 * std::max(f.magnitude(s), 1e-300);
}

inline AngularData angular_data(const PointFrame& frame, const Polynomial& f) {
    AngularData d;
    d.value = f(VarietyModel::span(frame.point));
    d.modulus2 = std::norm(d.value);
    d.grad_theta = angular_gradient(frame, f, d.value);
    d.grad_rho = grad_rho(frame);
    d.reeb = apply_j(d.grad_rho) / frame.norm2(d.grad_rho);
    d.xi_part = xi_projection(frame, d.grad_rho, d.grad_theta);
    d.d_theta_reeb = angular_derivative(frame, f, d.value, d.reeb);
    return d;
}

/// Reeb field of exp(-c|f|^2) alpha on the level, obtained as the kernel of
/// d(alpha_c) restricted to ker d rho and normalized by alpha_c(R_c) = 1.
inline VectorC rescaled_reeb(const PointFrame& frame, const FormsAtPoint& forms, const Polynomial& f, double c) {
    const Complex value = f(VarietyModel::span(frame.point));
    const double weight = std::exp(-c * std::norm(value));
    const VectorR d_modulus = 2.0 * real_part_covector(std::conj(value) * frame.covector(f));
    const VectorR d_weight = -c * weight * d_modulus;
    const MatrixR d_alpha_c = d_weight * forms.alpha.transpose() - forms.alpha * d_weight.transpose() + weight * forms.omega;
    const MatrixR level = level_tangent_basis(frame);
    const MatrixR restricted = level.transpose() * d_alpha_c * level;
    Eigen::JacobiSVD<MatrixR> svd(restricted, Eigen::ComputeFullV);
    const VectorR kernel = level * svd.matrixV().col(restricted.cols() - 1);
    const double normalization = weight * forms.alpha.dot(kernel);
    if (!(std::abs(normalization) > 0.0)) throw Error(ErrorCode::ZeroGradient, "alpha_c vanishes on the kernel of d alpha_c");
    return to_complex(kernel / normalization);
}

struct IdentityResidual {
    double lhs = 0.0;       // d theta(R_c)
    double rhs = 0.0;       // exp(c|f|^2) (d theta(R) + 2c|f|^2 |pr_xi grad theta|^2)
    double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
};

inline IdentityResidual rescaled_reeb_identity(const VarietyModel& v, const Polynomial& f, double c, const PointSample& s) {
    if (on_binding(f, s.point)) throw Error(ErrorCode::OnBinding, "f vanishes at the sample point");
    const PointFrame frame = make_frame(v, s);
    const FormsAtPoint forms = eval_forms(v, s);
    const AngularData d = angular_data(frame, f);
    IdentityResidual r;
    r.lhs = angular_derivative(frame, f, d.value, rescaled_reeb(frame, forms, f, c));
    r.rhs = std::exp(c * d.modulus2) * (d.d_theta_reeb + 2.0 * c * d.modulus2 * frame.norm2(d.xi_part));
    r.residual = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs));
    return r;
}

struct AdaptationReport {
    double c = 0.0;
    bool verified = false;
    double m = 0.0;
    double k = infinity;
    double eta = 0.0;
    double max_modulus2 = 0.0;
    std::size_t mesh = 0;
    std::size_t region = 0;          // mesh points with |f|^2 >= eta
    std::size_t nonpositive = 0;     // points of the region with d theta(R) <= 0
    double min_d_theta_reeb = infinity;
    double min_d_theta_rescaled = infinity;
};

inline double default_adaptation_eta(double max_modulus2) { return 1e-4 * max_modulus2; }

/// eta is compared with |f|^2; when absent it defaults to 1e-4 max |f|^2 on the mesh.
inline AdaptationReport find_adaptation_constant(const VarietyModel& v, const Polynomial& f, double epsilon,
                                                 std::optional<double> eta, std::size_t mesh, std::uint64_t seed) {
    if (mesh == 0) throw Error(ErrorCode::InvalidMesh, "mesh must contain at least one point");
    const auto points = sample_points(v, epsilon, mesh, seed);
    AdaptationReport report;
    report.mesh = points.size();
    std::vector<PointFrame> frames;
    frames.reserve(points.size());
    for (const auto& p : points) {
        frames.push_back(make_frame(v, p));
        report.max_modulus2 = std::max(report.max_modulus2, std::norm(f(VarietyModel::span(p.point))));
    }
    report.eta = eta.value_or(default_adaptation_eta(report.max_modulus2));
    if (!(report.eta > 0.0) || !(report.eta < report.max_modulus2)) {
        throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, max |f|^2 = " + std::to_string(report.max_modulus2) + ")");
    }
    std::vector<std::size_t> region;
    std::vector<AngularData> data;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::norm(f(VarietyModel::span(points[i].point))) < report.eta) continue;
        region.push_back(i);
        data.push_back(angular_data(frames[i], f));
    }
    report.region = region.size();
    for (const auto& d : data) {
        report.min_d_theta_reeb = std::min(report.min_d_theta_reeb, d.d_theta_reeb);
        if (d.d_theta_reeb <= 0.0) ++report.nonpositive;
    }
    report.m = std::max(0.0, -report.min_d_theta_reeb);
    for (std::size_t j = 0; j < region.size(); ++j) {
        const auto& d = data[j];
        if (d.d_theta_reeb > 0.0) continue;
        const PointFrame& frame = frames[region[j]];
        const double xi2 = frame.norm2(d.xi_part);
        if (std::sqrt(xi2) <= 1e-10 * std::sqrt(frame.norm2(d.grad_theta))) {
            throw Error(ErrorCode::ConeViolation, "d theta(R) <= 0 where grad theta is proportional to i grad rho; no adaptation constant at this epsilon");
        }
        report.k = std::min(report.k, d.modulus2 * xi2);
    }
    report.c = std::isfinite(report.k) ? report.m / report.k : 0.0;
    report.verified = true;
    for (std::size_t j = 0; j < region.size(); ++j) {
        const PointFrame& frame = frames[region[j]];
        const FormsAtPoint forms = eval_forms(v, points[region[j]]);
        const double value = angular_derivative(frame, f, data[j].value, rescaled_reeb(frame, forms, f, report.c));
        report.min_d_theta_rescaled = std::min(report.min_d_theta_rescaled, value);
        if (!(value > 0.0)) report.verified = false;
    }
    return report;
}

struct LambdaConeReport {
    std::size_t samples = 0;
    std::size_t on_binding = 0;
    std::size_t qualifying = 0;
    double tolerance = 1e-3;
    double min_re_lambda = infinity;
    double max_abs_arg = 0.0;
    bool all_positive = true;     // Re lambda > 0 at every qualifying sample
    double min_proportionality = infinity;  // min |pr_xi grad theta| / |grad theta|
};

/// arg in (-pi, pi].
inline double principal_arg(Complex z) {
    const double a = std::arg(z);
    return a <= -M_PI ? M_PI : a;
}

inline LambdaConeReport lambda_cone_check(const VarietyModel& v, const Polynomial& f, const std::vector<PointSample>& samples,
                                          double proportionality_tol = 1e-3) {
    LambdaConeReport report;
    report.samples = samples.size();
    report.tolerance = proportionality_tol;
    for (const auto& s : samples) {
        if (on_binding(f, s.point)) {
            ++report.on_binding;
            continue;
        }
        const PointFrame frame = make_frame(v, s);
        const AngularData d = angular_data(frame, f);
        const double ratio = std::sqrt(frame.norm2(d.xi_part) / frame.norm2(d.grad_theta));
        report.min_proportionality = std::min(report.min_proportionality, ratio);
        if (!(ratio <= proportionality_tol)) continue;
        ++report.qualifying;
        // grad theta = i lambda grad rho  =>  lambda = h(i grad rho, grad theta) / |grad rho|^2
        const Complex lambda = frame.h(apply_j(d.grad_rho), d.grad_theta) / frame.norm2(d.grad_rho);
        report.min_re_lambda = std::min(report.min_re_lambda, lambda.real());
        report.max_abs_arg = std::max(report.max_abs_arg, std::abs(principal_arg(lambda)));
        if (!(lambda.real() > 0.0)) report.all_positive = false;
    }
    return report;
}

struct CriterionReport {
    double eta = 0.0;
    double max_modulus = 0.0;
    std::size_t mesh = 0;
    std::size_t outer_points = 0;  // |f| >= eta
    std::size_t inner_points = 0;  // |f| <= eta
    double min_d_theta = infinity; // min |d theta restricted to the level|, outer set
    double min_df = infinity;      // min smallest singular value of df restricted to the level, inner set
    bool outer_vacuous() const { return outer_points == 0; }
    bool inner_vacuous() const { return inner_points == 0; }
    bool holds() const { return (outer_vacuous() || min_d_theta > 0.0) && (inner_vacuous() || min_df > 0.0); }
};

inline double default_criterion_eta(double max_modulus) { return 1e-2 * max_modulus; }

/// eta is compared with |f|; when absent it defaults to 1e-2 max |f| on the mesh.
inline CriterionReport openbook_criterion_check(const VarietyModel& v, const Polynomial& f, double epsilon, std::optional<double> eta,
                                                std::size_t mesh, std::uint64_t seed) {
    if (mesh == 0) throw Error(ErrorCode::InvalidMesh, "mesh must contain at least one point");
    const auto points = sample_points(v, epsilon, mesh, seed);
    CriterionReport report;
    report.mesh = points.size();
    for (const auto& p : points) report.max_modulus = std::max(report.max_modulus, std::abs(f(VarietyModel::span(p.point))));
    report.eta = eta.value_or(default_criterion_eta(report.max_modulus));
    if (!(report.eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
    for (const auto& p : points) {
        const PointFrame frame = make_frame(v, p);
        const MatrixR level = level_tangent_basis(frame);
        const VectorC a = frame.covector(f);
        const Complex value = f(VarietyModel::span(p.point));
        const double modulus = std::abs(value);
        if (modulus >= report.eta) {
            ++report.outer_points;
            const VectorR restricted = level.transpose() * imag_part_covector(a / value);
            report.min_d_theta = std::min(report.min_d_theta, restricted.norm());
        }
        if (modulus <= report.eta) {
            ++report.inner_points;
            MatrixR df(2, 2 * a.size());
            df.row(0) = real_part_covector(a).transpose();
            df.row(1) = imag_part_covector(a).transpose();
            const MatrixR restricted = df * level;
            Eigen::JacobiSVD<MatrixR> svd(restricted);
            report.min_df = std::min(report.min_df, svd.singularValues()(svd.singularValues().size() - 1));
        }
    }
    return report;
}

}  // namespace milnor::contact
