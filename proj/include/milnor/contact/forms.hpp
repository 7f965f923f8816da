#pragma once

// Pointwise forms of the rug function on a sample: alpha = -d^c rho,
// omega = d alpha, g(u, v) = omega(u, Jv), h = g + i omega.
//
// Tangent vectors are complex coordinate vectors c in C^n with respect to the
// sample's tangent basis U (ambient direction U c). Real matrices use the basis
// e_j = u_j, e_{n+j} = i u_j, so J e_j = e_{n+j} and J e_{n+j} = -e_j.
// h is conjugate-linear in its first slot and complex-linear in its second.

#include <algorithm>
#include <cmath>

#include "milnor/contact/variety.hpp"

namespace milnor::contact {

inline VectorR to_real(const VectorC& c) {
    VectorR x(2 * c.size());
    x << c.real(), c.imag();
    return x;
}

inline VectorC to_complex(const VectorR& x) {
    const auto n = x.size() / 2;
    VectorC c(n);
    for (Eigen::Index j = 0; j < n; ++j) c(j) = Complex(x(j), x(n + j));
    return c;
}

/// Real-linear covector w -> Re(a^T w), as a vector in the real basis.
inline VectorR real_part_covector(const VectorC& a) {
    VectorR x(2 * a.size());
    x << a.real(), -a.imag();
    return x;
}

/// Real-linear covector w -> Im(a^T w).
inline VectorR imag_part_covector(const VectorC& a) {
    VectorR x(2 * a.size());
    x << a.imag(), a.real();
    return x;
}

/// Per-sample linear data shared by every form evaluation.
struct PointFrame {
    VectorC point;
    MatrixC basis;      // U, chart_dim x n
    VectorC phi;        // Phi(p)
    MatrixC pushed;     // A = dPhi U, N x n
    MatrixC hermitian;  // 4 A^* A

    Eigen::Index dim() const { return basis.cols(); }
    VectorC ambient(const VectorC& c) const { return basis * c; }

    /// dF(U c) = a^T c for a holomorphic F on the chart.
    VectorC covector(const Polynomial& f) const {
        const auto grad = f.gradient(VarietyModel::span(point));
        VectorC g(static_cast<Eigen::Index>(grad.size()));
        for (std::size_t j = 0; j < grad.size(); ++j) g(static_cast<Eigen::Index>(j)) = grad[j];
        return basis.transpose() * g;
    }

    Complex h(const VectorC& u, const VectorC& v) const { return u.dot(hermitian * v); }
    double g(const VectorC& u, const VectorC& v) const { return h(u, v).real(); }
    double omega(const VectorC& u, const VectorC& v) const { return h(u, v).imag(); }
    double norm2(const VectorC& u) const { return g(u, u); }

    /// Coefficients of the holomorphic part d'rho(w) = sum conj(phi_k) dphi_k(w).
    VectorC d_rho_holomorphic() const { return pushed.transpose() * phi.conjugate(); }
    /// a^T w, without conjugation.
    static Complex apply(const VectorC& a, const VectorC& w) { return (a.transpose() * w)(0); }
    double d_rho(const VectorC& w) const { return 2.0 * apply(d_rho_holomorphic(), w).real(); }
    double alpha(const VectorC& w) const { return 2.0 * apply(d_rho_holomorphic(), w).imag(); }
};

inline PointFrame make_frame(const VarietyModel& v, const PointSample& s) {
    PointFrame f;
    f.point = s.point;
    f.basis = s.tangent_basis;
    f.phi = v.phi(s.point);
    f.pushed = v.phi_jacobian(s.point) * s.tangent_basis;
    f.hermitian = 4.0 * f.pushed.adjoint() * f.pushed;
    return f;
}

struct FormsAtPoint {
    VectorR alpha;         // 2n
    MatrixR omega;         // 2n x 2n
    MatrixR metric_g;      // 2n x 2n
    MatrixC hermitian_h;   // n x n, h(u_j, u_l)
    VectorC grad_rho;
    VectorC reeb;
};

/// omega(v, Jw) = 2 sum_k (a_k conj(b_k) + conj(a_k) b_k) with a_k = dphi_k(v),
/// b_k = dphi_k(w); hence omega(v, w) is that pairing evaluated at (v, -Jw).
inline double levi_pairing(const PointFrame& f, const VectorC& v, const VectorC& w) {
    const VectorC a = f.pushed * v;
    const VectorC b = f.pushed * w;
    double total = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        total += 2.0 * (a(k) * std::conj(b(k)) + std::conj(a(k)) * b(k)).real();
    }
    return total;
}

inline VectorC basis_vector(Eigen::Index n, Eigen::Index real_index) {
    VectorC c = VectorC::Zero(n);
    if (real_index < n) c(real_index) = 1.0;
    else c(real_index - n) = Complex(0.0, 1.0);
    return c;
}

inline VectorC apply_j(const VectorC& c) { return Complex(0.0, 1.0) * c; }

/// Unique X with h(X, .) = a^T(.); throws SingularMetric when H is not invertible.
inline VectorC solve_hermitian(const PointFrame& f, const VectorC& a) {
    Eigen::LDLT<MatrixC> ldlt(f.hermitian);
    const double scale = f.hermitian.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(scale > 0.0) ||
        ldlt.vectorD().real().minCoeff() <= 1e-13 * scale) {
        throw Error(ErrorCode::SingularMetric, "hermitian metric is not invertible at the sample point");
    }
    return ldlt.solve(a.conjugate());
}

inline VectorC grad_rho(const PointFrame& f) {
    const VectorC b = 2.0 * f.d_rho_holomorphic();
    const VectorC x = solve_hermitian(f, b);
    if (!(f.norm2(x) > 0.0)) throw Error(ErrorCode::ZeroGradient, "grad rho vanishes at the sample point");
    return x;
}

/// R = i grad rho / |grad rho|^2.
inline VectorC reeb_field(const PointFrame& f) {
    const VectorC gr = grad_rho(f);
    return apply_j(gr) / f.norm2(gr);
}

inline FormsAtPoint eval_forms(const VarietyModel& v, const PointSample& s) {
    const PointFrame f = make_frame(v, s);
    const Eigen::Index n = f.dim();
    Eigen::JacobiSVD<MatrixC> svd(f.pushed);
    const auto& sv = svd.singularValues();
    if (f.pushed.rows() < n || sv(n - 1) <= 1e-10 * std::max(sv(0), 1e-300)) {
        throw Error(ErrorCode::DegenerateTangent, "dPhi loses rank on the tangent space");
    }
    FormsAtPoint out;
    out.alpha.resize(2 * n);
    out.omega.resize(2 * n, 2 * n);
    out.metric_g.resize(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < 2 * n; ++a) {
        const VectorC ea = basis_vector(n, a);
        out.alpha(a) = f.alpha(ea);
        for (Eigen::Index b = 0; b < 2 * n; ++b) {
            const VectorC eb = basis_vector(n, b);
            out.omega(a, b) = levi_pairing(f, ea, -apply_j(eb));
        }
    }
    // g(u, v) = omega(u, Jv); J in the real basis maps e_b to e_{b+n} and e_{b+n} to -e_b.
    for (Eigen::Index a = 0; a < 2 * n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            out.metric_g(a, b) = out.omega(a, b + n);
            out.metric_g(a, b + n) = -out.omega(a, b);
        }
    }
    out.hermitian_h.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < n; ++l) out.hermitian_h(j, l) = Complex(out.metric_g(j, l), out.omega(j, l));
    }
    out.grad_rho = grad_rho(f);
    out.reeb = apply_j(out.grad_rho) / f.norm2(out.grad_rho);
    return out;
}

/// alpha as a 1-form on the chart, evaluated at an arbitrary chart point along
/// an ambient direction.
inline double chart_alpha(const VarietyModel& v, const VectorC& z, const VectorC& direction) {
    const VectorC d = v.phi_jacobian(z) * direction;
    return 2.0 * v.phi(z).conjugate().cwiseProduct(d).sum().imag();
}

/// Relative deviation between omega from the pairing formula and a central
/// difference of d alpha(u, v) = u(alpha(v)) - v(alpha(u)) along constant
/// ambient fields, with step relative_step * |p|.
inline double omega_fd_deviation(const VarietyModel& v, const PointSample& s, const FormsAtPoint& forms,
                                 double relative_step = 1e-6) {
    const Eigen::Index n = s.tangent_basis.cols();
    const double h = relative_step * std::max(s.point.norm(), 1e-300);
    std::vector<VectorC> dirs;
    for (Eigen::Index a = 0; a < 2 * n; ++a) dirs.push_back(s.tangent_basis * basis_vector(n, a));
    auto derivative = [&](const VectorC& along, const VectorC& of) {
        return (chart_alpha(v, s.point + h * along, of) - chart_alpha(v, s.point - h * along, of)) / (2.0 * h);
    };
    const double scale = std::max(forms.omega.cwiseAbs().maxCoeff(), 1e-300);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < 2 * n; ++a) {
        for (Eigen::Index b = a + 1; b < 2 * n; ++b) {
            const double fd = derivative(dirs[a], dirs[b]) - derivative(dirs[b], dirs[a]);
            worst = std::max(worst, std::abs(fd - forms.omega(a, b)) / scale);
        }
    }
    return worst;
}

/// Real g-gradient of a real covector (given in the real basis).
inline VectorC real_gradient(const FormsAtPoint& forms, const VectorR& covector) {
    Eigen::LDLT<MatrixR> ldlt(forms.metric_g);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::SingularMetric, "metric g is not invertible at the sample point");
    return to_complex(ldlt.solve(covector));
}

inline VectorC holomorphic_gradient(const PointFrame& f, const Polynomial& phi) { return solve_hermitian(f, f.covector(phi)); }

inline VectorC holomorphic_gradient(const VarietyModel& v, const PointSample& s, const Polynomial& phi) {
    return holomorphic_gradient(make_frame(v, s), phi);
}

/// grad arg f = i grad f / conj(f).
inline VectorC angular_gradient(const PointFrame& frame, const Polynomial& f, Complex value) {
    return Complex(0.0, 1.0) * holomorphic_gradient(frame, f) / std::conj(value);
}

/// d arg f(w) = Im(df(w) / f).
inline double angular_derivative(const PointFrame& frame, const Polynomial& f, Complex value, const VectorC& w) {
    return (PointFrame::apply(frame.covector(f), w) / value).imag();
}

struct GradientIdentityResiduals {
    double defining = 0.0;   // max_u |h(grad phi, u) - dphi(u)| / (1 + |dphi|)
    double modulus = 0.0;    // grad |phi|^2 against 2 phi grad phi
    double argument = 0.0;   // grad arg phi against i grad phi / conj(phi); 0 when phi(p) = 0
    bool argument_defined = false;
};

/// Compares the complex-route gradients with gradients obtained by inverting
/// the real metric g on the real differentials.
inline GradientIdentityResiduals gradient_identities(const VarietyModel& v, const PointSample& s, const Polynomial& phi) {
    const PointFrame frame = make_frame(v, s);
    const FormsAtPoint forms = eval_forms(v, s);
    const VectorC a = frame.covector(phi);
    const VectorC grad = solve_hermitian(frame, a);
    const Complex value = phi(VarietyModel::span(s.point));
    const Eigen::Index n = frame.dim();
    GradientIdentityResiduals r;
    for (Eigen::Index k = 0; k < 2 * n; ++k) {
        const VectorC u = basis_vector(n, k);
        const Complex expected = PointFrame::apply(a, u);
        r.defining = std::max(r.defining, std::abs(frame.h(grad, u) - expected) / (1.0 + std::abs(expected)));
    }
    auto relative = [&](const VectorC& x, const VectorC& y) {
        return std::sqrt(frame.norm2(x - y)) / std::max({std::sqrt(frame.norm2(x)), std::sqrt(frame.norm2(y)), 1e-300});
    };
    const VectorC conj_value_a = std::conj(value) * a;
    const VectorC modulus_real = real_gradient(forms, 2.0 * real_part_covector(conj_value_a));
    r.modulus = relative(modulus_real, 2.0 * value * grad);
    if (std::abs(value) > 0.0) {
        r.argument_defined = true;
        const VectorC over = a / value;
        const VectorC argument_real = real_gradient(forms, imag_part_covector(over));
        r.argument = relative(argument_real, Complex(0.0, 1.0) * grad / std::conj(value));
    }
    return r;
}

/// Orthonormal real basis of the level tangent ker d rho inside the real tangent space.
inline MatrixR level_tangent_basis(const PointFrame& f) {
    const VectorR d = 2.0 * real_part_covector(f.d_rho_holomorphic());
    const auto m = d.size();
    Eigen::HouseholderQR<MatrixR> qr(d);
    const MatrixR q = qr.householderQ() * MatrixR::Identity(m, m);
    return q.rightCols(m - 1);
}

struct ReebContract {
    double alpha_residual = 0.0;   // |alpha(R) - 1|
    double omega_max = 0.0;        // max over level-tangent unit v of |omega(R, v)|
    double tangency = 0.0;         // |d rho(R)| / |d rho|
};

inline ReebContract reeb_contract(const VarietyModel& v, const PointSample& s) {
    const PointFrame f = make_frame(v, s);
    const FormsAtPoint forms = eval_forms(v, s);
    const VectorR r = to_real(forms.reeb);
    ReebContract out;
    out.alpha_residual = std::abs(forms.alpha.dot(r) - 1.0);
    const MatrixR level = level_tangent_basis(f);
    const VectorR row = r.transpose() * forms.omega * level;
    out.omega_max = row.cwiseAbs().maxCoeff();
    const VectorR d = 2.0 * real_part_covector(f.d_rho_holomorphic());
    out.tangency = std::abs(d.dot(r)) / std::max(d.norm(), 1e-300);
    return out;
}

/// w minus its h-orthogonal projection onto the complex line of grad rho.
inline VectorC xi_projection(const PointFrame& f, const VectorC& gr, const VectorC& w) {
    return w - gr * (f.h(gr, w) / f.norm2(gr));
}

inline VectorC xi_projection(const VarietyModel& v, const PointSample& s, const VectorC& w) {
    const PointFrame f = make_frame(v, s);
    return xi_projection(f, grad_rho(f), w);
}

struct ProjectionResiduals {
    double orthogonality = 0.0;   // |h(pr w, grad rho)| / (|pr w| |grad rho| + |w| |grad rho|)
    double d_rho = 0.0;           // |d rho(pr w)| / (|d rho| |w|)
    double d_c_rho = 0.0;         // |alpha(pr w)| / (|alpha| |w|)
    double idempotence = 0.0;     // |pr pr w - pr w| / |w|
};

inline ProjectionResiduals projection_residuals(const VarietyModel& v, const PointSample& s, const VectorC& w) {
    const PointFrame f = make_frame(v, s);
    const VectorC gr = grad_rho(f);
    const VectorC p = xi_projection(f, gr, w);
    const double wn = std::max(std::sqrt(f.norm2(w)), 1e-300);
    const double gn = std::sqrt(f.norm2(gr));
    // Euclidean norm of the real covectors in the real basis, against g-norms of w:
    // g is equivalent to the Euclidean form, so the ratios remain scale free.
    const VectorR d = 2.0 * real_part_covector(f.d_rho_holomorphic());
    const VectorR a = 2.0 * imag_part_covector(f.d_rho_holomorphic());
    const double euclid_w = std::max(w.norm(), 1e-300);
    ProjectionResiduals r;
    r.orthogonality = std::abs(f.h(p, gr)) / (gn * wn);
    r.d_rho = std::abs(d.dot(to_real(p))) / (std::max(d.norm(), 1e-300) * euclid_w);
    r.d_c_rho = std::abs(a.dot(to_real(p))) / (std::max(a.norm(), 1e-300) * euclid_w);
    r.idempotence = std::sqrt(f.norm2(xi_projection(f, gr, p) - p)) / wn;
    return r;
}

}  // namespace milnor::contact
