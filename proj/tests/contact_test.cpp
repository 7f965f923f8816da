#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "contact_oracles.hpp"
#include "milnor/contact/checks.hpp"

using namespace milnor;
using namespace milnor::contact;

namespace {

const Complex I(0.0, 1.0);

VarietyModel plane(std::size_t n) { return VarietyModel::smooth_chart(n); }

VarietyModel brieskorn() { return VarietyModel::hypersurface(parse_polynomial("z0^2 + z1^3 + z2^5", 3)); }

PointSample at(const VarietyModel& v, std::initializer_list<Complex> coords) {
    VectorC z(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index j = 0;
    for (const auto c : coords) z(j++) = c;
    return make_sample(v, z);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::InvalidArgument;
}

VectorC random_tangent(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> normal;
    VectorC c(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        c(j) = Complex(re, im);
    }
    return c;
}

}  // namespace

TEST(SamplePoints, SphereInPlane) {
    const auto v = plane(2);
    const auto points = sample_points(v, 0.01, 10, 0);
    ASSERT_EQ(points.size(), 10u);
    for (const auto& p : points) {
        EXPECT_NEAR(p.point.norm(), 0.1, 1e-12);
        EXPECT_LE(std::abs(p.rho_value - 0.01), 1e-10 * 0.01);
    }
}

TEST(SamplePoints, BrieskornPointsLieOnTheLevel) {
    const auto v = brieskorn();
    const auto points = sample_points(v, 0.01, 100, 11);
    ASSERT_EQ(points.size(), 100u);
    const auto& h = *v.defining();
    for (const auto& p : points) {
        const auto z = VarietyModel::span(p.point);
        EXPECT_LE(std::abs(h(z)), 1e-10 * h.magnitude(z));
        EXPECT_LE(std::abs(h(z)), 1e-10);
        EXPECT_LE(std::abs(p.rho_value - 0.01), 1e-10 * 0.01);
        // Orthonormal tangent basis annihilated by dh.
        EXPECT_LE((p.tangent_basis.adjoint() * p.tangent_basis - MatrixC::Identity(2, 2)).norm(), 1e-12);
        const auto grad = h.gradient(z);
        VectorC dh(3);
        for (int j = 0; j < 3; ++j) dh(j) = grad[static_cast<std::size_t>(j)];
        EXPECT_LE((dh.transpose() * p.tangent_basis).norm(), 1e-12 * dh.norm());
    }
}

TEST(SamplePoints, DegenerateLevelRejected) {
    EXPECT_EQ(code_of([] { sample_points(plane(2), 0.0, 10, 0); }), ErrorCode::SamplingFailed);
    EXPECT_EQ(code_of([] { sample_points(plane(2), -1.0, 10, 0); }), ErrorCode::SamplingFailed);
}

TEST(SamplePoints, DeterministicForFixedSeed) {
    const auto v = brieskorn();
    const auto a = sample_points(v, 0.01, 25, 5);
    const auto b = sample_points(v, 0.01, 25, 5);
    const auto c = sample_points(v, 0.01, 25, 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].point, b[i].point);
        EXPECT_EQ(a[i].tangent_basis, b[i].tangent_basis);
    }
    EXPECT_NE(a[0].point, c[0].point);
}

TEST(SamplePoints, NonImmersiveChartFails) {
    const auto folded = VarietyModel::smooth_chart(2, {parse_polynomial("z0", 2), parse_polynomial("2*z0", 2)});
    EXPECT_EQ(code_of([&] { sample_points(folded, 0.01, 5, 0); }), ErrorCode::SamplingFailed);
}

TEST(EvalForms, LineAtOne) {
    const auto v = plane(1);
    const auto s = at(v, {1.0});
    const auto forms = eval_forms(v, s);
    // basis: e0 = d/dx, e1 = d/dy = J d/dx
    EXPECT_NEAR(forms.omega(0, 1), 4.0, 1e-14);
    EXPECT_NEAR(forms.alpha(0), 0.0, 1e-14);
    EXPECT_NEAR(forms.alpha(1), 2.0, 1e-14);
    const auto rho = oracle::rug([](const auto& z) { return z; });
    Eigen::VectorXd p(2), ex(2), ey(2);
    p << 1, 0;
    ex << 1, 0;
    ey << 0, 1;
    EXPECT_NEAR(oracle::levi_from_hessian(rho, p, ex, ey, 1e-3), 4.0, 1e-8);
    EXPECT_NEAR(oracle::alpha_from_rho(rho, p, ey, 1e-4), 2.0, 1e-8);
}

TEST(EvalForms, NonImmersivePointRejected) {
    const auto cusp = VarietyModel::smooth_chart(1, {parse_polynomial("z0^2", 1), parse_polynomial("z0^3", 1)});
    EXPECT_EQ(code_of([&] { at(cusp, {0.0}); }), ErrorCode::DegenerateTangent);
    EXPECT_NO_THROW(at(cusp, {0.5}));
}

TEST(EvalForms, MatchesHessianOracleOnImmersedChart) {
    const auto v = VarietyModel::smooth_chart(2, {parse_polynomial("z0", 2), parse_polynomial("z1", 2),
                                                  parse_polynomial("z0*z1 + z0^2", 2)});
    const auto rho = oracle::rug([](const std::vector<Complex>& z) {
        return std::vector<Complex>{z[0], z[1], z[0] * z[1] + z[0] * z[0]};
    });
    for (const auto& s : sample_points(v, 0.5, 20, 2)) {
        const auto forms = eval_forms(v, s);
        const Eigen::VectorXd p = oracle::realify(s.point);
        for (Eigen::Index a = 0; a < 4; ++a) {
            const Eigen::VectorXd ua = oracle::realify(s.tangent_basis * basis_vector(2, a));
            EXPECT_NEAR(forms.alpha(a), oracle::alpha_from_rho(rho, p, ua, 1e-5), 1e-7);
            for (Eigen::Index b = 0; b < 4; ++b) {
                const Eigen::VectorXd ub = oracle::realify(s.tangent_basis * basis_vector(2, b));
                EXPECT_NEAR(forms.omega(a, b), oracle::levi_from_hessian(rho, p, ua, ub, 1e-4), 1e-6);
            }
        }
    }
}

TEST(EvalForms, MatchesAmbientFormOnHypersurface) {
    const auto v = brieskorn();
    for (const auto& s : sample_points(v, 0.01, 20, 3)) {
        const auto forms = eval_forms(v, s);
        for (Eigen::Index a = 0; a < 4; ++a) {
            for (Eigen::Index b = 0; b < 4; ++b) {
                // rho = |z|^2 on C^3: omega(u, w) = 4 Im <u, w>.
                const VectorC u = s.tangent_basis * basis_vector(2, a);
                const VectorC w = s.tangent_basis * basis_vector(2, b);
                EXPECT_NEAR(forms.omega(a, b), 4.0 * u.dot(w).imag(), 1e-12);
            }
        }
    }
}

TEST(EvalForms, AlgebraicSymmetries) {
    const auto v = brieskorn();
    for (const auto& s : sample_points(v, 0.01, 50, 4)) {
        const auto f = eval_forms(v, s);
        const double scale = f.omega.cwiseAbs().maxCoeff();
        EXPECT_LE((f.omega + f.omega.transpose()).cwiseAbs().maxCoeff(), 1e-10 * scale);
        EXPECT_LE((f.metric_g - f.metric_g.transpose()).cwiseAbs().maxCoeff(), 1e-10 * scale);
        MatrixR j = MatrixR::Zero(4, 4);
        j(2, 0) = j(3, 1) = 1.0;
        j(0, 2) = j(1, 3) = -1.0;
        EXPECT_LE((j.transpose() * f.metric_g * j - f.metric_g).cwiseAbs().maxCoeff(), 1e-10 * scale);
        const auto frame = make_frame(v, s);
        EXPECT_LE((f.hermitian_h - frame.hermitian).cwiseAbs().maxCoeff(), 1e-10 * scale);
        for (Eigen::Index a = 0; a < 4; ++a) EXPECT_EQ(f.omega(a, a), 0.0);
        EXPECT_LE(omega_fd_deviation(v, s, f), 1e-5);
    }
}

TEST(EvalForms, FiniteDifferenceAgreementOnChart) {
    const auto v = VarietyModel::smooth_chart(2, {parse_polynomial("z0", 2), parse_polynomial("z1^2 + z0*z1", 2),
                                                  parse_polynomial("z1", 2)});
    for (const auto& s : sample_points(v, 0.01, 50, 9)) EXPECT_LE(omega_fd_deviation(v, s, eval_forms(v, s)), 1e-5);
}

TEST(CheckSpsh, FlatPlaneHasConstantLeviQuotient) {
    const auto v = plane(2);
    const auto report = check_spsh(v, sample_points(v, 0.01, 50, 0), 20);
    EXPECT_GE(report.min_quotient, 2.0);
    EXPECT_NEAR(report.min_quotient, 4.0, 1e-12);
    EXPECT_NEAR(report.min_eigenvalue, 4.0, 1e-12);
}

TEST(CheckSpsh, BrieskornIsStrictlyPlurisubharmonic) {
    const auto v = brieskorn();
    const auto report = check_spsh(v, sample_points(v, 0.01, 500, 7), 10);
    EXPECT_GT(report.min_quotient, 0.0);
    EXPECT_GT(report.min_eigenvalue, 0.0);
    EXPECT_GE(report.min_quotient, report.min_eigenvalue - 1e-12);
}

TEST(HolomorphicGradient, DefiningPropertyOnTheLine) {
    const auto v = plane(1);
    const auto s = at(v, {1.0});
    const auto frame = make_frame(v, s);
    const VectorC grad = holomorphic_gradient(v, s, parse_polynomial("z0", 1));
    EXPECT_NEAR(std::abs(frame.h(grad, basis_vector(1, 0)) - 1.0), 0.0, 1e-14);
    EXPECT_EQ(holomorphic_gradient(v, s, parse_polynomial("3", 1)).norm(), 0.0);
}

TEST(HolomorphicGradient, ProductIdentitiesAtOneOne) {
    const auto v = plane(2);
    const auto s = at(v, {1.0, 1.0});
    const auto r = gradient_identities(v, s, parse_polynomial("z0*z1", 2));
    EXPECT_TRUE(r.argument_defined);
    EXPECT_LE(r.defining, 1e-8);
    EXPECT_LE(r.modulus, 1e-8);
    EXPECT_LE(r.argument, 1e-8);
}

TEST(HolomorphicGradient, IdentitiesAtSamples) {
    const auto v = brieskorn();
    const auto f = parse_polynomial("z0 + 2*z1^2 - z2", 3);
    for (const auto& s : sample_points(v, 0.01, 50, 8)) {
        const auto r = gradient_identities(v, s, f);
        EXPECT_LE(r.defining, 1e-8);
        EXPECT_LE(r.modulus, 1e-8);
        EXPECT_LE(r.argument, 1e-8);
    }
}

TEST(ReebField, LineAtOne) {
    const auto v = plane(1);
    const auto frame = make_frame(v, at(v, {1.0}));
    const VectorC r = reeb_field(frame);
    EXPECT_NEAR(std::abs(r(0) - 0.5 * I), 0.0, 1e-15);
    EXPECT_NEAR(frame.alpha(r), 1.0, 1e-15);
}

TEST(ReebField, PlaneNormalizationAndScaling) {
    const auto v = plane(2);
    for (const double scale : {1.0, 2.0}) {
        const auto s = at(v, {scale, 0.0});
        const auto c = reeb_contract(v, s);
        EXPECT_LE(c.alpha_residual, 1e-9);
        EXPECT_LE(c.omega_max, 1e-8);
        EXPECT_LE(c.tangency, 1e-12);
    }
}

TEST(ReebField, ContractOnBrieskorn) {
    const auto v = brieskorn();
    for (const auto& s : sample_points(v, 0.01, 100, 1)) {
        const auto c = reeb_contract(v, s);
        EXPECT_LE(c.alpha_residual, 1e-9);
        EXPECT_LE(c.omega_max, 1e-8);
        EXPECT_LE(c.tangency, 1e-10);
    }
}

TEST(ReebField, ZeroGradientAtOrigin) {
    const auto v = plane(2);
    EXPECT_EQ(code_of([&] { reeb_field(make_frame(v, at(v, {0.0, 0.0}))); }), ErrorCode::ZeroGradient);
}

TEST(XiProjection, KillsTheComplexLine) {
    const auto v = plane(2);
    const auto s = at(v, {Complex(0.06, 0.02), Complex(-0.05, 0.07)});
    const auto frame = make_frame(v, s);
    const VectorC gr = grad_rho(frame);
    EXPECT_LE(xi_projection(v, s, gr).norm(), 1e-12 * gr.norm());
    EXPECT_LE(xi_projection(v, s, I * gr).norm(), 1e-12 * gr.norm());
    VectorC w(2);
    w << -std::conj(s.point(1)), std::conj(s.point(0));  // h-orthogonal to grad rho = p / 2
    EXPECT_LE((xi_projection(v, s, w) - w).norm(), 1e-10 * w.norm());
}

TEST(XiProjection, ContractsAtSamples) {
    std::mt19937_64 rng(12);
    const auto v = brieskorn();
    for (const auto& s : sample_points(v, 0.01, 100, 2)) {
        const auto r = projection_residuals(v, s, random_tangent(rng, 2));
        EXPECT_LE(r.orthogonality, 1e-8);
        EXPECT_LE(r.d_rho, 1e-8);
        EXPECT_LE(r.d_c_rho, 1e-8);
        EXPECT_LE(r.idempotence, 1e-8);
    }
}

TEST(RescaledReeb, IdentityOnPlane) {
    const auto v = plane(2);
    const auto samples = sample_points(v, 0.01, 100, 0);
    for (const char* text : {"z0*z1", "z0^2 + z1^3"}) {
        const auto f = parse_polynomial(text, 2);
        for (const double c : {0.0, 1.0, 10.0}) {
            double worst = 0.0;
            for (const auto& s : samples) worst = std::max(worst, rescaled_reeb_identity(v, f, c, s).residual);
            EXPECT_LE(worst, c == 0.0 ? 1e-12 : 1e-6) << text << " c=" << c;
        }
    }
}

TEST(RescaledReeb, IdentityOnBrieskorn) {
    const auto v = brieskorn();
    const auto f = parse_polynomial("z0 + z1", 3);
    for (const auto& s : sample_points(v, 0.01, 50, 3)) {
        EXPECT_LE(rescaled_reeb_identity(v, f, 5.0, s).residual, 1e-6);
    }
}

TEST(RescaledReeb, BindingRejected) {
    const auto v = plane(2);
    EXPECT_EQ(code_of([&] { rescaled_reeb_identity(v, parse_polynomial("z0*z1", 2), 1.0, at(v, {0.1, 0.0})); }),
              ErrorCode::OnBinding);
}

TEST(Adaptation, LinearFunctionNeedsNoRescaling) {
    const auto v = plane(2);
    const auto f = parse_polynomial("z0", 2);
    // d theta(R) = Im(dz0(i z / 2 eps) / z0) = 1 / (2 eps) at every point off the binding.
    for (const auto& s : sample_points(v, 0.01, 10000, 0)) {
        if (on_binding(f, s.point)) continue;
        const auto d = angular_data(make_frame(v, s), f);
        ASSERT_NEAR(d.d_theta_reeb, 50.0, 1e-9);
    }
    const auto report = find_adaptation_constant(v, f, 0.01, std::nullopt, 10000, 0);
    EXPECT_EQ(report.m, 0.0);
    EXPECT_EQ(report.c, 0.0);
    EXPECT_TRUE(report.verified);
    EXPECT_EQ(report.mesh, 10000u);
}

TEST(Adaptation, CuspVerifiedForComputedConstant) {
    const auto v = plane(2);
    const auto report = find_adaptation_constant(v, parse_polynomial("z0^2 + z1^3", 2), 0.01, std::nullopt, 2000, 0);
    EXPECT_TRUE(report.verified);
    EXPECT_GE(report.c, 0.0);
    EXPECT_GT(report.min_d_theta_rescaled, 0.0);
}

TEST(Adaptation, EmptyMeshRejected) {
    EXPECT_EQ(code_of([] { find_adaptation_constant(plane(2), parse_polynomial("z0", 2), 0.01, std::nullopt, 0, 0); }),
              ErrorCode::InvalidMesh);
}

TEST(LambdaCone, LineIsExactlyProportional) {
    const auto v = plane(1);
    const auto samples = sample_points(v, 0.25, 20, 0);
    const auto report = lambda_cone_check(v, parse_polynomial("z0", 1), samples);
    EXPECT_EQ(report.qualifying, 20u);
    EXPECT_TRUE(report.all_positive);
    EXPECT_NEAR(report.min_re_lambda, 1.0 / (2.0 * 0.25), 1e-12);
    EXPECT_LE(report.max_abs_arg, 1e-12);
}

TEST(LambdaCone, EmptyQualifyingSetIsAReport) {
    const auto v = plane(2);
    const auto report = lambda_cone_check(v, parse_polynomial("z0*z1", 2), sample_points(v, 0.01, 50, 0), 1e-12);
    EXPECT_EQ(report.qualifying, 0u);
    EXPECT_TRUE(report.all_positive);
}

TEST(LambdaCone, ProductPositiveWhereProportional) {
    const auto v = plane(2);
    const auto report = lambda_cone_check(v, parse_polynomial("z0*z1", 2), sample_points(v, 1e-4, 500, 0), 1e-1);
    EXPECT_TRUE(report.all_positive);
    if (report.qualifying > 0) {
        EXPECT_GT(report.min_re_lambda, 0.0);
    }
}

TEST(PrincipalArg, BranchIsHalfOpen) {
    EXPECT_EQ(principal_arg(Complex(-1.0, -0.0)), M_PI);
    EXPECT_EQ(principal_arg(Complex(-1.0, 0.0)), M_PI);
}

TEST(OpenbookCriterion, LinearFunction) {
    const auto v = plane(2);
    const auto report = openbook_criterion_check(v, parse_polynomial("z0", 2), 0.01, std::nullopt, 2000, 0);
    EXPECT_GT(report.outer_points, 0u);
    EXPECT_GT(report.inner_points, 0u);
    EXPECT_GT(report.min_d_theta, 0.0);
    EXPECT_GT(report.min_df, 0.0);
    EXPECT_TRUE(report.holds());
}

TEST(OpenbookCriterion, ConstantFunctionFails) {
    const auto report = openbook_criterion_check(plane(2), parse_polynomial("2", 2), 0.01, 1.0, 200, 0);
    EXPECT_EQ(report.outer_points, 200u);
    EXPECT_EQ(report.min_d_theta, 0.0);
    EXPECT_FALSE(report.holds());
}

TEST(OpenbookCriterion, EtaAboveMaximumLeavesOuterSetEmpty) {
    const auto report = openbook_criterion_check(plane(2), parse_polynomial("z0", 2), 0.01, 1.0, 200, 0);
    EXPECT_TRUE(report.outer_vacuous());
    EXPECT_EQ(report.inner_points, 200u);
    EXPECT_TRUE(report.holds());
}

TEST(RescaledReeb, KernelRouteSeesTheCorrectionTerm) {
    // With the correction term's sign reversed the two sides separate far beyond
    // the tolerance, so agreement is not an artefact of S_c being negligible.
    const auto v = plane(2);
    const auto f = parse_polynomial("z0^2 + z1^3", 2);
    const double c = 1e5;
    double worst_flipped = 0.0;
    for (const auto& s : sample_points(v, 0.01, 100, 0)) {
        const auto r = rescaled_reeb_identity(v, f, c, s);
        EXPECT_LE(r.residual, 1e-6);
        const auto frame = make_frame(v, s);
        const auto d = angular_data(frame, f);
        const double flipped = std::exp(c * d.modulus2) * (d.d_theta_reeb - 2.0 * c * d.modulus2 * frame.norm2(d.xi_part));
        worst_flipped = std::max(worst_flipped, std::abs(r.lhs - flipped) / (1.0 + std::abs(r.lhs)));
    }
    EXPECT_GT(worst_flipped, 1e-2);
}

TEST(Orientation, ContactVolumePositiveOnOrientedLevelFrame) {
    // (grad rho, R, w, Jw) with w in xi is complex-positive; dropping the outward
    // normal gives the boundary orientation, on which alpha ^ d alpha must be positive.
    std::mt19937_64 rng(31);
    const auto v = brieskorn();
    for (const auto& s : sample_points(v, 0.01, 100, 6)) {
        const auto frame = make_frame(v, s);
        const auto forms = eval_forms(v, s);
        const VectorC w = xi_projection(v, s, random_tangent(rng, 2));
        const VectorC jw = apply_j(w);
        const VectorC r = forms.reeb;
        auto alpha = [&](const VectorC& x) { return frame.alpha(x); };
        auto omega = [&](const VectorC& x, const VectorC& y) { return to_real(x).dot(forms.omega * to_real(y)); };
        const double volume = alpha(r) * omega(w, jw) - alpha(w) * omega(r, jw) + alpha(jw) * omega(r, w);
        EXPECT_GT(volume, 0.0);
        EXPECT_NEAR(volume, frame.norm2(w), 1e-9 * frame.norm2(w));
    }
}
