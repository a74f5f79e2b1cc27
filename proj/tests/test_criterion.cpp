#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "zeno/criterion.hpp"
#include "zeno/error.hpp"
#include "zeno/filter_quadrature.hpp"

using namespace zeno;

namespace {

constexpr double kPi = std::numbers::pi;

Verdict verdict(const SystemConfig& c) { return classify(c).verdict; }

} // namespace

TEST(Classify, LorentzianResonanceIsZeno) {
    const auto c = classify(SystemConfig{10.0, Lorentzian{0.01, 10.0, 1.0}});
    EXPECT_EQ(c.verdict, Verdict::QZE);
    EXPECT_DOUBLE_EQ(c.g2, -2.0 * 0.01);
    EXPECT_DOUBLE_EQ(c.gamma0, 2.0 * kPi * 0.01);
}

TEST(Classify, LorentzianDetuningFlipsAtLambdaOverSqrt3) {
    // 3Ω² > Λ² is anti-Zeno
    EXPECT_EQ(verdict(SystemConfig{8.0, Lorentzian{0.01, 10.0, 1.0}}), Verdict::QAZE);
    EXPECT_EQ(verdict(SystemConfig{10.0 - 0.5, Lorentzian{0.01, 10.0, 1.0}}), Verdict::QZE);
    EXPECT_EQ(verdict(SystemConfig{10.0 - 0.6, Lorentzian{0.01, 10.0, 1.0}}), Verdict::QAZE);
}

TEST(Classify, HydrogenlikeCutoffSplit) {
    EXPECT_EQ(verdict(SystemConfig{1.0, Hydrogenlike{1e-3, 4.0}}), Verdict::QZE);
    EXPECT_EQ(verdict(SystemConfig{1.0, Hydrogenlike{1e-3, 1.0}}), Verdict::QAZE);
}

TEST(Classify, PowerLawOhmicSplit) {
    for (double s : {0.5, 0.8}) EXPECT_EQ(verdict(SystemConfig{1.0, PowerLaw{0.01, s, 10.0}}), Verdict::QZE) << s;
    for (double s : {1.5, 2.5, 3.5}) EXPECT_EQ(verdict(SystemConfig{1.0, PowerLaw{0.01, s, 10.0}}), Verdict::QAZE) << s;
    const auto ohmic = classify(SystemConfig{1.0, PowerLaw{0.01, 1.0, 10.0}});
    EXPECT_EQ(ohmic.verdict, Verdict::Indeterminate);
    EXPECT_TRUE(ohmic.validity.has(ValidityWarning::G2NearZero));
}

TEST(Classify, ExplicitToleranceOverridesDefault) {
    const SystemConfig ohmic{1.0, PowerLaw{0.01, 1.0, 10.0}};
    EXPECT_EQ(classify(ohmic, 0.0).verdict, Verdict::QZE);
    EXPECT_EQ(classify(SystemConfig{10.0, Lorentzian{}}, 1.0).verdict, Verdict::Indeterminate);
}

TEST(Classify, DegenerateCurvatureIsIndeterminateNotAnError) {
    // exactly at the inflection Ω = Λ/√3 up to rounding
    const SystemConfig c{10.0 - 1.0 / std::sqrt(3.0), Lorentzian{0.01, 10.0, 1.0}};
    EXPECT_NO_THROW(classify(c));
    EXPECT_EQ(classify(c).verdict, Verdict::Indeterminate);
}

TEST(Classify, VerdictsInvariantUnderCouplingScale) {
    const std::vector<SystemConfig> configs = {
        {10.0, Lorentzian{0.01, 10.0, 1.0}}, {8.0, Lorentzian{0.01, 10.0, 1.0}}, {1.0, Hydrogenlike{1e-3, 4.0}},
        {1.0, Hydrogenlike{1e-3, 1.0}},     {1.0, PowerLaw{0.01, 0.5, 10}},    {1.0, PowerLaw{0.01, 1.0, 10}},
        {1.0, PowerLaw{0.01, 1.5, 10}},
    };
    for (const auto& c : configs) {
        for (double k : {1e-3, 0.37, 8.0, 1e4}) {
            EXPECT_EQ(verdict(c), verdict(SystemConfig{c.delta, scale_coupling(c.spectrum, k)})) << model_name(c.spectrum);
        }
    }
}

TEST(Validity, Warnings) {
    const auto far = validity_check(SystemConfig{0.5, PowerLaw{0.01, 0.5, 10.0}});
    EXPECT_TRUE(far.has(ValidityWarning::DeltaFarBelowCutoff));
    ASSERT_TRUE(far.delta_over_cutoff.has_value());
    EXPECT_DOUBLE_EQ(*far.delta_over_cutoff, 0.05);

    const auto centroid_far = validity_check(SystemConfig{0.5, Lorentzian{0.01, 10.0, 1.0}});
    EXPECT_TRUE(centroid_far.has(ValidityWarning::DeltaFarBelowCentroid));
    EXPECT_FALSE(centroid_far.delta_over_cutoff.has_value());

    const auto strong = validity_check(SystemConfig{1.0, Lorentzian{1.0, 1.0, 1.0}});
    EXPECT_TRUE(strong.has(ValidityWarning::StrongCouplingSuspect));

    const auto fine = validity_check(SystemConfig{1.0, Hydrogenlike{1e-3, 4.0}});
    EXPECT_TRUE(fine.warnings.empty());
}

TEST(GammaApprox, MainLobeFormula) {
    const SystemConfig c{8.0, Lorentzian{0.01, 10.0, 1.0}};
    const double tau = 1.3;
    const auto e = gamma_approx(c, tau);
    const double g = 0.01 / 5.0;
    const double g2 = 2.0 * 0.01 * (3.0 * 4.0 - 1.0) / 125.0;
    EXPECT_NEAR(e.gamma_eff, 2.0 * kPi * g + 4.0 * kPi / (tau * tau) * g2, 1e-16);
    EXPECT_EQ(e.method, Method::SecondDerivApprox);
    EXPECT_EQ(e.err_estimate, 0.0);
}

TEST(GammaApprox, MayGoNegativeAtShortTau) {
    const auto e = gamma_approx(SystemConfig{10.0, Lorentzian{0.01, 10.0, 1.0}}, 0.1);
    EXPECT_LT(e.gamma_eff, 0.0);
    ASSERT_FALSE(e.warnings.empty());
    EXPECT_EQ(e.warnings[0], EstimateWarning::PracticalRegime);
}

TEST(Monotonicity, SignOfCurvature) {
    EXPECT_EQ(monotonicity_sign(SystemConfig{10.0, Lorentzian{}}), Monotonicity::IncreasingToGamma0);
    EXPECT_EQ(monotonicity_sign(SystemConfig{8.0, Lorentzian{}}), Monotonicity::DecreasingToGamma0);
    EXPECT_EQ(monotonicity_sign(SystemConfig{1.0, Tabulated::from_points({{0, 1}, {1, 1}, {2, 1}, {3, 1}})}),
              Monotonicity::Flat);
}

TEST(Monotonicity, AgreesWithApproximationSlope) {
    for (const SystemConfig& c : {SystemConfig{10.0, Lorentzian{}}, SystemConfig{8.0, Lorentzian{}}}) {
        const double a = gamma_approx(c, 3.0).gamma_eff;
        const double b = gamma_approx(c, 4.0).gamma_eff;
        EXPECT_EQ(b > a, monotonicity_sign(c) == Monotonicity::IncreasingToGamma0);
    }
}

TEST(Boundary, HydrogenlikeCutoff) {
    const auto family = make_family(SystemConfig{1.0, Hydrogenlike{1e-3, 4.0}}, SweptParameter::OmegaC);
    const auto r = boundary_find(family, {1.0, 4.0});
    EXPECT_NEAR(r.parameter / std::sqrt(7.0 / 3.0), 1.0, 1e-9);
    EXPECT_LT(r.g2_lo * r.g2_hi, 0.0);
    EXPECT_GT(r.iterations, 0);
}

TEST(Boundary, LorentzianDetuning) {
    const auto family = make_family(SystemConfig{10.0, Lorentzian{0.01, 10.0, 1.0}}, SweptParameter::Delta);
    const auto r = boundary_find(family, {8.5, 10.0});
    EXPECT_NEAR(10.0 - r.parameter, 1.0 / std::sqrt(3.0), 1e-9);
}

TEST(Boundary, PowerLawExponentCrossesNearOhmic) {
    // exact G'' vanishes where s(s−1) − 2su + u² = 0 with u = Δ/ωc
    const auto family = make_family(SystemConfig{1.0, PowerLaw{0.01, 1.0, 10.0}}, SweptParameter::S);
    const auto r = boundary_find(family, {0.5, 1.5});
    const double u = 0.1;
    const double expect = 0.5 * ((1.0 + 2.0 * u) + std::sqrt((1.0 + 2.0 * u) * (1.0 + 2.0 * u) - 4.0 * u * u));
    EXPECT_NEAR(r.parameter, expect, 1e-9);
}

TEST(Boundary, NoSignChange) {
    const auto family = make_family(SystemConfig{1.0, Hydrogenlike{1e-3, 4.0}}, SweptParameter::OmegaC);
    try {
        boundary_find(family, {2.0, 4.0});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoSignChange);
    }
    EXPECT_THROW(boundary_find(family, {4.0, 2.0}), Error);
}

TEST(Boundary, FamilyParameterMustExist) {
    try {
        make_family(SystemConfig{1.0, Hydrogenlike{}}, SweptParameter::S);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ModelMismatch);
    }
    EXPECT_THROW(make_family(SystemConfig{1.0, PowerLaw{}}, SweptParameter::Lam), Error);
    EXPECT_NO_THROW(make_family(SystemConfig{1.0, PowerLaw{}}, SweptParameter::OmegaC));
}

TEST(Names, RoundTrip) {
    for (SweptParameter p : {SweptParameter::Delta, SweptParameter::Omega0, SweptParameter::Lam, SweptParameter::OmegaC,
                             SweptParameter::S}) {
        EXPECT_EQ(swept_parameter_from_string(to_string(p)), p);
    }
    EXPECT_FALSE(swept_parameter_from_string("eta").has_value());
    EXPECT_EQ(to_string(Verdict::Indeterminate), "INDETERMINATE");
}
