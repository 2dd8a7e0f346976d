// test_pptt.cpp — Choi states, negativity, and the PPT-time search.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pptmc/pptt.hpp"

#include <cmath>

using namespace pptmc;
using linalg::Complex;
using linalg::Matrix;

namespace {

gksl::GkslGenerator random_generator(int dim, std::uint64_t seed, double k = 0.0) {
    ensembles::RngStream rng(seed, 2);
    auto kossa = ensembles::sample_kossakowski(dim, static_cast<double>(dim), dim * dim - 1, rng);
    Matrix h;
    if (k != 0.0) {
        h = ensembles::sample_gue_hamiltonian(dim, rng);
    }
    return gksl::make_generator(1.0, k, std::move(h), std::move(kossa),
                                linalg::gell_mann_basis(dim));
}

Matrix random_density(int dim, std::uint64_t seed) {
    ensembles::RngStream rng(seed, 0);
    const Matrix g = ensembles::sample_ginibre(dim, dim, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

gksl::GkslGenerator null_generator() {
    ensembles::KossakowskiMatrix k;
    k.dim_d = 2;
    k.matrix = Matrix::Zero(3, 3);
    k.trace_target = 0.0;
    k.rank_bound = 1;
    return gksl::make_generator(1.0, 0.0, Matrix(), k, linalg::gell_mann_basis(2));
}

}  // namespace

TEST_CASE("max_entangled_choi: Bell projector, purity, negativity (D-1)/2") {
    const auto bell = pptt::max_entangled_choi(2);
    CHECK(std::abs(bell.matrix.trace().real() - 1.0) < 1e-14);
    CHECK((bell.matrix * bell.matrix - bell.matrix).cwiseAbs().maxCoeff() < 1e-14);  // pure
    CHECK(pptt::negativity(bell) == doctest::Approx(0.5).epsilon(1e-10));

    for (int dim = 2; dim <= 8; ++dim) {
        const auto choi = pptt::max_entangled_choi(dim);
        CHECK(std::abs(choi.matrix.trace().real() - 1.0) < 1e-12);
        CHECK(pptt::negativity(choi) ==
              doctest::Approx((dim - 1) / 2.0).epsilon(1e-10));
    }
    CHECK(pptt::negativity(pptt::max_entangled_choi(4)) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("negativity: separable and Werner states, dual formula agreement") {
    const Matrix rho_a = random_density(2, 1);
    const Matrix rho_b = random_density(2, 2);
    const Matrix product = linalg::kron(rho_a, rho_b);
    CHECK(pptt::negativity(product, 2, 2) <= 1e-12);

    // Werner state q|Φ⁺><Φ⁺| + (1−q)𝕀/4 at q = 1/2: 𝒩 = (3q−1)/4 = 1/8
    const auto bell = pptt::max_entangled_choi(2);
    const double q = 0.5;
    const Matrix werner = q * bell.matrix + (1.0 - q) * Matrix::Identity(4, 4) / 4.0;
    CHECK(pptt::negativity(werner, 2, 2) == doctest::Approx(0.125).epsilon(1e-10));

    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        const Matrix rho = random_density(9, seed);
        const double direct = pptt::negativity(rho, 3, 3);
        const double via_norm = pptt::negativity_trace_norm_form(rho, 3, 3);
        CHECK(std::abs(direct - via_norm) <= 1e-10);
    }
}

TEST_CASE("channel_to_choi: identity channel gives the maximally entangled state") {
    for (int dim : {2, 3}) {
        const Matrix choi =
            pptt::channel_to_choi(Matrix::Identity(dim * dim, dim * dim), dim);
        CHECK((choi - pptt::max_entangled_choi(dim).matrix).cwiseAbs().maxCoeff() < 1e-14);

        const Matrix pt =
            pptt::channel_to_choi_pt(Matrix::Identity(dim * dim, dim * dim), dim);
        CHECK((pt - linalg::partial_transpose(choi, dim, dim)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("evolve_choi: both methods agree and preserve state structure") {
    const auto gen = random_generator(3, 20);
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.method = propagators::Method::CaoLu;
    const Matrix via_caolu = pptt::evolve_choi(gen, 0.7, cfg);
    cfg.method = propagators::Method::Standard;
    const Matrix via_standard = pptt::evolve_choi(gen, 0.7, cfg);
    CHECK(linalg::trace_distance(via_caolu, via_standard) < 1e-5);
    CHECK(std::abs(via_caolu.trace().real() - 1.0) < 1e-5);
    CHECK(linalg::hermitian_eigenvalues(via_caolu)(0) >= -1e-10);
}

TEST_CASE("pptt_search: depolarizing qubit crosses at (3/4)ln3") {
    const double analytic = 0.75 * std::log(3.0);
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.x_max = 5.0;
    for (auto method : {propagators::Method::Standard, propagators::Method::CaoLu}) {
        cfg.method = method;
        const auto result = pptt::pptt_search(gksl::depolarizing_qubit(), cfg);
        CHECK_FALSE(result.censored);
        CHECK(std::abs(result.x_ppt - analytic) <= 2.0 * cfg.dx);
        // x_ppt sits on the grid
        const double steps = result.x_ppt / cfg.dx;
        CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    }
}

TEST_CASE("pptt_search: optional interpolation refines the crossing below grid resolution") {
    const double analytic = 0.75 * std::log(3.0);
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.x_max = 5.0;
    cfg.method = propagators::Method::Standard;
    const auto refined =
        pptt::pptt_search(gksl::depolarizing_qubit(), cfg, false, /*interpolate=*/true);
    CHECK_FALSE(refined.censored);
    CHECK(std::abs(refined.x_ppt - analytic) < 1e-5);
}

TEST_CASE("pptt_search: pure dephasing never becomes PPT") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.x_max = 3.0;
    for (auto method : {propagators::Method::Standard, propagators::Method::CaoLu}) {
        cfg.method = method;
        const auto result = pptt::pptt_search(gksl::dephasing_qubit(), cfg);
        CHECK(result.censored);
        CHECK(result.x_ppt == cfg.x_max);
    }
}

TEST_CASE("pptt_search: null generator stays maximally entangled") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-2;
    cfg.x_max = 1.0;
    cfg.method = propagators::Method::CaoLu;
    const auto result = pptt::pptt_search(null_generator(), cfg, /*record_trace=*/true);
    CHECK(result.censored);
    REQUIRE_FALSE(result.negativity_trace.empty());
    for (const auto& [x, neg] : result.negativity_trace) {
        CHECK(neg == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("pptt_search: negativity trace is non-increasing in x for the depolarizing case") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-2;
    cfg.x_max = 2.0;
    cfg.method = propagators::Method::CaoLu;
    const auto result = pptt::pptt_search(gksl::depolarizing_qubit(), cfg, true);
    REQUIRE(result.negativity_trace.size() > 10);
    for (std::size_t i = 1; i < result.negativity_trace.size(); ++i) {
        CHECK(result.negativity_trace[i].second <=
              result.negativity_trace[i - 1].second + 1e-12);
    }
    // analytic check of one interior point: 𝒩(x) = max(0, (3e^{-4x/3} - 1)/4)
    const auto& [x, neg] = result.negativity_trace[20];
    CHECK(neg ==
          doctest::Approx(std::max(0.0, (3.0 * std::exp(-4.0 * x / 3.0) - 1.0) / 4.0))
              .epsilon(1e-6));
}

TEST_CASE("pptt_search: horizon that is not a grid multiple ends with a partial step") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.x_max = 0.0105;  // ten full steps plus a half step
    for (auto method : {propagators::Method::Standard, propagators::Method::CaoLu}) {
        cfg.method = method;
        const auto result = pptt::pptt_search(gksl::dephasing_qubit(), cfg, true);
        CHECK(result.censored);
        CHECK(result.x_ppt == cfg.x_max);
        REQUIRE(result.negativity_trace.size() == 11);
        CHECK(result.negativity_trace.back().first == doctest::Approx(0.0105));
        // analytic dephasing negativity e^{-2x}/2 at the partial point
        CHECK(result.negativity_trace.back().second ==
              doctest::Approx(0.5 * std::exp(-2.0 * 0.0105)).epsilon(1e-6));
    }
}

TEST_CASE("pptt_search: D=6 generator end to end") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 2e-3;
    cfg.x_max = 8.0;
    const auto gen = random_generator(6, 66);
    cfg.method = propagators::Method::CaoLu;
    const auto r_cl = pptt::pptt_search(gen, cfg);
    cfg.method = propagators::Method::Standard;
    const auto r_std = pptt::pptt_search(gen, cfg);
    CHECK_FALSE(r_cl.censored);
    CHECK_FALSE(r_std.censored);
    CHECK(std::abs(r_cl.x_ppt - r_std.x_ppt) <= 5.0 * cfg.dx);
    CHECK(r_cl.x_ppt > 1.0);  // D=6 crossings sit well above the qubit scale
}

TEST_CASE("pptt_search: methods agree within 5 grid steps on random generators") {
    propagators::PropagatorConfig cfg;
    cfg.dx = 1e-3;
    cfg.x_max = 6.0;
    for (int dim : {2, 3}) {
        for (double k : {0.0, 1.0}) {
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto gen = random_generator(dim, 40 + 10 * dim + seed, k);
                cfg.method = propagators::Method::Standard;
                const auto r_std = pptt::pptt_search(gen, cfg);
                cfg.method = propagators::Method::CaoLu;
                const auto r_cl = pptt::pptt_search(gen, cfg);
                REQUIRE_FALSE(r_std.censored);
                REQUIRE_FALSE(r_cl.censored);
                CHECK(std::abs(r_std.x_ppt - r_cl.x_ppt) <= 5.0 * cfg.dx);
            }
        }
    }
}
