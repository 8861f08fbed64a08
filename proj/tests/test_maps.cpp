#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "tlap/maps.hpp"

using namespace tlap;

namespace {

constexpr double kPi = 3.14159265358979323846;

// central-difference oracle on map values
Mat fd_grad_oracle(const MapSource& src, const Vec& x, double h) {
    const int N = src.dims().second, n = src.dims().first;
    Mat g(N, n);
    for (int i = 0; i < n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Vec up = src.eval_jet(xp).value;
        const Vec um = src.eval_jet(xm).value;
        for (int a = 0; a < N; ++a) g(a, i) = (up[a] - um[a]) / (2.0 * h);
    }
    return g;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

}  // namespace

TEST_CASE("gallery values match the closed forms") {
    CHECK(gallery("example2")->eval_jet({1.0, 0.0}).value == Vec{1.0, 1.0});
    const Vec kv = gallery("k_family")->eval_jet({0.1, 0.1}).value;
    CHECK(kv[0] == 0.0);
    CHECK(kv[1] == 0.0);
    CHECK(gallery("aronsson")->eval_jet({1.0, 1.0}).value[0] == doctest::Approx(0.0));
}

TEST_CASE("example2 jet against a finite-difference oracle") {
    const MapPtr u = gallery("example2");
    const Jet2 jet = u->eval_jet({1.0, 0.0});
    CHECK(jet.grad(0, 0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(jet.grad(1, 0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(jet.grad(0, 1) == 0.0);
    CHECK(jet.grad(1, 1) == 0.0);
    const Mat fd = fd_grad_oracle(*u, {0.5, 0.0}, 1e-4);
    CHECK(Mat::max_abs_diff(fd, u->eval_jet({0.5, 0.0}).grad) < 1e-6);
}

TEST_CASE("k_family jet columns") {
    const Jet2 jet = gallery("k_family")->eval_jet({0.0, kPi / 8.0});
    CHECK(jet.grad(0, 1) == doctest::Approx(std::cos(kPi / 8.0)).epsilon(1e-14));
    CHECK(jet.grad(1, 1) == doctest::Approx(std::sin(kPi / 8.0)).epsilon(1e-14));
    CHECK(jet.grad(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    // Lap(u) = -u for the unit-slope profile
    const Jet2 j2 = gallery("k_family")->eval_jet({0.11, -0.07});
    for (int a = 0; a < 2; ++a)
        CHECK(j2.hess[a](0, 0) + j2.hess[a](1, 1) ==
              doctest::Approx(-j2.value[a]).epsilon(1e-12));
}

TEST_CASE("paraboloid Laplacian comes out of the Hessian trace") {
    const Jet2 jet = gallery("paraboloid")->eval_jet({0.0, 0.0});
    Vec lap(3, 0.0);
    for (int a = 0; a < 3; ++a) lap[a] = jet.hess[a](0, 0) + jet.hess[a](1, 1);
    CHECK(lap == Vec{0.0, 0.0, 4.0});
}

TEST_CASE("example2 is C^2 across the seam") {
    const Jet2 jet = gallery("example2")->eval_jet({0.0, 0.3});
    CHECK(jet.grad.frobenius() == 0.0);
    CHECK(jet.hess[0].frobenius() == 0.0);
    CHECK(jet.hess[1].frobenius() == 0.0);
    CHECK(jet.value == Vec{0.0, 0.0});
}

TEST_CASE("declared singular sets and domain checks throw") {
    CHECK_THROWS_AS(gallery("aronsson")->eval_jet({0.0, 0.5}), SingularPointError);
    CHECK_THROWS_AS(gallery("aronsson")->eval_jet({0.5, 0.0}), SingularPointError);
    CHECK_THROWS_AS(gallery("example2")->eval_jet({2.0, 0.0}), DomainError);
    // off the validity strip
    BoxDomain wide{{-2.0, -2.0}, {2.0, 2.0}, {5, 5}};
    const MapPtr custom = make_k_family_custom([](double t) { return t; },
                                               [](double) { return 1.0; }, wide, "k_custom");
    CHECK_NOTHROW(custom->eval_jet({-1.0, 1.0}));
    CHECK_THROWS_AS(gallery("k_family")->eval_jet({-0.29, 0.29}), DomainError);
}

TEST_CASE("custom profile agrees with the closed-form k_family") {
    const MapPtr closed = gallery("k_family");
    const MapPtr custom = make_k_family_custom(
        [](double t) { return t; }, [](double) { return 1.0; },
        BoxDomain{{-0.3, -0.3}, {0.3, 0.3}, {5, 5}}, "k_custom");
    for (const Vec x : {Vec{0.1, -0.05}, Vec{-0.2, 0.1}, Vec{0.0, 0.25}}) {
        const Jet2 a = closed->eval_jet(x), b = custom->eval_jet(x);
        CHECK(norm(vsub(a.value, b.value)) < 1e-11);
        CHECK(Mat::max_abs_diff(a.grad, b.grad) < 1e-14);
        for (int c = 0; c < 2; ++c) CHECK(Mat::max_abs_diff(a.hess[c], b.hess[c]) < 1e-14);
    }
}

TEST_CASE("custom nonlinear profile differentiates its own value integral") {
    const MapPtr src = make_k_family_custom(
        [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
        BoxDomain{{-1.0, -1.0}, {1.0, 1.0}, {5, 5}}, "k_t2");
    const Vec x{0.2, 0.6};
    const Mat fd = fd_grad_oracle(*src, x, 1e-5);
    CHECK(Mat::max_abs_diff(fd, src->eval_jet(x).grad) < 1e-8);
}

TEST_CASE("fd_jet is exact on affine and quadratic grids") {
    // u(x,y) = (x, y) sampled exactly
    BoxDomain box{{0.0, 0.0}, {1.0, 1.0}, {5, 5}};
    GridMap grid;
    grid.domain = box;
    grid.N = 2;
    grid.spacing = box.spacings();
    grid.samples.assign(box.total(), Vec());
    for_each_index(box.resolution, [&](const std::vector<int>& idx) {
        const Vec p = box.point(idx);
        grid.samples[box.flat_index(idx)] = {p[0], p[1]};
    });
    const Jet2 jet = fd_jet(grid, {2, 2});
    CHECK(Mat::max_abs_diff(jet.grad, Mat::identity(2)) < 1e-14);
    CHECK(jet.hess[0].frobenius() < 1e-12);
    CHECK(jet.hess[1].frobenius() < 1e-12);

    // u(x,y) = x^2, exact second difference
    GridMap quad = grid;
    quad.N = 1;
    for_each_index(box.resolution, [&](const std::vector<int>& idx) {
        const Vec p = box.point(idx);
        quad.samples[box.flat_index(idx)] = {p[0] * p[0]};
    });
    const Jet2 qjet = fd_jet(quad, {2, 2});
    CHECK(qjet.hess[0](0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(qjet.hess_sym_defect() == 0.0);

    CHECK_THROWS_AS(fd_jet(grid, {0, 2}), InvalidInput);
}

TEST_CASE("fd gradient of sin(x) converges at second order") {
    auto grad_err = [](int res) {
        BoxDomain box{{0.0}, {1.0}, {res}};
        GridMap g;
        g.domain = box;
        g.N = 1;
        g.spacing = box.spacings();
        g.samples.assign(box.total(), Vec());
        for (int i = 0; i < res; ++i) g.samples[i] = {std::sin(box.point({i})[0])};
        double err = 0.0;
        for (int i = 1; i + 1 < res; ++i) {
            const Jet2 jet = fd_jet(g, {i});
            err = std::max(err, std::abs(jet.grad(0, 0) - std::cos(jet.point[0])));
        }
        return err;
    };
    const double e1 = grad_err(11), e2 = grad_err(21);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("fd jets converge to analytic jets at second order") {
    const MapPtr u = gallery("harmonic");
    auto jet_err = [&](int res) {
        BoxDomain box{{0.1, 0.1}, {0.9, 0.9}, {res, res}};
        const GridMap grid = sample_grid(*u, box);
        double gerr = 0.0, herr = 0.0;
        // common coarse interior points: every lattice point of the res=11 grid
        for (int i = 1; i < 10; ++i)
            for (int j = 1; j < 10; ++j) {
                const int s = (res - 1) / 10;
                const Jet2 fd = fd_jet(grid, {i * s, j * s});
                const Jet2 ex = u->eval_jet(fd.point);
                gerr = std::max(gerr, Mat::max_abs_diff(fd.grad, ex.grad));
                for (int a = 0; a < 2; ++a)
                    herr = std::max(herr, Mat::max_abs_diff(fd.hess[a], ex.hess[a]));
                CHECK(fd.hess_sym_defect() == 0.0);
            }
        return std::make_pair(gerr, herr);
    };
    // harmonic pair is quadratic: gradients are exact; use the k_family for orders
    const MapPtr k = gallery("k_family");
    auto kerr = [&](int res) {
        BoxDomain box{{-0.25, -0.25}, {0.25, 0.25}, {res, res}};
        const GridMap grid = sample_grid(*k, box);
        double gerr = 0.0, herr = 0.0;
        for (int i = 1; i < 10; ++i)
            for (int j = 1; j < 10; ++j) {
                const int s = (res - 1) / 10;
                const Jet2 fd = fd_jet(grid, {i * s, j * s});
                const Jet2 ex = k->eval_jet(fd.point);
                gerr = std::max(gerr, Mat::max_abs_diff(fd.grad, ex.grad));
                for (int a = 0; a < 2; ++a)
                    herr = std::max(herr, Mat::max_abs_diff(fd.hess[a], ex.hess[a]));
            }
        return std::make_pair(gerr, herr);
    };
    const auto [g1, h1] = kerr(11);
    const auto [g2, h2] = kerr(21);
    const auto [g3, h3] = kerr(41);
    for (double order : {std::log2(g1 / g2), std::log2(g2 / g3), std::log2(h1 / h2),
                         std::log2(h2 / h3)}) {
        CHECK(order > 1.7);
        CHECK(order < 2.3);
    }
    // quadratic map: central differences are exact up to roundoff
    const auto [hg, hh] = jet_err(11);
    CHECK(hg < 1e-12);
    CHECK(hh < 1e-10);
}

TEST_CASE("grid CSV loading") {
    const std::string path = "test_maps_tmp.csv";

    SUBCASE("complete 3x3 lattice with N=2") {
        std::string body = "x1,x2,u1,u2\n";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                body += std::to_string(i * 0.5) + "," + std::to_string(j * 0.5) + ",1.0,2.0\n";
        write_file(path, body);
        const GridMap g = load_grid(path);
        CHECK(g.samples.size() == 9);
        CHECK(g.N == 2);
        CHECK(g.domain.resolution == std::vector<int>{3, 3});
    }

    SUBCASE("rows may arrive in any order") {
        write_file(path,
                   "x1,u1\n0.2,4\n0.0,0\n0.4,16\n0.3,9\n0.1,1\n");
        const GridMap g = load_grid(path);
        CHECK(g.domain.resolution == std::vector<int>{5});
        CHECK(g.samples[3][0] == doctest::Approx(9.0));
    }

    SUBCASE("missing lattice row is rejected") {
        std::string body = "x1,x2,u1,u2\n";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(i == 1 && j == 2))
                    body += std::to_string(i * 0.5) + "," + std::to_string(j * 0.5) + ",1,2\n";
        write_file(path, body);
        CHECK_THROWS_WITH_AS(load_grid(path),
                             doctest::Contains("incomplete lattice"), InvalidInput);
    }

    SUBCASE("header determines the dimensions") {
        std::string body = "x1,x2,u1,u2,u3\n";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                body += std::to_string(i * 1.0) + "," + std::to_string(j * 1.0) + ",1,2,3\n";
        write_file(path, body);
        const GridMap g = load_grid(path);
        CHECK(g.domain.dim() == 2);
        CHECK(g.N == 3);
    }

    SUBCASE("non-numeric cell names the line") {
        write_file(path, "x1,u1\n0.0,1\n0.1,oops\n0.2,3\n");
        CHECK_THROWS_WITH_AS(load_grid(path), doctest::Contains("line 3"), InvalidInput);
    }

    SUBCASE("irregular spacing is rejected") {
        write_file(path, "x1,u1\n0.0,0\n0.1,1\n0.35,2\n");
        CHECK_THROWS_WITH_AS(load_grid(path), doctest::Contains("irregular"), InvalidInput);
    }

    SUBCASE("duplicate lattice point is rejected") {
        write_file(path, "x1,u1\n0.0,0\n0.1,1\n0.1,1\n0.2,2\n");
        CHECK_THROWS_WITH_AS(load_grid(path), doctest::Contains("duplicate"), InvalidInput);
    }

    std::remove(path.c_str());
}

TEST_CASE("gallery dispatch validates ids and parameters") {
    CHECK_THROWS_AS(gallery("nope"), InvalidInput);
    CHECK_THROWS_AS(gallery("example2", {{"c", "1"}}), InvalidInput);
    CHECK_THROWS_AS(gallery("k_family", {{"c", "-1"}}), InvalidInput);
    CHECK_THROWS_AS(gallery("embed3", {{"inner", "paraboloid"}}), InvalidInput);
    CHECK(gallery_catalogue().size() == 7);
    CHECK(gallery("embed3", {{"inner", "harmonic"}})->dims() == std::pair<int, int>{2, 3});
}

TEST_CASE("polyline geometry and breakpoint bookkeeping") {
    PolyLine nu;
    nu.base = {0.0, 0.0};
    nu.breakpoints = {0.0};
    nu.directions = {{1.0, -1.0}, {1.0, 1.0}};  // normalized on validate
    nu.validate();
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(norm(vsub(nu.value(1.0), {r, r})) < 1e-15);
    CHECK(norm(vsub(nu.value(-1.0), {-r, r})) < 1e-15);
    CHECK(nu.on_breakpoint(0.0));
    CHECK(!nu.on_breakpoint(0.5));

    const MapPtr u = make_nu_of_f(ScalarFactor{ScalarFactor::Kind::linear, 1.0, 0.0}, nu);
    // f(x,y) = x hits the breakpoint preimage {x = 0}
    CHECK_THROWS_AS(u->eval_jet({0.0, 0.2}), SingularPointError);
    const Jet2 jet = u->eval_jet({0.5, 0.2});
    CHECK(jet.grad(0, 0) == doctest::Approx(r));
    CHECK(jet.grad(1, 0) == doctest::Approx(r));
}

TEST_CASE("separated_pair gallery map equals its curve pair") {
    const MapPtr src = gallery("separated_pair", {{"split", "kf"}});
    const Curve f = kf_curve(1.0), g = kg_curve(1.0);
    for (const Vec x : {Vec{0.1, -0.2}, Vec{-0.25, 0.3}, Vec{0.0, 0.0}}) {
        const Vec expect = vadd(f.value(x[0]), g.value(x[1]));
        CHECK(norm(vsub(src->eval_jet(x).value, expect)) < 1e-12);
    }
}

TEST_CASE("embed3 wraps jets isometrically") {
    const MapPtr flat = gallery("k_family");
    const MapPtr lifted = gallery("embed3", {{"inner", "k_family"}});
    const Vec x{0.12, -0.08};
    const Jet2 a = flat->eval_jet(x), b = lifted->eval_jet(x);
    CHECK(b.N() == 3);
    CHECK(std::abs(norm(a.value) - norm(b.value)) < 1e-14);
    CHECK(std::abs(a.grad.frobenius() - b.grad.frobenius()) < 1e-14);
    // the image plane normal annihilates the lifted gradient
    const Vec n = embed3_plane_normal();
    for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += n[i] * b.grad(i, j);
        CHECK(std::abs(s) < 1e-15);
    }
}
