#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "phisimpson/identity.hpp"

using namespace phisimpson;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("simpson_functional")
{
	// (0 + 4/16 + 1)/6
	CHECK(std::abs(simpson_functional(parse("x^4"), PhiInterval(0, 1, 0)) - 5.0 / 24.0) < 1e-16);
	CHECK(std::abs(simpson_functional(parse("2.5"), PhiInterval(-1, 4, 0.3)) - 2.5) < 1e-15);
	// (0 + 4 (i/2)^2 + i^2)/6
	CHECK(std::abs(simpson_functional(parse("x^2"), PhiInterval(0, 1, kPi / 2)) + 1.0 / 3.0) < 1e-15);
}

TEST_CASE("path_mean")
{
	// (-i/3) / i
	CHECK(std::abs(path_mean(parse("x^2"), PhiInterval(0, 1, kPi / 2)) + 1.0 / 3.0) < 1e-12);
	CHECK(std::abs(path_mean(parse("7"), PhiInterval(1, 3, kPi / 4)) - 7.0) < 1e-13);
	CHECK(std::abs(path_mean(parse("exp(x)"), PhiInterval(0, 1, 0)) - (std::numbers::e - 1.0)) < 1e-12);
}

TEST_CASE("identity_rhs")
{
	// Simpson is exact on quadratics
	CHECK(std::abs(identity_rhs(parse("x^2"), PhiInterval(0, 1, 0))) < 1e-13);
	// 5/24 - 1/5
	CHECK(std::abs(identity_rhs(parse("x^4"), PhiInterval(0, 1, 0)) - 1.0 / 120.0) < 1e-12);
	CHECK(std::abs(identity_rhs(parse("3"), PhiInterval(0, 2, 1.0))) == 0.0);
}

TEST_CASE("identity_residual examples")
{
	const IdentityReport quartic = identity_residual(parse("x^4"), PhiInterval(0, 1, 0));
	CHECK(quartic.residual < 1e-8);
	CHECK(std::abs(quartic.lhs - 1.0 / 120.0) < 1e-12);
	CHECK(std::abs(quartic.rhs - 1.0 / 120.0) < 1e-12);
	CHECK(quartic.holds());

	// independent closed forms for both sides
	const PhiInterval iv(0, 2, kPi / 4);
	const IdentityReport ex = identity_residual(parse("exp(x)"), iv);
	CHECK(ex.residual < 1e-8);
	const complex end = iv.endpoint(), chord = iv.chord();
	const complex simpson = (1.0 + 4.0 * std::exp(iv.midpoint()) + std::exp(end)) / 6.0;
	const complex mean = (std::exp(end) - 1.0) / chord;
	CHECK(std::abs(ex.simpson_value - simpson) < 1e-13);
	CHECK(std::abs(ex.path_mean - mean) < 1e-11);

	const IdentityReport c = identity_residual(parse("4.25"), PhiInterval(-1, 2, kPi / 6));
	CHECK(c.residual < 1e-14);
	CHECK(c.residual >= 0.0);
}

TEST_CASE("rhs for x^2 vanishes on any rotated segment")
{
	// f' = 2(a + t c), so rhs = 2 a c int p + 2 c^2 int t p(t) dt. Both moments vanish:
	//   int p = 1/24 - 1/24,  int t p = (1/24 - 1/48) + ((1/3 - 5/12) - (1/24 - 5/48)).
	const double tp = (1.0 / 24.0 - 1.0 / 48.0) + ((1.0 / 3.0 - 5.0 / 12.0) - (1.0 / 24.0 - 5.0 / 48.0));
	CHECK(std::abs(tp) < 1e-16);
	for (double phi : {0.0, kPi / 3, kPi / 2})
		CHECK(std::abs(identity_rhs(parse("x^2"), PhiInterval(1, 3, phi))) < 1e-12);
}

TEST_CASE("property: identity holds across a grid")
{
	const std::vector<const char*> corpus{"x^2", "x^3", "x^4", "exp(x)", "sin(x)", "log(x+2)", "cos(3*x)/(x+4)"};
	const double angles[] = {0.0, kPi / 6, kPi / 4, kPi / 2};
	const double intervals[][2] = {{0, 1}, {-1, 2}, {1, 3}};
	for (const char* f : corpus) {
		const Expr e = parse(f);
		for (double phi : angles)
			for (const auto& ab : intervals) {
				INFO(f << " phi=" << phi << " [" << ab[0] << "," << ab[1] << "]");
				CHECK(identity_residual(e, PhiInterval(ab[0], ab[1], phi)).residual <= 1e-8);
			}
	}
}

TEST_CASE("property: cubics are integrated exactly at phi = 0")
{
	for (const char* f : {"1", "x", "x^2", "x^3", "2*x^3 - x^2 + 5*x - 7"})
		for (const auto& ab : {std::pair{0.0, 1.0}, std::pair{-1.0, 2.0}, std::pair{1.0, 3.0}})
			CHECK(std::abs(identity_residual(parse(f), PhiInterval(ab.first, ab.second, 0)).lhs) < 1e-10);
}

TEST_CASE("property: phi = 0 reproduces the real-line identity")
{
	for (const char* f : {"x^4", "exp(x)", "sin(x)", "log(x+2)"}) {
		const IdentityReport r = identity_residual(parse(f), PhiInterval(-1, 2, 0));
		CHECK(std::abs(r.simpson_value.imag()) < 1e-12);
		CHECK(std::abs(r.path_mean.imag()) < 1e-12);
		CHECK(std::abs(r.lhs.imag()) < 1e-12);
		CHECK(std::abs(r.rhs.imag()) < 1e-12);
	}
}
