#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "phisimpson/domain.hpp"
#include "phisimpson/quad.hpp"

using namespace phisimpson;

TEST_CASE("PhiInterval enforces a < b and 0 <= phi <= pi/2")
{
	CHECK_NOTHROW(PhiInterval(0, 1, 0));
	CHECK_NOTHROW(PhiInterval(0, 1, std::numbers::pi / 2));
	CHECK_THROWS_AS(PhiInterval(1, 1, 0), RangeError);
	CHECK_THROWS_AS(PhiInterval(2, 1, 0), RangeError);
	CHECK_THROWS_AS(PhiInterval(0, 1, -1e-9), RangeError);
	CHECK_THROWS_AS(PhiInterval(0, 1, 2.0), RangeError);
	CHECK_THROWS_AS(PhiInterval(0, 1, std::nan("")), RangeError);

	const PhiInterval iv(1, 3, std::numbers::pi / 3);
	CHECK(std::abs(std::abs(iv.chord()) - 2.0) < 1e-15);
	CHECK(std::abs(iv.midpoint() - (1.0 + 0.5 * iv.chord())) == 0.0);
	CHECK(std::abs(iv.endpoint() - (1.0 + iv.chord())) == 0.0);
}

TEST_CASE("path_point")
{
	CHECK(std::abs(path_point(PhiInterval(0, 1, 0), 0.5) - 0.5) == 0.0);
	CHECK(std::abs(path_point(PhiInterval(0, 1, std::numbers::pi / 2), 1.0) - complex(0, 1)) < 1e-16);

	// direct complex arithmetic: 1 + 0.5 * 2 * (cos 45 + i sin 45)
	const complex expected = 1.0 + complex(1.0, 1.0) / std::sqrt(2.0);
	CHECK(std::abs(path_point(PhiInterval(1, 3, std::numbers::pi / 4), 0.5) - expected) < 1e-15);

	CHECK_THROWS_AS(path_point(PhiInterval(0, 1, 0), -0.1), RangeError);
	CHECK_THROWS_AS(path_point(PhiInterval(0, 1, 0), 1.1), RangeError);
}

TEST_CASE("property: rotation preserves distance from a")
{
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> u(0.0, 1.0), ab(-3.0, 3.0), ang(0.0, std::numbers::pi / 2);
	for (int n = 0; n < 500; ++n) {
		double a = ab(rng), b = ab(rng);
		if (a == b) continue;
		if (a > b) std::swap(a, b);
		const PhiInterval iv(a, b, ang(rng));
		const double t = u(rng);
		CHECK(std::abs(std::abs(path_point(iv, t) - a) - t * (b - a)) < 1e-14 * (1 + std::abs(a) + std::abs(b)));
	}
}

TEST_CASE("kernel values and branch assignment")
{
	CHECK(kernel(0.0) == -1.0 / 6.0);
	CHECK(kernel(0.5) == 0.5 - 5.0 / 6.0);
	CHECK(std::abs(kernel(0.5) + 1.0 / 3.0) < 1e-16);
	CHECK(std::abs(kernel(std::nextafter(0.5, 0.0)) - 1.0 / 3.0) < 1e-15);
	CHECK(std::abs(kernel(1.0 / 6.0)) < 1e-17);
	CHECK(std::abs(kernel(5.0 / 6.0)) < 1e-16);
	CHECK(kernel(1.0) == 1.0 - 5.0 / 6.0);
	CHECK(kernel_value(0.25).value == kernel(0.25));
	CHECK_THROWS_AS(kernel(-0.01), RangeError);
	CHECK_THROWS_AS(kernel(1.01), RangeError);
}

TEST_CASE("property: kernel is odd about t = 1/2")
{
	std::mt19937_64 rng(3);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for (int n = 0; n < 1000; ++n) {
		const double t = u(rng);
		if (t == 0.5 || t == 0.0) continue;
		CHECK(std::abs(kernel(t) + kernel(1.0 - t)) < 1e-15);
	}
}

TEST_CASE("integral of |kernel| is 5/36")
{
	const auto r = integrate_01([](double t) { return std::abs(kernel(t)); }, 1e-14, std::span(kKernelBreakpoints));
	CHECK(std::abs(r.value - 5.0 / 36.0) < 1e-12);
	CHECK(r.value.imag() == 0.0);
}
