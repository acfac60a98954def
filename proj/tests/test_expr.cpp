#include "catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "phisimpson/expr.hpp"
#include "support/generators.hpp"

using namespace phisimpson;
using Catch::Approx;

namespace {

double close(complex got, complex want) { return std::abs(got - want); }

}  // namespace

TEST_CASE("parse builds trees with standard precedence")
{
	const Expr sq = parse("x^2");
	REQUIRE(sq.op() == Op::Pow);
	CHECK(sq.lhs().op() == Op::Variable);
	CHECK(sq.rhs().is_constant(2.0));

	const Expr e = parse("exp(x) + 1");
	REQUIRE(e.op() == Op::Add);
	CHECK(e.lhs().op() == Op::Exp);
	CHECK(e.lhs().lhs().op() == Op::Variable);
	CHECK(e.rhs().is_constant(1.0));

	// ^ is right-associative and binds tighter than unary minus
	CHECK(close(eval(parse("2^3^2"), 0.0), 512.0) == 0.0);
	CHECK(close(eval(parse("-x^2"), 3.0), -9.0) == 0.0);
	CHECK(close(eval(parse("2^-1"), 0.0), 0.5) == 0.0);
	CHECK(close(eval(parse("1 - 2 - 3"), 0.0), -4.0) == 0.0);
	CHECK(close(eval(parse("8/4/2"), 0.0), 1.0) == 0.0);
	CHECK(close(eval(parse("2*x + 3*x^2"), 2.0), 16.0) == 0.0);
	CHECK(close(eval(parse("1.5e2 + .5"), 0.0), 150.5) == 0.0);
	CHECK(close(eval(parse("2*e"), 0.0), 2.0 * std::numbers::e) == 0.0);
	CHECK(close(eval(parse("sqrt(pi)"), 0.0), std::sqrt(std::numbers::pi)) == 0.0);
}

TEST_CASE("parse reports malformed input with its offset")
{
	try {
		parse("x^^2");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.offset() == 2);
	}

	CHECK_THROWS_AS(parse(""), ParseError);
	CHECK_THROWS_AS(parse("(x + 1"), ParseError);
	CHECK_THROWS_AS(parse("x + 1)"), ParseError);
	CHECK_THROWS_AS(parse("exp x"), ParseError);
	CHECK_THROWS_AS(parse("2x"), ParseError);

	try {
		parse("2*y");
		FAIL("expected an unknown identifier");
	} catch (const UnknownIdentifierError& e) {
		CHECK(e.offset() == 2);
		CHECK(e.name() == "y");
	}
	CHECK_THROWS_AS(parse("tan(x)"), UnknownIdentifierError);
}

TEST_CASE("eval uses principal branches")
{
	const complex i(0.0, 1.0);
	CHECK(close(eval(parse("x^2"), i), -1.0) == 0.0);
	CHECK(close(eval(parse("exp(x)"), 0.0), 1.0) == 0.0);
	CHECK(close(eval(parse("log(x)"), -1.0), complex(0.0, std::numbers::pi)) < 1e-15);
	CHECK(close(eval(parse("sqrt(x)"), -4.0), complex(0.0, 2.0)) < 1e-15);
	CHECK(close(eval(parse("sqrt(-x)"), 4.0), complex(0.0, 2.0)) < 1e-15);
	// non-integer complex power through exp(w log z)
	CHECK(close(eval(parse("x^0.5"), -4.0), complex(0.0, 2.0)) < 1e-15);
	CHECK(close(eval(parse("x^x"), i), std::exp(-std::numbers::pi / 2)) < 1e-15);
}

TEST_CASE("eval raises domain errors naming the node")
{
	try {
		eval(parse("1 + log(x)"), 0.0);
		FAIL("expected a domain error");
	} catch (const DomainError& e) {
		CHECK(e.node() == "log(x)");
	}
	CHECK_THROWS_AS(eval(parse("1/x"), 0.0), DomainError);
	CHECK_THROWS_AS(eval(parse("x^-2"), 0.0), DomainError);
	CHECK_THROWS_AS(eval(parse("x^(-0.5)"), 0.0), DomainError);
	CHECK_THROWS_AS(eval(parse("exp(exp(x))"), 10.0), DomainError);
	CHECK(close(eval(parse("x^0.5"), 0.0), 0.0) == 0.0);
}

TEST_CASE("differentiate: basic rules")
{
	CHECK(close(eval(differentiate(parse("x^2")), 3.0), 6.0) == 0.0);
	const Expr dexp = differentiate(parse("exp(x)"));
	for (double x : {-1.0, 0.0, 0.7})
		CHECK(close(eval(dexp, x), std::exp(x)) == 0.0);
	CHECK(close(eval(differentiate(parse("5")), 2.0), 0.0) == 0.0);
	CHECK(close(eval(differentiate(parse("sin(x)")), 0.3), std::cos(0.3)) < 1e-15);
	CHECK(close(eval(differentiate(parse("cos(x)")), 0.3), -std::sin(0.3)) < 1e-15);
	CHECK(close(eval(differentiate(parse("log(x+2)")), 1.0), 1.0 / 3.0) < 1e-15);
	CHECK(close(eval(differentiate(parse("sqrt(x)")), 4.0), 0.25) < 1e-15);
	CHECK(close(eval(differentiate(parse("2^x")), 1.0), 2.0 * std::log(2.0)) < 1e-15);
	CHECK(close(eval(differentiate(parse("x^x")), 1.0), 1.0) < 1e-15);
	CHECK(close(eval(differentiate(parse("1/x")), 2.0), -0.25) < 1e-15);
}

TEST_CASE("fourth derivative of x^4 agrees with a finite-difference oracle")
{
	const Expr f = parse("x^4");
	const Expr d4 = differentiate(f, 4);

	std::mt19937_64 rng(20240611);
	std::uniform_real_distribution<double> u(-2.0, 2.0);
	const double h = 0.05;
	for (int k = 0; k < 5; ++k) {
		const double x = u(rng);
		const auto fx = [&](double s) { return eval(f, x + s).real(); };
		const double fd = (fx(2 * h) - 4 * fx(h) + 6 * fx(0) - 4 * fx(-h) + fx(-2 * h)) / std::pow(h, 4);
		const complex sym = eval(d4, x);
		CHECK(std::abs(sym - 24.0) == 0.0);
		CHECK(std::abs(fd - 24.0) / 24.0 < 1e-6);
	}
}

TEST_CASE("property: symbolic derivative matches central differences")
{
	testing::ExprGenerator gen(0x5eed);
	const double h = 1e-5;
	int checked = 0, skipped = 0;
	for (int n = 0; n < 300; ++n) {
		const Expr f = gen(3);
		const Expr df = differentiate(f);
		const complex z = gen.point();
		try {
			const complex fz = eval(f, z);
			if (std::abs(fz) > 1e4) {
				++skipped;
				continue;
			}
			const complex cd = (eval(f, z + h) - eval(f, z - h)) / (2 * h);
			const complex cd2 = (eval(f, z + 2 * h) - eval(f, z - 2 * h)) / (4 * h);
			// A branch cut or pole between the stencil points makes the difference quotient meaningless.
			if (std::abs(cd - cd2) > 1e-3 * (1 + std::abs(cd))) {
				++skipped;
				continue;
			}
			const complex d = eval(df, z);
			INFO(to_string(f) << " at " << z.real() << "+" << z.imag() << "i");
			CHECK(std::abs(d - cd) / (1 + std::abs(d)) < 1e-5);
			++checked;
		} catch (const DomainError&) {
			++skipped;
		}
	}
	CHECK(checked >= 250);
}

TEST_CASE("property: printing and re-parsing preserves values")
{
	testing::ExprGenerator gen(77);
	for (int n = 0; n < 200; ++n) {
		const Expr f = gen(4);
		const Expr g = parse(to_string(f));
		for (int k = 0; k < 10; ++k) {
			const complex z = gen.point();
			try {
				const complex a = eval(f, z);
				const complex b = eval(g, z);
				CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)));
			} catch (const DomainError&) {
				CHECK_THROWS_AS(eval(g, z), DomainError);
			}
		}
	}
	// derivative trees contain folded (possibly negative) constants
	const Expr d = differentiate(parse("cos(3*x) - x^-2"), 2);
	CHECK(std::abs(eval(parse(to_string(d)), 0.7) - eval(d, 0.7)) < 1e-12);
}
