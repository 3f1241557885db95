/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#include "oracle.hpp"

#include <dualrev/dualrev.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace dualrev;

TEST(SimulateClassical, Examples)
{
	circuit dual(3, {make_dual_toffoli(0, 1, 2)});
	EXPECT_EQ(simulate_classical(dual, std::vector<bool>{true, true, false}), (std::vector<bool>{true, true, true}));

	circuit empty(4);
	for (uint64_t x = 0; x < 16; ++x) {
		EXPECT_EQ(simulate_classical(empty, x), x);
	}

	circuit pair(2, {make_cnot(0, 1), make_cnot(0, 1)});
	EXPECT_EQ(simulate_classical(pair, std::vector<bool>{true, false}), (std::vector<bool>{true, false}));
}

TEST(SimulateClassical, Errors)
{
	circuit quantum(2, {make_cv(0, 1)});
	EXPECT_THROW(simulate_classical(quantum, 0), error);

	circuit anc(2, {make_cnot(0, 1)});
	anc.constants[1] = false;
	EXPECT_NO_THROW(simulate_classical(anc, 0b10));
	try {
		simulate_classical(anc, 0b11);
		FAIL();
	} catch (error const& e) {
		EXPECT_EQ(e.code(), error_code::constant_violated);
	}
	EXPECT_THROW(simulate_classical(anc, std::vector<bool>{true}), error);
}

TEST(PermutationOf, FrozenImages)
{
	// frozen from oracle::tabulate with t ^= c1 | c2 and t ^= c1 & c2
	std::vector<uint64_t> const dual_image{0, 1, 3, 2, 5, 4, 7, 6};
	std::vector<uint64_t> const toffoli_image{0, 1, 2, 3, 4, 5, 7, 6};
	ASSERT_EQ(oracle::or_not(2), dual_image);
	ASSERT_EQ(oracle::tabulate(3,
	                           [](oracle::bits b) {
		                           b[2] ^= b[0] & b[1];
		                           return b;
	                           }),
	          toffoli_image);

	EXPECT_EQ(permutation_of(circuit(3, {make_dual_toffoli(0, 1, 2)})).image, dual_image);
	EXPECT_EQ(permutation_of(circuit(3, {make_toffoli(0, 1, 2)})).image, toffoli_image);
	EXPECT_EQ(permutation_of(circuit(2)).image, (std::vector<uint64_t>{0, 1, 2, 3}));
}

TEST(PermutationOf, WidthCapAndClassicalOnly)
{
	EXPECT_THROW(permutation_of(circuit(21)), error);
	simulation_limits limits;
	limits.max_classical_width = 4;
	EXPECT_THROW(permutation_of(circuit(5), limits), error);
	EXPECT_THROW(permutation_of(circuit(2, {make_h(0)})), error);
}

TEST(PermutationOf, InverseCircuitGivesInversePermutation)
{
	std::mt19937 rng(3);
	for (int i = 0; i < 50; ++i) {
		auto const c = oracle::random_classical_circuit(rng, 5, 12);
		auto const p = permutation_of(c);
		ASSERT_TRUE(p.is_bijection());
		EXPECT_EQ(permutation_of(circuit_inverse(c)), p.inverse());
	}
}

TEST(RootOfNot, Matrices)
{
	auto const x = root_of_not_matrix(1);
	EXPECT_NEAR(std::abs(x(0, 0)), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(x(0, 1) - 1.0), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(x(1, 0) - 1.0), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(x(1, 1)), 0.0, 1e-15);

	// W = 1/2 [[1 + i^(1/2), 1 - i^(1/2)], [1 - i^(1/2), 1 + i^(1/2)]] with i^(1/2) = e^(i pi/4)
	auto const w = root_of_not_matrix(4);
	std::complex<double> const sqrt_i{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
	EXPECT_NEAR(std::abs(w(0, 0) - 0.5 * (1.0 + sqrt_i)), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(w(0, 1) - 0.5 * (1.0 - sqrt_i)), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(w(1, 0) - 0.5 * (1.0 - sqrt_i)), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(w(1, 1) - 0.5 * (1.0 + sqrt_i)), 0.0, 1e-15);

	auto const v = root_of_not_matrix(2);
	EXPECT_LE((v * v).max_abs_diff(x), 1e-12);
	EXPECT_LE((root_of_not_matrix(2, true) * v).max_abs_diff(unitary_matrix::identity(2)), 1e-12);
	EXPECT_THROW(root_of_not_matrix(6), error);
	EXPECT_THROW(root_of_not_matrix(0), error);
}

TEST(RootOfNot, PowersAndHalving)
{
	auto const x = root_of_not_matrix(1);
	for (uint32_t m : {1u, 2u, 4u, 8u, 16u}) {
		auto const r = root_of_not_matrix(m);
		EXPECT_TRUE(r.is_unitary(1e-12));
		EXPECT_LE(r.pow(m).max_abs_diff(x), 1e-12) << "m=" << m;
		auto const half = root_of_not_matrix(2 * m);
		EXPECT_LE((half * half).max_abs_diff(r), 1e-12) << "m=" << m;
	}
}

TEST(UnitaryOf, ControlledVIsBlockDiagonal)
{
	auto const u = unitary_of(circuit(2, {make_cv(0, 1)}));
	auto const v = root_of_not_matrix(2);
	for (std::size_t r = 0; r < 2; ++r) {
		for (std::size_t c = 0; c < 2; ++c) {
			EXPECT_NEAR(std::abs(u(r, c) - (r == c ? 1.0 : 0.0)), 0.0, 1e-15);
			EXPECT_NEAR(std::abs(u(2 + r, 2 + c) - v(r, c)), 0.0, 1e-15);
			EXPECT_NEAR(std::abs(u(r, 2 + c)), 0.0, 1e-15);
			EXPECT_NEAR(std::abs(u(2 + r, c)), 0.0, 1e-15);
		}
	}
	// negative control acts on the |0> block
	auto const n = unitary_of(circuit(2, {make_cv(neg(0), 1)}));
	EXPECT_NEAR(std::abs(n(0, 0) - v(0, 0)), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(n(3, 3) - 1.0), 0.0, 1e-15);
}

TEST(UnitaryOf, FourWGatesMakeX)
{
	circuit c(1);
	for (int i = 0; i < 4; ++i) {
		c.add(make_root(4, std::nullopt, 0));
	}
	EXPECT_LE(unitary_of(c).max_abs_diff(root_of_not_matrix(1)), 1e-12);
}

TEST(UnitaryOf, ClassicalCircuitsArePermutationMatrices)
{
	std::mt19937 rng(5);
	for (int i = 0; i < 20; ++i) {
		auto const c = oracle::random_classical_circuit(rng, 4, 10);
		auto const u = unitary_of(c);
		std::vector<uint64_t> image(16);
		for (uint64_t x = 0; x < 16; ++x) {
			image[x] = simulate_classical(c, x);
		}
		EXPECT_LE(oracle::max_diff(u, oracle::dense_permutation(image)), 1e-12);
	}
}

TEST(UnitaryOf, WidthCap)
{
	EXPECT_THROW(unitary_of(circuit(11)), error);
}

TEST(UnitaryOf, NcvDualToffoliModelEqualsPermutation)
{
	circuit model(3, {make_cv(0, 2), make_cv(1, 2), make_cnot(0, 1), make_cv(1, 2), make_cnot(0, 1)});
	EXPECT_LE(oracle::max_diff(unitary_of(model), oracle::dense_permutation(oracle::or_not(2))), 1e-10);
}

TEST(EquivPermutation, Examples)
{
	circuit const basic(3, {make_cnot(0, 2), make_cnot(1, 2), make_toffoli(0, 1, 2)});
	circuit const dual(3, {make_dual_toffoli(0, 1, 2)});
	circuit const tof(3, {make_toffoli(0, 1, 2)});
	EXPECT_TRUE(equiv_permutation(basic, basic));
	EXPECT_TRUE(equiv_permutation(basic, dual));
	auto const r = equiv_permutation(tof, dual);
	EXPECT_FALSE(r);
	ASSERT_TRUE(r.counterexample.has_value());
	auto const b = oracle::decode(*r.counterexample, 3);
	EXPECT_EQ(b[0] ^ b[1], 1);
	EXPECT_THROW(equiv_permutation(circuit(2), circuit(3)), error);
	EXPECT_THROW(equiv_permutation(circuit(1, {make_h(0)}), circuit(1)), error);
}

TEST(EquivPermutation, GarbageAndConstants)
{
	// CNOT(0;1) vs nothing: differs only on line 1
	circuit a(2, {make_cnot(0, 1)});
	circuit b(2);
	EXPECT_FALSE(equiv_permutation(a, b));
	a.garbage.insert(1);
	EXPECT_TRUE(equiv_permutation(a, b, true));
	EXPECT_FALSE(equiv_permutation(a, b, false));

	circuit c(2, {make_cnot(0, 1)});
	c.constants[0] = false;
	EXPECT_TRUE(equiv_permutation(c, circuit(2)));
}

TEST(EquivPermutation, IsAnEquivalenceRelation)
{
	std::mt19937 rng(13);
	std::vector<circuit> pool;
	for (int i = 0; i < 12; ++i) {
		auto c = oracle::random_classical_circuit(rng, 3, 3);
		pool.push_back(c);
		pool.push_back(circuit_inverse(circuit_inverse(c)));
	}
	for (auto const& a : pool) {
		EXPECT_TRUE(equiv_permutation(a, a));
		for (auto const& b : pool) {
			bool const ab = static_cast<bool>(equiv_permutation(a, b));
			EXPECT_EQ(ab, static_cast<bool>(equiv_permutation(b, a)));
			for (auto const& c : pool) {
				if (ab && equiv_permutation(b, c)) {
					EXPECT_TRUE(equiv_permutation(a, c));
				}
			}
		}
	}
}

TEST(EquivUnitary, Examples)
{
	circuit const model(3, {make_cv(0, 2), make_cv(1, 2), make_cnot(0, 1), make_cv(1, 2), make_cnot(0, 1)});
	circuit const dual(3, {make_dual_toffoli(0, 1, 2)});
	EXPECT_TRUE(equiv_unitary(model, dual, 1e-10));
	EXPECT_TRUE(equiv_unitary(dual, model, 1e-10));

	circuit const tt(2, {make_t(0), make_tdg(0)});
	EXPECT_TRUE(equiv_unitary(tt, circuit(2)));

	EXPECT_FALSE(equiv_unitary(circuit(3, {make_toffoli(0, 1, 2)}), dual));
	EXPECT_THROW(equiv_unitary(circuit(2), circuit(3)), error);
	EXPECT_THROW(equiv_unitary(circuit(11), circuit(11)), error);
}

TEST(EquivUnitary, GlobalPhaseIsIgnored)
{
	// S then S is Z; X Z X Z = -I
	circuit const a(1, {make_not(0), make_s(0), make_s(0), make_not(0), make_s(0), make_s(0)});
	EXPECT_TRUE(equiv_unitary(a, circuit(1)));
	// Z alone is not a phase
	EXPECT_FALSE(equiv_unitary(circuit(1, {make_s(0), make_s(0)}), circuit(1)));
}
