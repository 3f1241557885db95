/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#include "oracle.hpp"

#include <dualrev/dualrev.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace dualrev;

namespace {

struct outcome {
	bool pass = true;
	std::ostringstream detail;

	void check(bool ok, std::string const& what)
	{
		if (!ok && pass) {
			detail << what;
		}
		pass = pass && ok;
	}
};

std::vector<line_id> iota_lines(uint32_t k)
{
	std::vector<line_id> v(k);
	for (uint32_t i = 0; i < k; ++i) {
		v[i] = i;
	}
	return v;
}

circuit bound_side(std::vector<gate> const& side, std::array<line_id, 3> const& binding, uint32_t width)
{
	circuit c(width);
	for (auto const& g : side) {
		c.add(detail::remap(g, binding));
	}
	return c;
}

void rule_soundness(outcome& o)
{
	o.check(rule_catalog().size() == 18, "catalog size");
	for (auto const& r : rule_catalog()) {
		auto const v = verify_rule(r);
		std::string what = r.id;
		if (v.counterexample) {
			what += " fails on input " + format_bits(*v.counterexample, rule_width);
		}
		o.check(v.ok(), what);
	}
}

void costs(outcome& o)
{
	o.check(quantum_cost(make_dual_toffoli(0, 1, 2)) == 5, "dual Toffoli cost");
	o.check(quantum_cost(make_dual_peres(0, 1, 2)) == 4, "dual Peres cost");
	o.check(quantum_cost(direct_root_realization({0, 1, 2}, 3)) == 13, "direct-root k=3 cost");
	for (uint32_t k = 1; k <= 5; ++k) {
		o.check(direct_root_realization(iota_lines(k), k).size() == (std::size_t{1} << (k + 1)) - 3,
		        "direct-root gate total k=" + std::to_string(k));
	}
}

void ncv_models(outcome& o)
{
	std::vector<gate> const gates{make_toffoli(0, 1, 2),    make_dual_toffoli(0, 1, 2),
	                              make_peres(0, 1, 2),      make_peres(0, 1, 2, true),
	                              make_dual_peres(0, 1, 2), make_dual_peres(0, 1, 2, true)};
	for (auto const& g : gates) {
		auto const perm = permutation_of(circuit(3, {g}));
		auto const d = oracle::max_diff(unitary_of(ncv_model(g)), oracle::dense_permutation(perm.image));
		o.check(d <= 1e-10, std::string(kind_name(g)) + " deviates by " + std::to_string(d));
	}
	for (auto const& g : ncv_model(make_dual_toffoli(0, 1, 2)).gates) {
		if (target_of(g) == 2) {
			auto const* r = std::get_if<root_gate>(&g);
			o.check(r && r->order == 2 && !r->adjoint, "dual Toffoli target holds a non-V gate");
		}
	}
	int adjoints = 0;
	for (auto const& g : ncv_model(make_toffoli(0, 1, 2)).gates) {
		auto const* r = std::get_if<root_gate>(&g);
		adjoints += (r && r->target == 2 && r->adjoint) ? 1 : 0;
	}
	o.check(adjoints == 1, "Toffoli target adjoint count " + std::to_string(adjoints));
}

void root_algebra(outcome& o)
{
	auto const x = root_of_not_matrix(1);
	for (uint32_t m : {1u, 2u, 4u, 8u, 16u}) {
		auto const r = root_of_not_matrix(m);
		o.check(r.pow(m).max_abs_diff(x) <= 1e-12, "R_m^m != X for m=" + std::to_string(m));
		auto const h = root_of_not_matrix(2 * m);
		o.check((h * h).max_abs_diff(r) <= 1e-12, "R_2m^2 != R_m for m=" + std::to_string(m));
	}
}

std::set<std::size_t> active_roots(circuit const& c, oracle::bits values)
{
	std::set<std::size_t> active;
	std::size_t index = 0;
	for (auto const& g : c.gates) {
		if (auto const* m = std::get_if<mct_gate>(&g)) {
			values[m->target] ^= values[m->controls[0].line];
		} else if (auto const* r = std::get_if<root_gate>(&g)) {
			++index;
			if (values[r->ctrl->line]) {
				active.insert(index);
			}
		}
	}
	return active;
}

void direct_realization(outcome& o)
{
	for (uint32_t k = 2; k <= 4; ++k) {
		auto const c = direct_root_realization(iota_lines(k), k);
		auto const d = oracle::max_diff(unitary_of(c), oracle::dense_permutation(oracle::or_not(k)));
		o.check(d <= 1e-9, "unitary deviates for k=" + std::to_string(k));
		auto const u = unitary_of(c);
		for (uint64_t x = 1; x < (uint64_t{1} << k); ++x) {
			oracle::bits values(k + 1, 0);
			for (uint32_t i = 0; i < k; ++i) {
				values[i] = static_cast<int>((x >> i) & 1u);
			}
			o.check(active_roots(c, values).size() == (std::size_t{1} << (k - 1)),
			        "active root count for k=" + std::to_string(k));
			for (int t = 0; t < 2; ++t) {
				values[k] = t;
				auto const column = oracle::encode(values);
				std::size_t row = 0;
				while (row < u.dim() && std::abs(u(row, column)) < 0.5) {
					++row;
				}
				auto const out = oracle::decode(row, k + 1);
				o.check(std::equal(values.begin(), values.begin() + k, out.begin()), "controls not restored");
			}
		}
	}
	auto const c3 = direct_root_realization({0, 1, 2}, 3);
	std::vector<std::pair<oracle::bits, std::set<std::size_t>>> const columns{
	    {{1, 0, 0, 0}, {1, 3, 5, 7}}, {{0, 1, 0, 0}, {2, 3, 6, 7}}, {{0, 0, 1, 0}, {4, 5, 6, 7}},
	    {{1, 0, 1, 0}, {1, 3, 4, 6}}, {{0, 1, 1, 0}, {2, 3, 4, 5}}, {{1, 1, 1, 0}, {1, 2, 4, 7}}};
	for (auto const& [in, expected] : columns) {
		o.check(active_roots(c3, in) == expected, "table column mismatch");
	}
	o.check(active_roots(c3, {1, 1, 0, 0}).size() == 4, "column (1,1,0) active count");
}

void vshape_correctness(outcome& o)
{
	for (uint32_t k = 3; k <= 8; ++k) {
		std::vector<control> cs;
		for (line_id i = 0; i < k; ++i) {
			cs.push_back(i);
		}
		mct_gate const g{control_mode::disjunctive, cs, k};
		auto const reference = oracle::or_not(k);
		for (bool peres : {false, true}) {
			auto const c = vshape(g, k + 1, peres);
			auto const ancillas = k - 2;
			for (uint64_t x = 0; x < (uint64_t{1} << (k + 1)); ++x) {
				auto const out = simulate_classical(c, x << ancillas);
				if ((out >> ancillas) != reference[x] || (out & ((uint64_t{1} << ancillas) - 1)) != 0) {
					o.check(false, "k=" + std::to_string(k) + " input " + std::to_string(x));
					break;
				}
			}
			auto const duals = std::count_if(c.gates.begin(), c.gates.end(), [](gate const& x) {
				auto const* m = std::get_if<mct_gate>(&x);
				return m && m->mode == control_mode::disjunctive;
			});
			auto const cost = quantum_cost(c);
			if (peres) {
				o.check(cost == 8u * k - 11u, "Peres variant cost for k=" + std::to_string(k));
			} else {
				o.check(static_cast<uint32_t>(duals) == 2 * (k - 2) + 1, "dual count for k=" + std::to_string(k));
				o.check(cost == 10u * k - 15u, "Toffoli variant cost for k=" + std::to_string(k));
			}
		}
		o.check(8 * k - 11 < 10 * k - 15, "cost ordering");
	}
}

void clifford_t_lowering(outcome& o)
{
	auto const dt = clifford_t(make_dual_toffoli(0, 1, 2));
	o.check(t_count(dt) == 7, "dual Toffoli T-count " + std::to_string(t_count(dt)));
	o.check(t_depth(dt) == 4, "dual Toffoli T-depth " + std::to_string(t_depth(dt)));
	o.check(static_cast<bool>(equiv_unitary(dt, circuit(3, {make_dual_toffoli(0, 1, 2)}), 1e-9)),
	        "dual Toffoli unitary");
	auto const dp = clifford_t(make_dual_peres(0, 1, 2));
	o.check(t_count(dp) == 7, "dual Peres T-count " + std::to_string(t_count(dp)));
	o.check(static_cast<bool>(equiv_unitary(dp, circuit(3, {make_dual_peres(0, 1, 2)}), 1e-9)), "dual Peres unitary");
}

void optimizer_effect(outcome& o)
{
	constexpr int instances = 200;
	constexpr uint32_t width = 6;
	constexpr std::size_t total_gates = 30;
	std::mt19937 rng(2024);
	std::uniform_int_distribution<std::size_t> pick_rule(0, rule_catalog().size() - 1);
	std::uniform_int_distribution<int> kind(0, 2);
	std::bernoulli_distribution coin(0.5);
	std::vector<line_id> lines(width);
	for (line_id i = 0; i < width; ++i) {
		lines[i] = i;
	}
	auto const random_gate = [&]() -> gate {
		std::shuffle(lines.begin(), lines.end(), rng);
		auto const ctl = [&](line_id l) { return control{l, coin(rng) ? polarity::negative : polarity::positive}; };
		switch (kind(rng)) {
		case 0: return make_not(lines[0]);
		case 1: return make_cnot(ctl(lines[1]), lines[0]);
		default: return make_toffoli(ctl(lines[1]), ctl(lines[2]), lines[0]);
		}
	};

	auto const start = std::chrono::steady_clock::now();
	int preserved = 0;
	int reduced_enough = 0;
	for (int i = 0; i < instances; ++i) {
		std::vector<circuit> plants;
		int64_t planted_delta = 0;
		std::size_t planted_gates = 0;
		for (int p = 0; p < 3; ++p) {
			auto const& r = rule_catalog()[pick_rule(rng)];
			std::shuffle(lines.begin(), lines.end(), rng);
			plants.push_back(bound_side(r.classical_side, {lines[0], lines[1], lines[2]}, width));
			planted_delta += static_cast<int64_t>(r.cost_classical) - static_cast<int64_t>(r.cost_dual);
			planted_gates += r.classical_side.size();
		}
		std::vector<gate> filler;
		for (std::size_t j = planted_gates; j < total_gates; ++j) {
			filler.push_back(random_gate());
		}
		// slots between filler gates, sorted so plants keep their order
		std::uniform_int_distribution<std::size_t> slot(0, filler.size());
		std::vector<std::size_t> slots{slot(rng), slot(rng), slot(rng)};
		std::sort(slots.begin(), slots.end());
		circuit c(width);
		std::size_t next_plant = 0;
		for (std::size_t j = 0; j <= filler.size(); ++j) {
			while (next_plant < slots.size() && slots[next_plant] == j) {
				c.append(plants[next_plant++]);
			}
			if (j < filler.size()) {
				c.add(filler[j]);
			}
		}

		auto const [out, report] = optimize(c, {.verify = true});
		bool const same = permutation_of(out) == permutation_of(c);
		preserved += same ? 1 : 0;
		auto const gain = static_cast<int64_t>(report.cost_before) - static_cast<int64_t>(report.cost_after);
		if (gain >= planted_delta) {
			++reduced_enough;
		} else if (o.pass) {
			o.detail << "instance " << i << " gained " << gain << " < planted " << planted_delta << "; ";
		}
		if (report.verification_failures != 0) {
			o.check(false, "verification failure on instance " + std::to_string(i));
		}
	}
	auto const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	o.check(preserved == instances, "function changed on " + std::to_string(instances - preserved) + " instances");
	o.check(reduced_enough == instances,
	        std::to_string(instances - reduced_enough) + " instances missed the planted reduction");
	o.check(seconds < 5.0, "took " + std::to_string(seconds) + " s");
	if (o.pass) {
		o.detail << instances << " instances in " << seconds << " s";
	}
}

void round_trip(outcome& o)
{
	std::vector<circuit> corpus;
	for (auto const& r : rule_catalog()) {
		corpus.emplace_back(3, r.classical_side);
		corpus.emplace_back(3, r.dual_side);
	}
	std::mt19937 rng(99);
	for (int i = 0; i < 200; ++i) {
		auto c = oracle::random_classical_circuit(rng, 3 + static_cast<uint32_t>(i % 6), 15);
		if (i % 3 == 0) {
			c.constants[0] = false;
			c.garbage.insert(0);
		}
		corpus.push_back(std::move(c));
	}
	circuit mixed(4, {make_dual_toffoli(neg(0), neg(1), 2), make_dual_peres(neg(0), 1, 3, true), make_cw(1, 3),
	                  make_root(16, neg(2), 0, true), make_h(1), make_t(1), make_sdg(2)});
	corpus.push_back(mixed);
	for (auto model : {decomposition_model::ncv, decomposition_model::direct_root, decomposition_model::vshape_toffoli,
	                   decomposition_model::vshape_peres, decomposition_model::clifford_t}) {
		corpus.push_back(decompose(circuit(5, {make_mct(control_mode::disjunctive, {0, neg(1), 2}, 3),
		                                       make_dual_peres(0, neg(4), 1)}),
		                           model));
	}
	std::size_t index = 0;
	for (auto const& c : corpus) {
		o.check(parse_real(write_real(c)) == c, "corpus entry " + std::to_string(index));
		++index;
	}
}

} // namespace

int main()
{
	std::vector<std::pair<std::string, std::function<void(outcome&)>>> const criteria{
	    {"1 rule soundness", rule_soundness},
	    {"2 costs", costs},
	    {"3 NCV models", ncv_models},
	    {"4 root algebra", root_algebra},
	    {"5 direct realization", direct_realization},
	    {"6 V-shape", vshape_correctness},
	    {"7 Clifford+T", clifford_t_lowering},
	    {"8 optimizer safety and effect", optimizer_effect},
	    {"9 round-trip", round_trip},
	};
	int failures = 0;
	for (auto const& [name, run] : criteria) {
		outcome o;
		auto const start = std::chrono::steady_clock::now();
		try {
			run(o);
		} catch (std::exception const& e) {
			o.check(false, std::string("exception: ") + e.what());
		}
		auto const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		o.check(seconds < 10.0, "criterion took " + std::to_string(seconds) + " s");
		std::printf("%s criterion %s", o.pass ? "PASS" : "FAIL", name.c_str());
		auto const detail = o.detail.str();
		if (!detail.empty()) {
			std::printf(" (%s)", detail.c_str());
		}
		std::printf("\n");
		failures += o.pass ? 0 : 1;
	}
	return failures == 0 ? 0 : 1;
}
