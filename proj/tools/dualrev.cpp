/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#include <dualrev/dualrev.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace dualrev;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

struct usage_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

real_document load(std::string const& path)
{
	std::ifstream in(path);
	if (!in) {
		throw usage_error("cannot open " + path);
	}
	std::stringstream buffer;
	buffer << in.rdbuf();
	auto doc = parse_real_document(buffer.str());
	for (auto const& w : doc.warnings) {
		std::cerr << path << ": warning: " << w << "\n";
	}
	return doc;
}

void store(std::string const& path, std::string const& text)
{
	std::ofstream out(path);
	if (!out || !(out << text)) {
		throw usage_error("cannot write " + path);
	}
}

/*! Extends `narrow` with the trailing constant lines of `wide`, so a circuit
 *  can be compared with a realization that appended ancillas. */
void pad_ancillas(circuit& narrow, circuit const& wide)
{
	for (line_id l = narrow.width; l < wide.width; ++l) {
		if (!wide.constants.contains(l)) {
			throw error(error_code::width_mismatch,
			            "widths differ and line " + std::to_string(l) + " of the wider circuit is not a constant");
		}
		narrow.constants[l] = wide.constants.at(l);
	}
	narrow.width = wide.width;
}

int run_sim(std::string const& file, std::string const& bits)
{
	auto const doc = load(file);
	if (bits.size() != doc.circ.width || bits.find_first_not_of("01") != std::string::npos) {
		std::cerr << "error: input must be " << doc.circ.width << " characters of 0/1\n";
		return exit_error;
	}
	std::vector<bool> input;
	for (char ch : bits) {
		input.push_back(ch == '1');
	}
	auto const output = simulate_classical(doc.circ, input);
	for (bool b : output) {
		std::cout << (b ? '1' : '0');
	}
	std::cout << "\n";
	return exit_ok;
}

int run_equiv(std::string const& file1, std::string const& file2, bool unitary, double tol)
{
	auto a = load(file1).circ;
	auto b = load(file2).circ;
	if (a.width < b.width) {
		pad_ancillas(a, b);
	} else if (b.width < a.width) {
		pad_ancillas(b, a);
	}
	if (!unitary && (!is_classical(a) || !is_classical(b))) {
		std::cerr << "note: non-classical gates present, comparing unitaries\n";
		unitary = true;
	}
	if (unitary) {
		bool const eq = equiv_unitary(a, b, tol);
		std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
		return eq ? exit_ok : exit_negative;
	}
	auto const result = equiv_permutation(a, b, true);
	if (result) {
		std::cout << "equivalent\n";
		return exit_ok;
	}
	std::cout << "not equivalent\ncounterexample " << format_bits(*result.counterexample, a.width) << "\n";
	return exit_negative;
}

int run_stats(std::string const& file, bool json)
{
	auto const doc = load(file);
	auto const report = make_cost_report(doc.circ);
	if (json) {
		std::cout << to_json(report).dump() << "\n";
		return exit_ok;
	}
	std::cout << "width:        " << report.width << "\n"
	          << "gates:        " << report.gate_count << "\n"
	          << "quantum cost: " << report.quantum_cost << "\n"
	          << "T-count:      " << report.t_count << "\n"
	          << "T-depth:      " << report.t_depth << "\n";
	for (auto const& [name, count] : report.histogram) {
		std::cout << "  " << name << ": " << count << "\n";
	}
	if (report.polarity_convention_applied) {
		std::cout << "note: negative controls on dual/Peres/Toffoli gates are costed like positive ones\n";
	}
	return exit_ok;
}

int run_decompose(std::string const& file, std::string const& model_name, std::string const& out)
{
	auto const model = parse_decomposition_model(model_name);
	if (!model) {
		throw usage_error("unknown model " + model_name);
	}
	auto const doc = load(file);
	auto const lowered = decompose(doc.circ, *model);
	auto names = doc.variables;
	for (auto i = names.size(); i < lowered.width; ++i) {
		names.push_back("anc" + std::to_string(i - doc.variables.size()));
	}
	store(out, write_real(lowered, names));
	return exit_ok;
}

int run_optimize(std::string const& file, optimize_config const& config, std::string const& out,
                 std::string const& report_path)
{
	auto const doc = load(file);
	auto const [optimized, report] = optimize(doc.circ, config);
	store(out, write_real(optimized, doc.variables));
	if (!report_path.empty()) {
		store(report_path, to_json(report).dump(2) + "\n");
	}
	std::cout << "cost " << report.cost_before << " -> " << report.cost_after << " (" << report.applications.size()
	          << " rewrites)\n";
	if (report.verification_failures > 0) {
		std::cerr << "error: " << report.verification_failures << " rewrites failed verification and were rolled back\n";
		return exit_error;
	}
	return exit_ok;
}

std::string side_text(std::vector<gate> const& side)
{
	std::vector<std::string> const names{"c1", "c2", "t"};
	auto const text = write_real(circuit(rule_width, side), names);
	std::string body;
	std::istringstream in(text);
	std::string line;
	bool inside = false;
	while (std::getline(in, line)) {
		if (line == ".begin") {
			inside = true;
		} else if (line == ".end") {
			inside = false;
		} else if (inside) {
			body += (body.empty() ? "" : "; ") + line;
		}
	}
	return body;
}

int run_rules_list()
{
	for (auto const& r : rule_catalog()) {
		std::cout << r.id << "  [" << r.cost_classical << " -> " << r.cost_dual << "]  " << r.identity << "\n"
		          << "    classical: " << side_text(r.classical_side) << "\n"
		          << "    dual:      " << side_text(r.dual_side) << "\n";
		if (!r.alternate.empty()) {
			std::cout << "    alternate: " << r.alternate << "\n";
		}
	}
	return exit_ok;
}

int run_rules_verify(std::string const& id)
{
	bool all_ok = true;
	std::size_t checked = 0;
	std::size_t passed = 0;
	for (auto const& r : rule_catalog()) {
		if (!id.empty() && r.id != id) {
			continue;
		}
		++checked;
		auto const v = verify_rule(r);
		if (v.ok()) {
			++passed;
			std::cout << r.id << ": ok\n";
			continue;
		}
		all_ok = false;
		std::cout << r.id << ": FAILED";
		if (v.counterexample) {
			std::cout << " counterexample c1c2t=" << format_bits(*v.counterexample, rule_width);
		}
		if (!v.cost_ordered) {
			std::cout << " dual side is more expensive";
		}
		std::cout << "\n";
	}
	if (checked == 0) {
		throw usage_error("no rule with id " + id);
	}
	std::cout << passed << "/" << checked << " rules verified\n";
	return all_ok ? exit_ok : exit_negative;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Reversible circuits with dual (OR-controlled) Toffoli and Peres gates"};
	app.require_subcommand(1);

	std::string file;
	std::string file2;
	std::string bits;
	std::string out;
	std::string model;
	std::string report_path;
	std::string rule_id;
	bool unitary = false;
	bool json = false;
	double tol = 1e-9;
	optimize_config opt_config;
	bool catalog_order = false;

	auto* sim = app.add_subcommand("sim", "simulate one classical input");
	sim->add_option("file", file, ".real circuit")->required();
	sim->add_option("--input", bits, "input bits, line 0 first")->required();

	auto* equiv = app.add_subcommand("equiv", "check two circuits for equivalence");
	equiv->add_option("file1", file, ".real circuit")->required();
	equiv->add_option("file2", file2, ".real circuit")->required();
	equiv->add_flag("--unitary", unitary, "compare unitaries up to global phase");
	equiv->add_option("--tol", tol, "unitary tolerance");

	auto* stats = app.add_subcommand("stats", "gate count, quantum cost, T-count, T-depth");
	stats->add_option("file", file, ".real circuit")->required();
	stats->add_flag("--json", json, "print JSON");

	auto* dec = app.add_subcommand("decompose", "lower gates to a realization model");
	dec->add_option("file", file, ".real circuit")->required();
	dec->add_option("--model", model, "ncv|direct-root|vshape-toffoli|vshape-peres|clifford-t")->required();
	dec->add_option("-o", out, "output .real file")->required();

	auto* opt = app.add_subcommand("optimize", "apply the rewriting rules");
	opt->add_option("file", file, ".real circuit")->required();
	opt->add_flag("--verify", opt_config.verify, "check every rewrite exhaustively on its window");
	opt->add_option("--max-passes", opt_config.max_passes, "pass limit");
	opt->add_flag("--catalog-order", catalog_order, "try rules in catalog order instead of largest gain first");
	opt->add_flag("--reverse", opt_config.allow_reverse, "also consider dual-to-classical rewrites");
	opt->add_option("-o", out, "output .real file")->required();
	opt->add_option("--report", report_path, "JSON report path");

	auto* rules = app.add_subcommand("rules", "list or verify the rule catalog");
	rules->require_subcommand(1);
	auto* rules_list = rules->add_subcommand("list", "print the catalog");
	auto* rules_verify = rules->add_subcommand("verify", "check every rule exhaustively");
	rules_verify->add_option("--id", rule_id, "single rule id");

	try {
		app.parse(argc, argv);
	} catch (CLI::CallForHelp const& e) {
		return app.exit(e);
	} catch (CLI::ParseError const& e) {
		app.exit(e);
		return exit_error;
	}

	try {
		if (sim->parsed()) {
			return run_sim(file, bits);
		}
		if (equiv->parsed()) {
			return run_equiv(file, file2, unitary, tol);
		}
		if (stats->parsed()) {
			return run_stats(file, json);
		}
		if (dec->parsed()) {
			return run_decompose(file, model, out);
		}
		if (opt->parsed()) {
			if (catalog_order) {
				opt_config.selection = rule_selection::catalog_order;
			}
			return run_optimize(file, opt_config, out, report_path);
		}
		if (rules_list->parsed()) {
			return run_rules_list();
		}
		if (rules_verify->parsed()) {
			return run_rules_verify(rule_id);
		}
	} catch (std::exception const& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_error;
	}
	return exit_error;
}
