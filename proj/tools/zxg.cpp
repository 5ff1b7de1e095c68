// zxg: command-line driver for the hybrid circuit optimizer.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or input error,
// 3 internal invariant broken.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "zxg/classicalize.hpp"
#include "zxg/diagram_json.hpp"
#include "zxg/extract.hpp"
#include "zxg/generators.hpp"
#include "zxg/gflow.hpp"
#include "zxg/pipeline.hpp"
#include "zxg/semantics.hpp"
#include "zxg/simplify.hpp"
#include "zxg/translate.hpp"

using namespace zxg;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kInternal = 3;

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    bool json_out = false;
    std::string output = "-";
    double tol = 1e-8;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), {}};
}

void write_output(const Options& o, const std::string& text) {
    if (o.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output);
    if (!f) throw UsageError("cannot write " + o.output);
    f << text;
}

bool looks_like_json(const std::string& s) {
    const auto p = s.find_first_not_of(" \t\r\n");
    return p != std::string::npos && s[p] == '{';
}

HybridCircuit load_circuit(const std::string& path) {
    const std::string text = read_input(path);
    if (looks_like_json(text)) throw UsageError(path + ": expected a circuit, got a diagram");
    return parse_circuit(text);
}

/// A diagram file, or a circuit that is translated on the fly.
Diagram load_diagram(const std::string& path) {
    const std::string text = read_input(path);
    return looks_like_json(text) ? parse_diagram(text) : circuit_to_diagram(parse_circuit(text));
}

Superoperator load_channel(const std::string& path) {
    const std::string text = read_input(path);
    if (looks_like_json(text)) return diagram_superoperator(parse_diagram(text));
    return circuit_superoperator(parse_circuit(text));
}

json stats_json(const SimplifyStats& s) {
    return {{"spiders_before", s.spiders_before}, {"spiders_after", s.spiders_after},
            {"ground_count_before", s.grounds_before}, {"ground_count_after", s.grounds_after},
            {"iterations", s.iterations}, {"rules", s.rules}};
}

/// Emits the artifact: raw on stdout or -o, or wrapped in a JSON envelope.
void emit(const Options& o, const std::string& artifact, const json& info) {
    if (!o.json_out) {
        write_output(o, artifact);
        if (!info.is_null()) std::cerr << info.dump() << "\n";
        return;
    }
    json env = {{"ok", true}, {"info", info}};
    if (o.output == "-") env["result"] = artifact;
    else write_output(o, artifact);
    std::cout << env.dump(1) << "\n";
}

int error_envelope(const Options& o, const std::string& kind, const std::string& msg, int code) {
    if (o.json_out)
        std::cout << json{{"ok", false}, {"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}}.dump(1)
                  << "\n";
    else
        std::cerr << "zxg: " << kind << ": " << msg << "\n";
    return code;
}

std::string label_str(const LabelEdge& e) {
    return std::string(label_name(e.at_a)) + "/" + label_name(e.at_b);
}

double default_tolerance() {
    if (const char* t = std::getenv("ZXG_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(t, &end);
        if (end == t || *end != '\0' || !(v > 0)) throw UsageError("ZXG_TOLERANCE must be a positive number");
        return v;
    }
    return 1e-8;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Optimizer for hybrid quantum-classical circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json_out, "JSON output, including errors");
    app.add_option("-o,--output", o.output, "Output file (default stdout)");
    std::optional<double> tol_flag;
    app.add_option("--tol", tol_flag, "Equivalence tolerance (default $ZXG_TOLERANCE or 1e-8)")
        ->check(CLI::PositiveNumber);

    std::string in = "-", in2;
    bool naive = false, instrumented = false, verify = false, validate = false, no_peephole = false;

    auto* translate = app.add_subcommand("translate", "Circuit to graph-like diagram");
    translate->add_option("input", in, "Circuit file ('-' for stdin)");

    auto* simp = app.add_subcommand("simplify", "Simplify a diagram (or a circuit, translated first)");
    simp->add_option("input", in);
    simp->add_flag("--naive", naive, "Only the pure Clifford rules");
    simp->add_flag("--instrumented", instrumented, "Check graph-like form and gFlow after each rewrite");

    auto* extract = app.add_subcommand("extract", "Diagram to circuit");
    extract->add_option("input", in);
    extract->add_flag("--instrumented", instrumented, "Check gFlow after each extraction step");

    auto* classical = app.add_subcommand("classicalize", "Report classically realisable gates and wires");
    classical->add_option("input", in);
    classical->add_flag("--validate", validate, "Check every label against the channel (small circuits)");

    auto* gflow = app.add_subcommand("gflow", "Find a focused gFlow");
    gflow->add_option("input", in);

    auto* sim = app.add_subcommand("simulate", "Superoperator of a circuit or diagram");
    sim->add_option("input", in);

    auto* equiv = app.add_subcommand("check-equiv", "Channel equivalence up to a positive scalar");
    equiv->add_option("a", in)->required();
    equiv->add_option("b", in2)->required();

    auto* opt = app.add_subcommand("optimize", "Translate, simplify, extract and classicalize");
    opt->add_option("input", in);
    opt->add_flag("--naive", naive, "Only the pure Clifford rules");
    opt->add_flag("--instrumented", instrumented, "gFlow checks after every step");
    opt->add_flag("--verify", verify, "Compare input and output channels when small enough");
    opt->add_flag("--no-peephole", no_peephole, "Keep the extracted circuit as is");

    std::string kind = "clifford";
    std::size_t n_qubits = 4, n_gates = 32, n_bits = 10, seeds = 10;
    double p_meas = 0.1;
    std::uint64_t seed = 0;
    std::vector<std::size_t> gate_counts{100, 200, 300, 400, 500};

    auto* gen = app.add_subcommand("gen", "Generate a random benchmark circuit");
    gen->add_option("--kind", kind)->check(CLI::IsMember({"clifford", "parity"}));
    gen->add_option("--qubits", n_qubits)->check(CLI::Range(2, 1 << 16));
    gen->add_option("--gates", n_gates);
    gen->add_option("--p-meas", p_meas, "Measurement probability; T gets 0.4 - p_meas")->check(CLI::Range(0.0, 0.4));
    gen->add_option("--bits", n_bits)->check(CLI::Range(2, 1 << 16));
    gen->add_option("--seed", seed);

    auto* bench = app.add_subcommand("bench", "Spider counts, ground rules vs pure Clifford baseline (CSV)");
    bench->add_option("--mode", kind)->check(CLI::IsMember({"clifford", "parity"}));
    bench->add_option("--qubits", n_qubits)->check(CLI::Range(2, 1 << 16));
    bench->add_option("--gates", n_gates, "Gate count for clifford mode");
    bench->add_option("--gate-counts", gate_counts, "Gate counts for parity mode")->delimiter(',');
    bench->add_option("--bits", n_bits)->check(CLI::Range(2, 1 << 16));
    bench->add_option("--seeds", seeds);
    bench->add_option("--seed", seed, "First seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (o.json_out) return error_envelope(o, "usage", e.what(), kUsage);
        app.exit(e);
        return kUsage;
    }

    try {
        o.tol = tol_flag ? *tol_flag : default_tolerance();
        if (*translate) {
            const Diagram d = circuit_to_diagram(load_circuit(in));
            emit(o, serialize_diagram(d), {{"spiders", d.num_spiders()}, {"ground_count", d.num_grounds()}});
        } else if (*simp) {
            Diagram d = load_diagram(in);
            const auto st = simplify(d, SimplifyConfig{!naive, instrumented});
            json info = stats_json(st);
            info["simplified"] = is_simplified(d);
            emit(o, serialize_diagram(d), info);
        } else if (*extract) {
            const auto r = extract_with_trace(load_diagram(in), ExtractConfig{instrumented});
            emit(o, serialize_circuit(r.circuit), {{"steps", r.steps}, {"gates", r.circuit.gates.size()}});
        } else if (*classical) {
            const HybridCircuit c = load_circuit(in);
            const auto r = classicalize(c);
            std::ostringstream os;
            std::size_t n_classical = 0;
            for (std::size_t g = 0; g < c.gates.size(); ++g) {
                n_classical += r.classical_gate[g];
                os << (r.classical_gate[g] ? "classical " : "quantum   ") << c.describe(g) << "\n";
            }
            for (const auto& e : r.labelling.edges)
                if (e.segment && e.classical())
                    os << "wire " << detail::wire_name(c, e.segment->wire) << " before " << e.segment->before_gate
                       << " " << label_str(e) << "\n";
            json info = {{"gates", c.gates.size()}, {"classical_gates", n_classical},
                         {"label_changes", r.labelling.changes}};
            bool ok = true;
            if (validate) {
                std::size_t failed = 0;
                for (const auto& chk : validate_labelling(c, r.labelling, o.tol))
                    if (!chk.ok) {
                        ++failed;
                        os << "INVALID wire " << detail::wire_name(c, chk.segment.wire) << " before "
                           << chk.segment.before_gate << " " << label_name(chk.label) << "\n";
                    }
                info["invalid_labels"] = failed;
                ok = failed == 0;
            }
            emit(o, os.str(), info);
            return ok ? kOk : kVerifyFailed;
        } else if (*gflow) {
            const Diagram d = load_diagram(in);
            const auto f = find_focused_gflow(underlying_open_graph(d));
            json out = {{"exists", f.has_value()}};
            if (f) {
                json g = json::object();
                for (const auto& [v, s] : f->g) g[std::to_string(v)] = s;
                json order = json::object();
                for (const auto& [v, k] : f->order) order[std::to_string(v)] = k;
                out["g"] = g;
                out["order"] = order;
            }
            emit(o, out.dump(1) + "\n", nullptr);
            return f ? kOk : kVerifyFailed;
        } else if (*sim) {
            const Superoperator s = load_channel(in);
            json rows = json::array();
            for (std::size_t r = 0; r < s.rows(); ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < s.cols(); ++c) row.push_back({s.data[r + s.rows() * c].real(),
                                                                           s.data[r + s.rows() * c].imag()});
                rows.push_back(row);
            }
            emit(o, json{{"n_in", s.n_in}, {"n_out", s.n_out}, {"rows", rows}}.dump() + "\n", nullptr);
        } else if (*equiv) {
            const auto r = equiv_up_to_scalar(load_channel(in), load_channel(in2), o.tol);
            const json info = {{"equivalent", r.equivalent}, {"residual", r.residual}, {"zero_norm", r.zero_norm}};
            emit(o, r.equivalent ? "equivalent\n" : "not equivalent\n", info);
            return r.equivalent ? kOk : kVerifyFailed;
        } else if (*opt) {
            const HybridCircuit c = load_circuit(in);
            OptimizeConfig cfg;
            cfg.ground_rules = !naive;
            cfg.instrumented = instrumented;
            cfg.verify = verify;
            cfg.peephole = !no_peephole;
            cfg.tolerance = o.tol;
            const auto r = optimize(c, cfg);
            json info = stats_json(r.simplify);
            info["gates_before"] = c.gates.size();
            info["gates_after"] = r.circuit.gates.size();
            info["classical_gates"] = r.classical_gates;
            info["extract_steps"] = r.extract_steps;
            if (verify) info["verified"] = r.check ? json(r.check->equivalent) : json("skipped: too large");
            emit(o, serialize_circuit(r.circuit), info);
            return (r.check && !r.check->equivalent) ? kVerifyFailed : kOk;
        } else if (*gen) {
            const HybridCircuit c = kind == "parity" ? gen_parity(n_bits, n_gates, seed)
                                                     : gen_clifford_t_meas(n_qubits, n_gates, 0.4 - p_meas, p_meas, seed);
            emit(o, serialize_circuit(c), nullptr);
        } else if (*bench) {
            const auto rows = kind == "parity" ? bench_parity(n_bits, gate_counts, seeds, seed)
                                               : bench_clifford(n_qubits, n_gates, seeds, seed);
            emit(o, bench_csv(rows, kind == "parity"), nullptr);
        }
        return kOk;
    } catch (const UsageError& e) {
        return error_envelope(o, "usage", e.what(), kUsage);
    } catch (const ParseError& e) {
        return error_envelope(o, "parse", e.what(), kUsage);
    } catch (const TypeError& e) {
        return error_envelope(o, "type", e.what(), kUsage);
    } catch (const PreconditionError& e) {
        return error_envelope(o, "precondition", e.what(), kUsage);
    } catch (const SizeLimitError& e) {
        return error_envelope(o, "size_limit", e.what(), kUsage);
    } catch (const InvariantError& e) {
        return error_envelope(o, "invariant", e.what(), kInternal);
    } catch (const nlohmann::json::exception& e) {
        return error_envelope(o, "parse", e.what(), kUsage);
    } catch (const std::invalid_argument& e) {
        return error_envelope(o, "usage", e.what(), kUsage);
    } catch (const std::exception& e) {
        return error_envelope(o, "internal", e.what(), kInternal);
    }
}
