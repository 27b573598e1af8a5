// Command-line front end: eval / minimize / hyperminimize / kernels /
// compare / check / gen over the text automaton format.

#include "wta/hyperminimize.hpp"
#include "wta/io.hpp"
#include "wta/minimize.hpp"
#include "wta/oracle.hpp"
#include "wta/topology.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

wta::Wdta load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wta::DomainError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return wta::parse_automaton(buf.str());
}

void emit(const wta::Wdta& a, const std::string& path) {
    std::string text = wta::serialize_automaton(a);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw wta::DomainError("cannot write " + path);
    out << text;
}

void print_states(const char* label, const wta::Wdta& a, const std::vector<bool>& member,
                  bool complement) {
    std::cout << label;
    for (int q = 0; q < a.n(); ++q) {
        if (member[q] != complement) std::cout << " " << a.state_names[q];
    }
    std::cout << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted tree automata: minimization and hyper-minimization"};
    app.require_subcommand(1);

    std::string file, file_b, out_path, term_text, kind_name = "rational";
    int height = 6, tail = 3, states = 4, symbols = 3, rank = 2, chain = 0;
    std::uint64_t seed = 1;
    bool with_report = false;

    auto* eval_cmd = app.add_subcommand("eval", "print the weight of a term");
    eval_cmd->add_option("file", file)->required();
    eval_cmd->add_option("-t,--term", term_text)->required();

    auto* min_cmd = app.add_subcommand("minimize", "classical minimization");
    min_cmd->add_option("file", file)->required();
    min_cmd->add_option("-o,--output", out_path);

    auto* hyper_cmd = app.add_subcommand("hyperminimize", "hyper-minimization pipeline");
    hyper_cmd->add_option("file", file)->required();
    hyper_cmd->add_option("-o,--output", out_path);
    hyper_cmd->add_flag("--report", with_report);

    auto* kern_cmd = app.add_subcommand("kernels", "kernel / co-kernel classification");
    kern_cmd->add_option("file", file)->required();

    auto* cmp_cmd = app.add_subcommand("compare", "enumerate disagreeing trees");
    cmp_cmd->add_option("file_a", file)->required();
    cmp_cmd->add_option("file_b", file_b)->required();
    cmp_cmd->add_option("--height", height);
    cmp_cmd->add_option("--tail", tail);

    auto* check_cmd = app.add_subcommand("check", "hyper-minimality check");
    check_cmd->add_option("file", file)->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a random or chain automaton");
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--states", states);
    gen_cmd->add_option("--symbols", symbols);
    gen_cmd->add_option("--rank", rank);
    gen_cmd->add_option("--kind", kind_name);
    gen_cmd->add_option("--chain", chain, "unary chain with N states instead of a random draw");
    gen_cmd->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval_cmd) {
            wta::Wdta a = load(file);
            wta::TreePtr t = a.parse_tree(term_text);
            std::cout << a.semifield().print(a.semantics(t)) << "\n";
        } else if (*min_cmd) {
            emit(wta::minimize(load(file)), out_path);
        } else if (*hyper_cmd) {
            auto result = wta::hyper_minimize(load(file));
            emit(result.automaton, out_path);
            if (with_report) std::cout << result.report.to_text();
        } else if (*kern_cmd) {
            wta::Wdta a = load(file);
            auto kernel = wta::kernel_states(a);
            auto cokernel = wta::cokernel_states(a);
            print_states("kernel:", a, kernel, false);
            print_states("preamble:", a, kernel, true);
            print_states("cokernel:", a, cokernel, false);
            print_states("copreamble:", a, cokernel, true);
        } else if (*cmp_cmd) {
            wta::Wdta a = load(file);
            wta::Wdta b = load(file_b);
            auto report = wta::compare_languages(a, b, height, tail);
            wta::Semifield sf = a.semifield();
            for (const auto& m : report.mismatches) {
                std::cout << "mismatch " << a.print_tree(m.tree) << " "
                          << sf.print(m.weight_a) << " " << sf.print(m.weight_b) << "\n";
            }
            std::cout << "mismatches " << report.mismatches.size() << "\n";
            std::cout << "verdict " << (report.clean ? "clean" : "dirty") << "\n";
        } else if (*check_cmd) {
            wta::Wdta a = load(file);
            auto verdict = wta::hyper_minimality_check(a);
            if (verdict.ok) {
                std::cout << "hyper-minimal\n";
            } else if (verdict.witness) {
                std::cout << "not hyper-minimal: states "
                          << a.state_names[verdict.witness->first] << " "
                          << a.state_names[verdict.witness->second] << "\n";
            } else {
                std::cout << "not hyper-minimal: not minimal\n";
            }
        } else if (*gen_cmd) {
            wta::Wdta a = chain > 0
                              ? wta::chain_wdta(chain)
                              : wta::random_wdta(seed, wta::RandomBounds{states, symbols, rank},
                                                 wta::parse_kind(kind_name));
            emit(a, out_path);
        }
    } catch (const wta::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const wta::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const wta::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
