// Command-line front end: greedy/optimal parsing, validation, WCNF encode and
// model decode, reduction-gadget generation, lower-bound family tables, and a
// one-shot "repro" checklist.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lzend/family.hpp"
#include "lzend/gadget.hpp"
#include "lzend/greedy.hpp"
#include "lzend/io.hpp"
#include "lzend/maxsat.hpp"
#include "lzend/optimal.hpp"
#include "lzend/solver.hpp"

namespace {

using namespace lzend;

TextMode mode_from_string(const std::string& mode) {
    if (mode == "text") return TextMode::text;
    if (mode == "bytes") return TextMode::bytes;
    if (mode == "tokens") return TextMode::tokens;
    throw ContractError("unknown mode '" + mode + "'");
}

std::string resolve_solver(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("LZEND_SOLVER")) return env;
    return "";
}

void print_parsing(const Text& t, const Parsing& p, bool rendered) {
    for (size_t i = 0; i < p.phrases.size(); ++i) {
        const Phrase& q = p.phrases[i];
        std::cout << i + 1 << '\t' << q.start << '\t' << q.len << '\t'
                  << (q.kind == PhraseKind::singleton ? "singleton" : "copy");
        if (q.kind == PhraseKind::copy) std::cout << '\t' << q.source_end;
        if (rendered && q.len <= 32) {
            std::cout << '\t';
            for (int64_t d = 0; d < q.len; ++d) std::cout << t.render(t.at(q.start + d));
        }
        std::cout << '\n';
    }
    std::cout << "size " << p.size() << '\n';
}

void write_parsing_file(const std::string& path, const Parsing& p) {
    if (path.empty()) return;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("io", "cannot write " + path);
    write_parsing_json(os, p);
}

VertexCover parse_cover_list(const std::string& arg) {
    VertexCover cover;
    std::string tok;
    std::istringstream in(arg);
    while (std::getline(in, tok, ',')) {
        if (!tok.empty() && (tok[0] == 'v' || tok[0] == 'V')) tok.erase(0, 1);
        try {
            cover.vertices.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw InputError("bad vertex '" + tok + "' in cover list");
        }
    }
    std::sort(cover.vertices.begin(), cover.vertices.end());
    cover.vertices.erase(std::unique(cover.vertices.begin(), cover.vertices.end()),
                         cover.vertices.end());
    return cover;
}

int run_repro(const std::string& solver) {
    int failures = 0;
    const auto check = [&](const std::string& what, bool ok) {
        std::cout << (ok ? "[ ok ] " : "[FAIL] ") << what << '\n';
        if (!ok) ++failures;
    };

    const Text fig1 = text_from_string("aacbbbbaababbabbba", TextMode::bytes);
    const Parsing greedy = greedy_parse(fig1);
    bool at10 = false;
    for (const Phrase& q : greedy.phrases)
        if (q.start == 10) at10 = q.len == 1;
    check("example string: greedy size 12", greedy.size() == 12);
    check("example string: greedy phrase at position 10 is a single symbol", at10);
    const Parsing opt = optimal_parse(fig1);
    check("example string: optimal size 11 (branch and bound)", opt.size() == 11);
    check("example string: optimal parsing validates", validate(fig1, opt).ok);

    const Graph triangle{3, {{1, 2}, {2, 3}, {1, 3}}};
    bool gadget_ok = true;
    try {
        const SegmentCounts sc = greedy_counts(triangle);
        gadget_ok = sc.gadget.text.size() == 168 && sc.total == 108;
    } catch (const Error&) {
        gadget_ok = false;
    }
    check("triangle gadget: 168 tokens, greedy 108 with per-segment counts", gadget_ok);

    bool witness_ok = true;
    try {
        const Parsing w = witness_parsing(triangle, VertexCover{{1, 3}});
        witness_ok = w.size() == 107;
        const CoverExtraction ext = cover_from_parsing(triangle, w);
        witness_ok = witness_ok && ext.cover.vertices == std::vector<int64_t>{1, 3};
    } catch (const Error&) {
        witness_ok = false;
    }
    check("triangle gadget: cover {v1,v3} gives a valid parsing of 107, and back", witness_ok);

    bool family_ok = true;
    try {
        for (int64_t k = 1; k <= 6; ++k) {
            check_greedy_family(k);
            witness_parsing_family(k);
        }
    } catch (const Error&) {
        family_ok = false;
    }
    check("family: greedy 2K+k+5 and witness K+k+6 for k = 1..6", family_ok);

    bool table_ok = true;
    try {
        const auto rows = ratio_table(10, 60000);
        table_ok = rows.back().ratio > 1.99;
    } catch (const Error&) {
        table_ok = false;
    }
    check("family: ratio table increasing, ratio(10) > 1.99", table_ok);

    if (!solver.empty()) {
        bool maxsat_ok = true;
        try {
            maxsat_ok = solve(fig1, solver).size() == 11;
        } catch (const Error& e) {
            std::cerr << "lzend: " << e.code() << ": " << e.what() << '\n';
            maxsat_ok = false;
        }
        check("example string: MaxSAT optimum 11 via external solver", maxsat_ok);
        bool reduction_ok = true;
        try {
            const ReductionReport rep = verify_reduction(triangle, solver);
            reduction_ok = rep.maxsat_optimum && *rep.maxsat_optimum == 107;
        } catch (const Error& e) {
            std::cerr << "lzend: " << e.code() << ": " << e.what() << '\n';
            reduction_ok = false;
        }
        check("triangle gadget: MaxSAT optimum 107 = 13n+22m+tau", reduction_ok);
    } else {
        std::cout << "[skip] MaxSAT checks (no solver configured; set --solver or LZEND_SOLVER)\n";
    }

    std::cout << (failures == 0 ? "all checks passed\n"
                                : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact LZ-End parsing toolkit"};
    app.require_subcommand(1);

    std::string in_path, mode = "text", out_path, parsing_path, solver_flag;
    std::string model_path, varmap_path, graph_path, out_prefix, cover_list;
    std::string method;
    uint64_t budget = 100'000'000;
    bool legacy_wcnf = false, verify = false, witness = false;
    int64_t family_k = 0, table_kmax = 0;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", in_path, "input text file")->required();
        cmd->add_option("--mode", mode, "text|bytes|tokens (default text)");
    };

    CLI::App* c_greedy = app.add_subcommand("greedy", "greedy LZ-End parsing");
    add_input(c_greedy);
    c_greedy->add_option("--out", out_path, "write the parsing record (JSON) here");

    CLI::App* c_optimal = app.add_subcommand("optimal", "minimum-size LZ-End-like parsing");
    add_input(c_optimal);
    c_optimal->add_option("--method", method, "bruteforce|maxsat")->required();
    c_optimal->add_option("--solver", solver_flag, "external MaxSAT solver command");
    c_optimal->add_option("--budget", budget, "search node budget (bruteforce)");
    c_optimal->add_option("--out", out_path, "write the parsing record (JSON) here");

    CLI::App* c_validate = app.add_subcommand("validate", "check a parsing record against a text");
    add_input(c_validate);
    c_validate->add_option("--parsing", parsing_path, "parsing record (JSON)")->required();

    CLI::App* c_encode = app.add_subcommand("encode", "write the WCNF encoding of a text");
    add_input(c_encode);
    c_encode->add_option("--out", out_path, "WCNF output path")->required();
    c_encode->add_option("--varmap", varmap_path, "variable map sidecar (default <out>.varmap.json)");
    c_encode->add_flag("--legacy-wcnf", legacy_wcnf, "emit the p-wcnf header dialect");

    CLI::App* c_decode = app.add_subcommand("decode", "decode a solver model into a parsing");
    add_input(c_decode);
    c_decode->add_option("--model", model_path, "solver output or assignment file")->required();
    c_decode->add_option("--varmap", varmap_path, "variable map sidecar")->required();
    c_decode->add_option("--out", out_path, "write the parsing record (JSON) here");

    CLI::App* c_gadget = app.add_subcommand("gadget", "build the vertex-cover reduction string");
    c_gadget->add_option("--graph", graph_path, "edge list file: 'n m' then 'u v' lines")->required();
    c_gadget->add_option("--out-prefix", out_prefix, "prefix for tokens/legend/segments files");
    c_gadget->add_option("--witness-cover", cover_list, "comma-separated cover, e.g. 1,3 or v1,v3");
    c_gadget->add_flag("--verify", verify, "check greedy/witness counts (and the optimum with a solver)");
    c_gadget->add_option("--solver", solver_flag, "external MaxSAT solver command");

    CLI::App* c_family = app.add_subcommand("family", "build the lower-bound string family");
    c_family->add_option("--k", family_k, "family parameter k >= 1")->required();
    c_family->add_flag("--witness", witness, "also write the small witness parsing");
    c_family->add_option("--table", table_kmax, "emit the ratio table for k = 1..KMAX");
    c_family->add_option("--out-prefix", out_prefix, "prefix for output files (default w<k>)");

    CLI::App* c_repro = app.add_subcommand("repro", "run the full reproduction checklist");
    c_repro->add_option("--solver", solver_flag, "external MaxSAT solver command");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_greedy) {
            const Text t = read_text_file(in_path, mode_from_string(mode));
            const Parsing p = greedy_parse(t);
            print_parsing(t, p, true);
            write_parsing_file(out_path, p);
        } else if (*c_optimal) {
            const Text t = read_text_file(in_path, mode_from_string(mode));
            Parsing p;
            if (method == "bruteforce") {
                SearchOptions opts;
                opts.node_budget = budget;
                p = optimal_parse(t, opts);
            } else if (method == "maxsat") {
                const std::string solver = resolve_solver(solver_flag);
                if (solver.empty())
                    throw SolverError("no solver configured; pass --solver or set LZEND_SOLVER");
                p = solve(t, solver);
            } else {
                throw ContractError("unknown method '" + method + "'");
            }
            print_parsing(t, p, true);
            write_parsing_file(out_path, p);
        } else if (*c_validate) {
            const Text t = read_text_file(in_path, mode_from_string(mode));
            const Parsing p = parsing_from_json(read_file(parsing_path));
            const ValidationReport rep = validate(t, p);
            if (rep.ok) {
                std::cout << "accept size " << p.size() << '\n';
            } else {
                std::cout << "reject phrase " << rep.phrase_index << ": " << rep.rule << '\n';
                std::cerr << "lzend: validation: phrase " << rep.phrase_index << ": " << rep.rule
                          << '\n';
                return 1;
            }
        } else if (*c_encode) {
            const Text t = read_text_file(in_path, mode_from_string(mode));
            auto [inst, vm] = encode(t);
            {
                std::ofstream os(out_path, std::ios::binary);
                if (!os) throw Error("io", "cannot write " + out_path);
                write_wcnf(inst, os, legacy_wcnf);
            }
            const std::string vm_path =
                varmap_path.empty() ? out_path + ".varmap.json" : varmap_path;
            {
                std::ofstream os(vm_path, std::ios::binary);
                if (!os) throw Error("io", "cannot write " + vm_path);
                write_varmap_json(os, vm);
            }
            std::cout << "variables " << inst.num_vars << " hard " << inst.hard.size() << " soft "
                      << inst.soft.size() << '\n'
                      << "wcnf " << out_path << '\n'
                      << "varmap " << vm_path << '\n';
        } else if (*c_decode) {
            const Text t = read_text_file(in_path, mode_from_string(mode));
            const VarMap vm = varmap_from_json(read_file(varmap_path));
            const Model m = model_from_string(read_file(model_path), vm.num_vars);
            const Parsing p = decode(m, vm, t);
            print_parsing(t, p, true);
            write_parsing_file(out_path, p);
        } else if (*c_gadget) {
            const Graph g = parse_graph(read_file(graph_path));
            const GadgetString w = build_gadget(g);
            const std::string prefix =
                out_prefix.empty()
                    ? std::filesystem::path(graph_path).stem().string() + ".gadget"
                    : out_prefix;
            {
                std::ofstream os(prefix + ".tokens", std::ios::binary);
                write_tokens(os, w.text);
            }
            {
                std::ofstream os(prefix + ".legend", std::ios::binary);
                write_legend(os, w.text);
            }
            {
                std::ofstream os(prefix + ".segments", std::ios::binary);
                write_segments(os, w);
            }
            std::cout << "n " << g.n << " m " << g.m() << " length " << w.text.size()
                      << " alphabet " << w.text.alphabet_size << '\n'
                      << "files " << prefix << ".tokens " << prefix << ".legend " << prefix
                      << ".segments\n";
            if (!cover_list.empty()) {
                const VertexCover cover = parse_cover_list(cover_list);
                const Parsing p = witness_parsing(g, cover);
                write_parsing_file(prefix + ".witness.json", p);
                std::cout << "witness size " << p.size() << " (13n+22m+" << cover.size() << ")\n";
            }
            if (verify) {
                const ReductionReport rep = verify_reduction(g, resolve_solver(solver_flag));
                std::cout << "greedy size " << rep.greedy_size << " (13n+23m)\n"
                          << "vertex cover number " << rep.tau << '\n'
                          << "minimum-cover witness size " << rep.witness_size << " (13n+22m+tau)\n";
                if (rep.maxsat_optimum)
                    std::cout << "maxsat optimum " << *rep.maxsat_optimum
                              << (rep.optimum_matches ? " (matches)" : " (MISMATCH)") << '\n';
                else
                    std::cout << "maxsat optimum skipped (no solver configured)\n";
            }
        } else if (*c_family) {
            const FamilyInstance f = build_family(family_k);
            const std::string prefix =
                out_prefix.empty() ? "w" + std::to_string(family_k) : out_prefix;
            {
                std::ofstream os(prefix + ".txt", std::ios::binary);
                for (int64_t i = 1; i <= f.text.size(); ++i)
                    os << (f.text.at(i) == 0 ? 'a' : 'b');
                os << '\n';
            }
            std::cout << "k " << f.k << " K " << f.K << " length " << f.text.size() << '\n'
                      << "file " << prefix << ".txt\n";
            if (witness) {
                const Parsing p = witness_parsing_family(family_k);
                write_parsing_file(prefix + ".witness.json", p);
                std::cout << "witness size " << p.size() << " (K+k+6)\n";
            }
            if (table_kmax > 0) {
                const auto rows = ratio_table(table_kmax);
                write_ratio_table_text(std::cout, rows);
                {
                    std::ofstream os(prefix + ".ratio.txt", std::ios::binary);
                    write_ratio_table_text(os, rows);
                }
                {
                    std::ofstream os(prefix + ".ratio.csv", std::ios::binary);
                    write_ratio_table_csv(os, rows);
                }
                std::cout << "table " << prefix << ".ratio.txt " << prefix << ".ratio.csv\n";
            }
        } else if (*c_repro) {
            return run_repro(resolve_solver(solver_flag));
        }
    } catch (const ResourceError& e) {
        std::cerr << "lzend: " << e.code() << ": " << e.what() << '\n';
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "lzend: " << e.code() << ": " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "lzend: " << e.code() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "lzend: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
