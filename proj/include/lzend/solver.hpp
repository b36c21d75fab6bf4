#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "lzend/maxsat.hpp"
#include "lzend/text.hpp"

namespace lzend {

struct SolverOutput {
    enum class Status { optimum, unsat, unknown };
    Status status = Status::unknown;
    std::optional<int64_t> cost;         // last "o" line
    std::vector<uint8_t> assignment;     // index 1..num_vars; empty if no "v" line
    std::string raw;
};

// Parses standard MaxSAT solver result lines: "s OPTIMUM FOUND" or
// "s UNSATISFIABLE", "o <cost>", and "v" model lines in either the 0/1-string
// or the signed-literal convention (possibly split across several lines).
// Unrecognized lines are ignored.
inline SolverOutput parse_solver_output(const std::string& text, int32_t num_vars) {
    SolverOutput out;
    out.raw = text;
    std::vector<std::string> vtokens;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("s ", 0) == 0) {
            if (line.find("OPTIMUM FOUND") != std::string::npos)
                out.status = SolverOutput::Status::optimum;
            else if (line.find("UNSATISFIABLE") != std::string::npos)
                out.status = SolverOutput::Status::unsat;
        } else if (line.rfind("o ", 0) == 0) {
            try {
                out.cost = std::stoll(line.substr(2));
            } catch (const std::exception&) {
                throw SolverError("unparsable cost line: " + line);
            }
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) vtokens.push_back(tok);
        }
    }
    if (vtokens.empty()) return out;

    // tokens made only of 0/1 digits read as bit strings; a sign or any digit
    // above 1 forces the signed-literal reading
    bool signed_lits = false;
    for (const std::string& tok : vtokens) {
        if (tok.find_first_not_of("01") != std::string::npos) {
            signed_lits = true;
            break;
        }
    }
    out.assignment.assign(static_cast<size_t>(num_vars) + 1, 0);
    if (signed_lits) {
        for (const std::string& tok : vtokens) {
            int64_t lit;
            try {
                lit = std::stoll(tok);
            } catch (const std::exception&) {
                throw SolverError("unparsable model token: " + tok);
            }
            if (lit == 0) break;
            const int64_t v = lit < 0 ? -lit : lit;
            if (v > num_vars)
                throw SolverError("model mentions unknown variable " + std::to_string(v));
            out.assignment[static_cast<size_t>(v)] = lit > 0 ? 1 : 0;
        }
    } else {
        std::string bits;
        for (const std::string& tok : vtokens) bits += tok;
        if (static_cast<int64_t>(bits.size()) != num_vars)
            throw SolverError("model bit string has " + std::to_string(bits.size()) +
                              " bits, expected " + std::to_string(num_vars));
        for (int32_t v = 1; v <= num_vars; ++v)
            out.assignment[static_cast<size_t>(v)] = bits[static_cast<size_t>(v) - 1] == '1';
    }
    return out;
}

namespace detail {

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char ch : s) {
        if (ch == '\'')
            q += "'\\''";
        else
            q += ch;
    }
    q += "'";
    return q;
}

struct CommandResult {
    std::string output;
    int exit_code = -1;
};

inline CommandResult run_command(const std::string& command) {
    CommandResult res;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) throw SolverError("failed to start: " + command);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    const int rc = pclose(pipe);
    res.exit_code = rc < 0 ? rc : (rc >> 8) & 0xff;
    return res;
}

// Temp file removed on destruction.
class TempFile {
public:
    explicit TempFile(const std::string& stem) {
        static std::atomic<uint64_t> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                (stem + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)) + ".wcnf");
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace detail

// Runs `solver_command <wcnf-path>` on a fresh temp file and returns its
// parsed output. The command may contain arguments; stderr is folded in.
inline SolverOutput run_maxsat_solver(const WcnfInstance& inst, const std::string& solver_command) {
    detail::TempFile tmp("lzend");
    {
        std::ofstream os(tmp.path(), std::ios::binary);
        if (!os) throw SolverError("cannot write temp WCNF at " + tmp.path().string());
        write_wcnf(inst, os);
    }
    detail::CommandResult res =
        detail::run_command(solver_command + " " + detail::shell_quote(tmp.path().string()));
    SolverOutput out = parse_solver_output(res.output, inst.num_vars);
    if (out.status == SolverOutput::Status::unknown && res.exit_code != 0)
        throw SolverError("solver failed (exit " + std::to_string(res.exit_code) + "): " +
                          res.output.substr(0, 500));
    return out;
}

// Full pipeline: encode, solve externally, decode, cross-check the reported
// cost against the decoded size (the decoded size is authoritative).
inline Parsing solve(const Text& t, const std::string& solver_command) {
    if (t.size() == 0) return Parsing{};
    auto [inst, vm] = encode(t);
    SolverOutput out = run_maxsat_solver(inst, solver_command);
    if (out.status == SolverOutput::Status::unsat)
        throw IntegrityError("encoder-bug",
                             "solver reports the hard clauses unsatisfiable; they always admit "
                             "the greedy parsing");
    if (out.status != SolverOutput::Status::optimum)
        throw SolverError("solver did not report an optimum: " + out.raw.substr(0, 500));
    if (out.assignment.empty())
        throw SolverError("solver reported an optimum but printed no model");
    Model m{std::move(out.assignment), out.cost};
    Parsing parsed = decode(m, vm, t);
    if (out.cost && *out.cost != parsed.size())
        std::cerr << "lzend: warning: solver cost " << *out.cost << " differs from decoded size "
                  << parsed.size() << "; using the decoded size\n";
    return parsed;
}

} // namespace lzend
