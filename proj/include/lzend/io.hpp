#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzend/gadget.hpp"
#include "lzend/maxsat.hpp"
#include "lzend/parsing.hpp"
#include "lzend/solver.hpp"
#include "lzend/text.hpp"

namespace lzend {

enum class TextMode {
    bytes,   // every byte is one symbol
    text,    // bytes, minus one trailing newline if present
    tokens,  // whitespace-separated non-negative decimal integers
};

inline Text text_from_string(const std::string& body, TextMode mode) {
    switch (mode) {
        case TextMode::bytes:
            return canonicalize(std::string_view(body));
        case TextMode::text: {
            std::string_view v = body;
            if (v.ends_with("\r\n"))
                v.remove_suffix(2);
            else if (v.ends_with("\n"))
                v.remove_suffix(1);
            return canonicalize(v);
        }
        case TextMode::tokens: {
            std::vector<int64_t> tokens;
            std::istringstream in(body);
            std::string tok;
            while (in >> tok) {
                try {
                    size_t used = 0;
                    const int64_t v = std::stoll(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    tokens.push_back(v);
                } catch (const std::exception&) {
                    throw InputError("not a token: '" + tok + "'");
                }
            }
            return canonicalize(std::span<const int64_t>(tokens));
        }
    }
    throw ContractError("unknown text mode");
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Text read_text_file(const std::filesystem::path& path, TextMode mode) {
    Text t = text_from_string(read_file(path), mode);
    t.origin = path.string();
    return t;
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("io", "cannot write " + path.string());
    os << body;
    if (!os) throw Error("io", "failed writing " + path.string());
}

// ---- parsing record ----
// Canonical serialization: a JSON array, one object per phrase, fields in the
// fixed order start, len, kind, source_end (source_end only on copies).

inline void write_parsing_json(std::ostream& os, const Parsing& p) {
    os << "[\n";
    for (size_t i = 0; i < p.phrases.size(); ++i) {
        const Phrase& q = p.phrases[i];
        os << "  {\"start\": " << q.start << ", \"len\": " << q.len << ", \"kind\": \""
           << (q.kind == PhraseKind::singleton ? "singleton" : "copy") << "\"";
        if (q.kind == PhraseKind::copy && q.source_end != 0)
            os << ", \"source_end\": " << q.source_end;
        os << "}" << (i + 1 < p.phrases.size() ? "," : "") << "\n";
    }
    os << "]\n";
}

inline std::string parsing_to_json(const Parsing& p) {
    std::ostringstream os;
    write_parsing_json(os, p);
    return os.str();
}

inline Parsing parsing_from_json(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("parsing record is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw InputError("parsing record must be a JSON array");
    Parsing p;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("start") || !item.contains("len") ||
            !item.contains("kind"))
            throw InputError("each phrase needs start, len and kind fields");
        Phrase q;
        q.start = item.at("start").get<int64_t>();
        q.len = item.at("len").get<int64_t>();
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "singleton") {
            q.kind = PhraseKind::singleton;
            if (item.contains("source_end"))
                throw InputError("singleton phrases carry no source_end");
        } else if (kind == "copy") {
            q.kind = PhraseKind::copy;
            if (item.contains("source_end")) q.source_end = item.at("source_end").get<int64_t>();
        } else {
            throw InputError("unknown phrase kind '" + kind + "'");
        }
        p.phrases.push_back(q);
    }
    return p;
}

// ---- gadget side files ----

inline void write_tokens(std::ostream& os, const Text& t) {
    for (int64_t i = 1; i <= t.size(); ++i) {
        if (i > 1) os << ' ';
        os << t.at(i);
    }
    os << '\n';
}

inline void write_rendered_tokens(std::ostream& os, const Text& t) {
    for (int64_t i = 1; i <= t.size(); ++i) {
        if (i > 1) os << ' ';
        os << t.render(t.at(i));
    }
    os << '\n';
}

inline void write_legend(std::ostream& os, const Text& t) {
    for (Symbol s = 0; s < t.alphabet_size; ++s) os << s << '\t' << t.render(s) << '\n';
}

inline void write_segments(std::ostream& os, const GadgetString& w) {
    for (const Segment& s : w.segments) os << s.label << '\t' << s.start << '\t' << s.end << '\n';
    for (const Segment& s : w.sub_segments)
        os << s.label << '\t' << s.start << '\t' << s.end << '\n';
}

// ---- varmap sidecar ----

inline void write_varmap_json(std::ostream& os, const VarMap& vm) {
    nlohmann::ordered_json j;
    j["n"] = vm.n;
    j["num_vars"] = vm.num_vars;
    j["p"] = std::vector<int32_t>(vm.p.begin() + (vm.n ? 1 : 0), vm.p.end());
    j["c"] = std::vector<int32_t>(vm.c.begin() + (vm.n ? 1 : 0), vm.c.end());
    auto& r = j["r"] = nlohmann::ordered_json::array();
    for (const auto& rv : vm.r) r.push_back({{"i", rv.i}, {"j", rv.j}, {"var", rv.var}});
    j["aux"] = vm.aux;
    os << j.dump(1) << '\n';
}

inline VarMap varmap_from_json(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("variable map is not valid JSON: ") + e.what());
    }
    VarMap vm;
    try {
        vm.n = j.at("n").get<int64_t>();
        vm.num_vars = j.at("num_vars").get<int32_t>();
        vm.p.assign(1, 0);
        for (const auto& v : j.at("p")) vm.p.push_back(v.get<int32_t>());
        vm.c.assign(1, 0);
        for (const auto& v : j.at("c")) vm.c.push_back(static_cast<uint8_t>(v.get<int>()));
        for (const auto& rv : j.at("r"))
            vm.r.push_back({rv.at("i").get<int64_t>(), rv.at("j").get<int64_t>(),
                            rv.at("var").get<int32_t>()});
        for (const auto& v : j.at("aux")) vm.aux.push_back(v.get<int32_t>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("variable map is missing fields: ") + e.what());
    }
    if (vm.n == 0) {
        vm.p.clear();
        vm.c.clear();
    }
    return vm;
}

// ---- model files ----
// Accepts either full solver output (s/o/v lines) or a bare assignment: a
// 0/1 string, or signed literals, one or more lines.

inline Model model_from_string(const std::string& body, int32_t num_vars) {
    bool has_result_lines = false;
    {
        std::istringstream in(body);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("s ", 0) == 0 || line.rfind("o ", 0) == 0 || line.rfind("v ", 0) == 0) {
                has_result_lines = true;
                break;
            }
        }
    }
    std::string effective;
    if (has_result_lines) {
        effective = body;
    } else {
        std::istringstream in(body);
        std::string line;
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                effective += "v " + line + "\n";
    }
    SolverOutput out;
    try {
        out = parse_solver_output(effective, num_vars);
    } catch (const SolverError& e) {
        throw InputError(std::string("cannot read model: ") + e.what());
    }
    if (out.status == SolverOutput::Status::unsat)
        throw InputError("model file reports UNSATISFIABLE; nothing to decode");
    if (out.assignment.empty()) throw InputError("model file contains no assignment");
    Model m;
    m.value = std::move(out.assignment);
    m.reported_cost = out.cost;
    return m;
}

} // namespace lzend
