#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "rtrace/axioms.hpp"
#include "rtrace/chain_trace.hpp"
#include "rtrace/io.hpp"
#include "rtrace/local_trace.hpp"

namespace rtrace::cli {

enum class Command { Wedge, Torus, Coincidence, Classes, Verify };

enum ExitStatus : int {
    kOk = 0,
    kComputationError = 1,
    kParseError = 2,
    kAxiomFailure = 3,
};

struct CommandConfig {
    Command command = Command::Wedge;
    std::string input_path;  ///< `-` reads stdin
    std::string inline_text; ///< used when input_path is empty
    int budget = kDefaultBudget;
    std::uint64_t seed = 0;
    int trials = 100;
    std::string format = "text";
};

struct RunResult {
    int status = kOk;
    std::string output;
};

namespace detail {

inline std::string read_input(const CommandConfig& cfg) {
    if (cfg.input_path.empty()) {
        if (cfg.inline_text.empty()) throw ParseError("--input", "no input given");
        return cfg.inline_text;
    }
    if (cfg.input_path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(cfg.input_path);
    if (!in) throw ParseError("--input", "cannot read '" + cfg.input_path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

inline void run_wedge(const CommandConfig& cfg, std::ostream& out) {
    const WedgeSelfMap m = io::parse_wedge(read_input(cfg));
    const TraceElement rt = reidemeister_trace_chain(m, cfg.budget);
    out << "RT = " << rt.str() << '\n';
    out << "L = " << lefschetz_number_wedge(m) << '\n';
    out << nielsen_report(rt).str() << '\n';
}

inline void run_torus(const CommandConfig& cfg, std::ostream& out, bool coincidence) {
    const io::TorusInstance inst = io::parse_torus(read_input(cfg));
    if (!coincidence && inst.has_second_map)
        throw ParseError("B", "the torus command takes a self-map; use coincidence for two maps");
    const AdmissibleTuple& t = inst.tuple;
    const auto points = coincidence_points(t.f(), t.g());
    const TraceElement rt = local_reidemeister_trace(t, points);
    out << "RT = " << rt.str() << '\n';
    out << "L = " << lefschetz_coincidence(t.f(), t.g()) << '\n';
    out << nielsen_report(rt).str() << '\n';
    out << "region = " << t.region().str() << '\n';
    out << "points:\n";
    std::vector<std::vector<std::string>> rows = {{"id", "x", "index", "class"}};
    for (const auto& p : points) {
        if (!t.region().contains(p.id)) continue;
        const int idx = point_index(t.f(), t.g(), p);
        rows.push_back({std::to_string(p.id), to_string(p), idx > 0 ? "+1" : "-1",
                        point_class(t, p).str()});
    }
    std::vector<std::size_t> widths(4, 0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
    for (const auto& r : rows) {
        std::string line = " ";
        for (std::size_t i = 0; i < r.size(); ++i)
            line += " " + (i + 1 < r.size() ? pad(r[i], widths[i]) : r[i]);
        out << line << '\n';
    }
}

inline void run_classes(const CommandConfig& cfg, std::ostream& out) {
    const io::ClassesQuery q = io::parse_classes(read_input(cfg));
    const auto& s = *q.setting;
    out << "group = " << s.codomain().str() << '\n';
    out << "psi - phi (abelianized) = " << s.difference().str() << '\n';
    if (q.pair) {
        const auto& [alpha, beta] = *q.pair;
        const auto r = twisted_equiv(s, alpha, beta, cfg.budget);
        out << "[" << alpha.str() << "] ~ [" << beta.str() << "]: " << to_string(r.verdict);
        if (r.witness) out << " (sigma = " << r.witness->str() << ")";
        if (r.verdict == EquivalenceResult::Verdict::Unknown)
            out << " (no witness with |sigma| <= " << cfg.budget << ")";
        out << '\n';
        return;
    }
    const auto classes = enumerate_classes(q.setting);
    if (!classes) {
        out << "classes: infinite or undecidable\n";
        return;
    }
    out << "classes: " << classes->size() << '\n';
    for (const auto& c : *classes) out << "  " << c.str() << '\n';
}

inline bool run_verify(const CommandConfig& cfg, std::ostream& out) {
    rtrace::detail::SeededSource rnd(cfg.seed);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"trial", "n", "det"};
    for (Axiom a : kAllAxioms) head.push_back(to_string(a));
    rows.push_back(head);
    int passed = 0;
    std::vector<std::string> failures;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const AdmissibleTuple t = random_instance(rnd);
        const std::uint64_t axiom_seed = rnd.engine()();
        const AxiomReport report = verify_axioms(t, axiom_seed);
        std::vector<std::string> row = {std::to_string(trial), std::to_string(t.dim()),
                                        to_string(lefschetz_coincidence(t.f(), t.g()))};
        for (Axiom a : kAllAxioms) {
            row.push_back(report[a].passed ? "pass" : "FAIL");
            if (!report[a].passed)
                failures.push_back("trial " + std::to_string(trial) + " " + to_string(a) + ": " +
                                   report[a].failure);
        }
        if (report.all_passed()) ++passed;
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(head.size(), 0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i)
            line += (i ? "  " : "") + (i + 1 < r.size() ? pad(r[i], widths[i]) : r[i]);
        out << line << '\n';
    }
    for (const auto& f : failures) out << f << '\n';
    out << "summary: " << passed << "/" << cfg.trials << " instances passed all axioms (seed "
        << cfg.seed << ")\n";
    return passed == cfg.trials;
}

} // namespace detail

/// Executes one command. Output is a deterministic function of the
/// configuration and input text.
inline RunResult run(const CommandConfig& cfg) {
    std::ostringstream out;
    RunResult result;
    try {
        if (cfg.format != "text") throw ParseError("--format", "only 'text' is supported");
        if (cfg.budget < 1) throw ParseError("--budget", "must be at least 1");
        if (cfg.trials < 1) throw ParseError("--trials", "must be at least 1");
        switch (cfg.command) {
        case Command::Wedge: detail::run_wedge(cfg, out); break;
        case Command::Torus: detail::run_torus(cfg, out, false); break;
        case Command::Coincidence: detail::run_torus(cfg, out, true); break;
        case Command::Classes: detail::run_classes(cfg, out); break;
        case Command::Verify:
            if (!detail::run_verify(cfg, out)) result.status = kAxiomFailure;
            break;
        }
    } catch (const ParseError& e) {
        out << "parse error: " << e.what() << '\n';
        result.status = kParseError;
    } catch (const Error& e) {
        out << "error: " << e.what() << '\n';
        result.status = kComputationError;
    }
    result.output = out.str();
    return result;
}

} // namespace rtrace::cli
