#pragma once

// Line-based input formats and the trace grammar. One instance per text;
// `#` starts a comment. See docs/formats.md.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtrace/chain_trace.hpp"
#include "rtrace/classes.hpp"
#include "rtrace/local_trace.hpp"

namespace rtrace {
namespace io {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

struct Line {
    int number;
    std::string text;
};

// Non-empty lines with comments removed.
inline std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string t = trim(raw);
        if (!t.empty()) out.push_back({number, std::move(t)});
    }
    return out;
}

inline std::string where(const Line& l, std::string_view field = {}) {
    std::string w = "line " + std::to_string(l.number);
    if (!field.empty()) w += " (" + std::string(field) + ")";
    return w;
}

inline Integer parse_integer(const std::string& tok, const std::string& where) {
    std::string t = strip_spaces(tok);
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw ParseError(where, "expected an integer, got '" + tok + "'");
    for (std::size_t k = i; k < t.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(t[k])))
            throw ParseError(where, "expected an integer, got '" + tok + "'");
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t);
}

inline Rational parse_rational(const std::string& tok, const std::string& where) {
    const std::string t = strip_spaces(tok);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(t, where));
    const Integer num = parse_integer(t.substr(0, slash), where);
    const Integer den = parse_integer(t.substr(slash + 1), where);
    if (den == 0) throw ParseError(where, "zero denominator in '" + tok + "'");
    return Rational(num, den);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

// `(a1,...,an)` with rational entries.
inline RatVector parse_rat_vector(const std::string& text, const std::string& where) {
    const std::string t = strip_spaces(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ParseError(where, "expected a vector like (a,b), got '" + text + "'");
    RatVector out;
    for (const auto& part : split(t.substr(1, t.size() - 2), ','))
        out.push_back(parse_rational(part, where));
    return out;
}

inline IntVector parse_int_vector(const std::string& text, const std::string& where) {
    IntVector out;
    for (const auto& q : parse_rat_vector(text, where)) {
        if (!is_integral(q)) throw ParseError(where, "expected integer entries in '" + text + "'");
        out.push_back(to_integer(q));
    }
    return out;
}

// `[[a,b],[c,d]]`
inline IntMatrix parse_matrix(const std::string& text, const std::string& where) {
    const std::string t = strip_spaces(text);
    if (t.size() < 4 || t.substr(0, 2) != "[[" || t.substr(t.size() - 2) != "]]")
        throw ParseError(where, "expected a matrix like [[a,b],[c,d]], got '" + text + "'");
    std::vector<IntVector> rows;
    for (const auto& row : split(t.substr(2, t.size() - 4), ']')) {
        std::string r = row;
        if (!r.empty() && r[0] == ',') r.erase(0, 1);
        if (!r.empty() && r[0] == '[') r.erase(0, 1);
        IntVector entries;
        for (const auto& e : split(r, ',')) entries.push_back(parse_integer(e, where));
        rows.push_back(std::move(entries));
    }
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw ParseError(where, "ragged matrix '" + text + "'");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

// `n=2` in a header line.
inline int parse_dimension(const std::string& tok, const std::string& where) {
    const std::string t = strip_spaces(tok);
    if (t.rfind("n=", 0) != 0) throw ParseError(where, "expected n=<rank>, got '" + tok + "'");
    const Integer n = parse_integer(t.substr(2), where);
    if (n < 1 || n > 64) throw ParseError(where, "rank must be between 1 and 64");
    return static_cast<int>(n);
}

inline std::pair<std::string, std::string> split_assignment(const Line& l) {
    const auto eq = l.text.find('=');
    if (eq == std::string::npos) throw ParseError(where(l), "expected 'key = value'");
    return {trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1))};
}

} // namespace detail

/// Word such as `x1 X2 x3` (uppercase is inverse); `e` or blank is the identity.
inline GroupElement parse_word(std::string_view text, const GroupDescriptor& d,
                               const std::string& where = "word") {
    Word letters;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok == "e" || tok == "1") continue;
        if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
            throw ParseError(where, "bad generator '" + tok + "'");
        const Integer idx = detail::parse_integer(tok.substr(1), where);
        if (idx < 1 || idx > d.rank)
            throw ParseError(where, "generator '" + tok + "' out of range for rank " +
                                        std::to_string(d.rank));
        const int i = static_cast<int>(idx);
        letters.push_back(tok[0] == 'x' ? i : -i);
    }
    return GroupElement::from_letters(d, letters);
}

/// A word or `(a1,...,an)` vector depending on the descriptor.
inline GroupElement parse_element(std::string_view text, const GroupDescriptor& d,
                                  const std::string& where = "element") {
    if (d.is_free()) return parse_word(text, d, where);
    IntVector v = detail::parse_int_vector(std::string(text), where);
    if (v.size() != static_cast<std::size_t>(d.rank))
        throw ParseError(where, "vector has " + std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(d.rank));
    return GroupElement::from_vector(d, std::move(v));
}

// Generator lines `x1 -> x1 x2 X1`, in order x1..xr, shared by the wedge
// and free-group classes formats.
namespace detail {

inline Homomorphism parse_generator_lines(const std::vector<std::pair<Line, std::string>>& lines,
                                          int rank) {
    const auto d = GroupDescriptor::free(rank);
    std::vector<GroupElement> images;
    for (const auto& [line, body] : lines) {
        const auto arrow = body.find("->");
        if (arrow == std::string::npos)
            throw ParseError(where(line), "expected 'xK -> word'");
        const std::string lhs = trim(body.substr(0, arrow));
        const std::string expected = "x" + std::to_string(images.size() + 1);
        if (lhs != expected)
            throw ParseError(where(line), "expected generator " + expected + ", got '" + lhs + "'");
        images.push_back(parse_word(body.substr(arrow + 2), d, where(line, lhs)));
    }
    if (static_cast<int>(images.size()) != rank)
        throw ParseError("input", "expected " + std::to_string(rank) + " generator lines, got " +
                                      std::to_string(images.size()));
    return Homomorphism(d, d, std::move(images));
}

} // namespace detail

/// Wedge endomorphism: one `xK -> word` line per generator, optional
/// `twist = word` selecting the lift.
inline WedgeSelfMap parse_wedge(std::string_view text) {
    std::vector<std::pair<detail::Line, std::string>> gens;
    std::optional<detail::Line> twist;
    for (const auto& l : detail::content_lines(text)) {
        if (l.text.rfind("twist", 0) == 0)
            twist = l;
        else
            gens.emplace_back(l, l.text);
    }
    if (gens.empty()) throw ParseError("input", "no generator lines");
    const Homomorphism endo = detail::parse_generator_lines(gens, static_cast<int>(gens.size()));
    if (!twist) return WedgeSelfMap(endo);
    const auto [key, value] = detail::split_assignment(*twist);
    if (key != "twist") throw ParseError(detail::where(*twist), "unknown key '" + key + "'");
    return WedgeSelfMap(endo, parse_word(value, endo.source(), detail::where(*twist, "twist")));
}

/// A parsed torus instance. `has_second_map` records whether B/d were given.
struct TorusInstance {
    AdmissibleTuple tuple;
    bool has_second_map = false;
};

/// Instance format:
///   torus n=2
///   A = [[0,-1],[1,0]]
///   c = (0,0)
///   B = ... / d = ...         (absent: g = id)
///   twist_f = (0,0)  twist_g = (0,0)
///   region = whole | points 0,2,5
inline TorusInstance parse_torus(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError("input", "empty instance");
    const auto& head = lines.front();
    std::istringstream hs(head.text);
    std::string kind, dim;
    hs >> kind >> dim;
    if (kind != "torus") throw ParseError(detail::where(head), "expected header 'torus n=<dim>'");
    const int n = detail::parse_dimension(dim, detail::where(head));
    const auto N = static_cast<std::size_t>(n);

    std::map<std::string, std::pair<detail::Line, std::string>> fields;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [key, value] = detail::split_assignment(lines[i]);
        static const std::set<std::string> known = {"A", "c", "B", "d", "twist_f", "twist_g", "region"};
        if (!known.count(key))
            throw ParseError(detail::where(lines[i]), "unknown key '" + key + "'");
        if (fields.count(key)) throw ParseError(detail::where(lines[i], key), "duplicate key");
        fields.emplace(key, std::make_pair(lines[i], value));
    }
    auto matrix = [&](const std::string& key) -> std::optional<IntMatrix> {
        auto it = fields.find(key);
        if (it == fields.end()) return std::nullopt;
        const auto w = detail::where(it->second.first, key);
        IntMatrix m = detail::parse_matrix(it->second.second, w);
        if (m.rows() != N || m.cols() != N)
            throw ParseError(w, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        return m;
    };
    auto translation = [&](const std::string& key) -> RatVector {
        auto it = fields.find(key);
        if (it == fields.end()) return RatVector(N);
        const auto w = detail::where(it->second.first, key);
        RatVector v = detail::parse_rat_vector(it->second.second, w);
        if (v.size() != N) throw ParseError(w, "expected " + std::to_string(n) + " entries");
        for (const auto& q : v)
            if (q < 0 || q >= 1) throw ParseError(w, "entry " + to_string(q) + " is outside [0,1)");
        return v;
    };
    auto twist = [&](const std::string& key) -> IntVector {
        auto it = fields.find(key);
        if (it == fields.end()) return IntVector(N);
        const auto w = detail::where(it->second.first, key);
        IntVector v = detail::parse_int_vector(it->second.second, w);
        if (v.size() != N) throw ParseError(w, "expected " + std::to_string(n) + " entries");
        return v;
    };

    auto A = matrix("A");
    if (!A) throw ParseError("input", "missing field A");
    auto B = matrix("B");
    if (!B && fields.count("d"))
        throw ParseError(detail::where(fields.at("d").first, "d"), "d given without B");
    AffineTorusMap f(*A, translation("c"));
    AffineTorusMap g = B ? AffineTorusMap(*B, translation("d")) : AffineTorusMap::identity(N);

    Region region = Region::all();
    if (auto it = fields.find("region"); it != fields.end()) {
        const auto w = detail::where(it->second.first, "region");
        const std::string v = it->second.second;
        if (v != "whole") {
            if (v.rfind("points", 0) != 0)
                throw ParseError(w, "expected 'whole' or 'points i,j,...'");
            std::set<int> ids;
            const std::string list = detail::strip_spaces(v.substr(6));
            if (!list.empty())
                for (const auto& tok : detail::split(list, ','))
                    ids.insert(static_cast<int>(detail::parse_integer(tok, w)));
            region = Region::selection(std::move(ids));
        }
    }
    return {AdmissibleTuple(std::move(f), std::move(g), twist("twist_f"), twist("twist_g"),
                            std::move(region)),
            B.has_value()};
}

/// A setting plus an optional pair to compare.
struct ClassesQuery {
    SettingPtr setting;
    std::optional<std::pair<GroupElement, GroupElement>> pair;
};

/// Classes format:
///   classes abelian n=2          or   classes free n=2
///   phi = [[3,0],[0,3]]               phi x1 -> x1 x2   (one line per generator)
///   psi = ...   (absent: identity)    psi x1 -> ...     (absent: identity)
///   alpha = (0,1)                     alpha = x1 X2
///   beta = (2,0)                      beta = e
inline ClassesQuery parse_classes(std::string_view text) {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError("input", "empty query");
    const auto& head = lines.front();
    std::istringstream hs(head.text);
    std::string word, kind, dim;
    hs >> word >> kind >> dim;
    if (word != "classes" || (kind != "abelian" && kind != "free"))
        throw ParseError(detail::where(head), "expected header 'classes abelian|free n=<rank>'");
    const int n = detail::parse_dimension(dim, detail::where(head));
    const bool abelian = kind == "abelian";
    const auto desc = abelian ? GroupDescriptor::free_abelian(n) : GroupDescriptor::free(n);

    std::optional<Homomorphism> phi, psi;
    std::vector<std::pair<detail::Line, std::string>> phi_lines, psi_lines;
    std::optional<GroupElement> alpha, beta;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const std::string name = l.text.substr(0, l.text.find_first_of(" =\t"));
        if (name == "alpha" || name == "beta") {
            auto [key, value] = detail::split_assignment(l);
            auto el = parse_element(value, desc, detail::where(l, key));
            (key == "alpha" ? alpha : beta) = std::move(el);
        } else if (name == "phi" || name == "psi") {
            if (abelian) {
                auto [key, value] = detail::split_assignment(l);
                const auto w = detail::where(l, key);
                IntMatrix m = detail::parse_matrix(value, w);
                if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
                    throw ParseError(w, "expected an " + std::to_string(n) + "x" +
                                            std::to_string(n) + " matrix");
                (key == "phi" ? phi : psi) = Homomorphism::from_matrix(m);
            } else {
                (name == "phi" ? phi_lines : psi_lines)
                    .emplace_back(l, detail::trim(l.text.substr(3)));
            }
        } else {
            throw ParseError(detail::where(l), "unknown key '" + name + "'");
        }
    }
    if (!abelian) {
        if (!phi_lines.empty()) phi = detail::parse_generator_lines(phi_lines, n);
        if (!psi_lines.empty()) psi = detail::parse_generator_lines(psi_lines, n);
    }
    if (!phi) throw ParseError("input", "missing phi");
    if (!psi) psi = Homomorphism::identity(desc);
    if (alpha.has_value() != beta.has_value())
        throw ParseError("input", "alpha and beta must be given together");

    ClassesQuery q{make_setting(*phi, *psi), std::nullopt};
    if (alpha) q.pair.emplace(*alpha, *beta);
    return q;
}

/// Inverse of TraceElement::str() for the given setting. Representatives of
/// decidable settings are re-canonicalized; budget-limited ones are taken
/// as written and tagged with `budget`.
inline TraceElement parse_trace(std::string_view text, const SettingPtr& s,
                                int budget = kDefaultBudget) {
    TraceElement out(s);
    const std::string t = detail::trim(text);
    if (t == "0") return out;
    std::size_t pos = 0;
    while (pos < t.size()) {
        while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos == t.size()) break;
        const auto open = t.find('[', pos);
        const auto close = t.find(']', open);
        if (open == std::string::npos || close == std::string::npos)
            throw ParseError("trace", "expected '<coefficient>[<representative>]' at offset " +
                                          std::to_string(pos));
        const Integer k = detail::parse_integer(t.substr(pos, open - pos), "trace");
        const GroupElement rep = parse_element(t.substr(open + 1, close - open - 1), s->codomain(), "trace");
        if (s->decidable())
            out.add(canonical_rep(s, rep), k);
        else
            out.add(ClassId{s, rep, budget}, k);
        pos = close + 1;
    }
    return out;
}

} // namespace io
} // namespace rtrace
