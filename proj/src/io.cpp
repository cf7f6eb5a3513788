#include "gridpm/io.hpp"

#include <fstream>
#include <sstream>

namespace gridpm {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

Permutation digits_to_permutation(const std::string& digits, int line) {
    std::vector<int> vals;
    for (char ch : digits) {
        if (ch < '1' || ch > '9') throw parse_error("expected digits 1-9 in permutation token", line);
        vals.push_back(ch - '0');
    }
    try {
        return Permutation(vals);
    } catch (const std::exception& e) {
        throw parse_error(e.what(), line);
    }
}

}  // namespace

Permutation parse_permutation(const std::string& text) {
    const auto lines = lines_of(text);
    std::vector<int> vals;
    int at_line = 1;
    bool seen = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const auto toks = split_ws(lines[i]);
        if (toks.empty()) continue;
        if (seen) throw parse_error("permutation file has more than one content line",
                                    static_cast<int>(i) + 1);
        seen = true;
        at_line = static_cast<int>(i) + 1;
        for (const auto& t : toks) {
            try {
                size_t used = 0;
                const int v = std::stoi(t, &used);
                if (used != t.size()) throw std::invalid_argument("trailing characters");
                vals.push_back(v);
            } catch (const std::exception&) {
                throw parse_error("bad integer '" + t + "'", at_line);
            }
        }
    }
    try {
        return Permutation(vals);
    } catch (const std::exception& e) {
        throw parse_error(e.what(), at_line);
    }
}

std::string format_permutation(const Permutation& p) { return to_string(p) + "\n"; }

namespace {

ClassEntry parse_entry(std::string tok, int line) {
    bool declared = false;
    if (!tok.empty() && tok.back() == '!') {
        declared = true;
        tok.pop_back();
    }
    ClassEntry e;
    if (tok == ".")
        e = ClassEntry::empty();
    else if (tok == "+")
        e = ClassEntry::inc();
    else if (tok == "-")
        e = ClassEntry::dec();
    else if (tok.starts_with("Av(") && tok.ends_with(")"))
        e = ClassEntry::av(digits_to_permutation(tok.substr(3, tok.size() - 4), line));
    else if (tok.starts_with("F{") && tok.ends_with("}")) {
        std::vector<Permutation> members;
        std::string body = tok.substr(2, tok.size() - 3);
        std::string cur;
        for (char ch : body + ";") {
            if (ch == ';') {
                if (!cur.empty()) members.push_back(digits_to_permutation(cur, line));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        e = ClassEntry::finite(members);
    } else {
        throw parse_error("unknown matrix token '" + tok + "'", line);
    }
    if (declared) e = e.with_declared_bounded_gridwidth(Tristate::yes);
    return e;
}

std::string format_entry(const ClassEntry& e) {
    std::string out;
    switch (e.kind()) {
        case EntryKind::empty:
            return ".";
        case EntryKind::inc:
            return "+";
        case EntryKind::dec:
            return "-";
        case EntryKind::av: {
            out = "Av(";
            for (int i = 1; i <= e.basis().size(); ++i) {
                if (e.basis().value_at(i) > 9)
                    throw std::invalid_argument("matrix file format holds single-digit bases only");
                out += static_cast<char>('0' + e.basis().value_at(i));
            }
            out += ")";
            break;
        }
        case EntryKind::finite: {
            out = "F{";
            bool first = true;
            for (const auto& m : e.members()) {
                if (m.empty()) continue;  // implied by downward closure
                if (!first) out += ";";
                first = false;
                for (int i = 1; i <= m.size(); ++i) {
                    if (m.value_at(i) > 9)
                        throw std::invalid_argument("matrix file format holds single-digit members only");
                    out += static_cast<char>('0' + m.value_at(i));
                }
            }
            out += "}";
            break;
        }
    }
    if (e.declared_bounded_gridwidth() == Tristate::yes &&
        (e.kind() == EntryKind::av || e.kind() == EntryKind::finite))
        out += "!";
    return out;
}

}  // namespace

GriddingMatrix parse_matrix(const std::string& text) {
    const auto lines = lines_of(text);
    std::vector<std::vector<ClassEntry>> rows;  // file order: top row first
    for (size_t i = 0; i < lines.size(); ++i) {
        const auto toks = split_ws(lines[i]);
        if (toks.empty()) continue;
        std::vector<ClassEntry> row;
        for (const auto& t : toks) row.push_back(parse_entry(t, static_cast<int>(i) + 1));
        if (!rows.empty() && rows.front().size() != row.size())
            throw parse_error("ragged matrix rows", static_cast<int>(i) + 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty matrix file", 1);
    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows.front().size());
    GriddingMatrix m(width, height);
    for (int j = 1; j <= height; ++j)  // file row 0 is the top row
        for (int i = 1; i <= width; ++i)
            m.set(i, j, rows[static_cast<size_t>(height - j)][static_cast<size_t>(i) - 1]);
    return m;
}

std::string format_matrix(const GriddingMatrix& m) {
    std::string out;
    for (int j = m.height(); j >= 1; --j) {
        for (int i = 1; i <= m.width(); ++i) {
            if (i > 1) out += ' ';
            out += format_entry(m.at(i, j));
        }
        out += '\n';
    }
    return out;
}

GriddedPermutation parse_gridded(const std::string& text, const GriddingMatrix& m) {
    const auto lines = lines_of(text);
    std::vector<std::string> content;
    for (const auto& l : lines)
        if (!split_ws(l).empty()) content.push_back(l);
    if (content.size() != 3) throw parse_error("gridded file needs permutation, cols:, rows: lines", 1);

    Permutation p = parse_permutation(content[0]);
    auto parse_cuts = [&](const std::string& line, const std::string& prefix, int expect,
                          int lineno) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] != prefix) throw parse_error("expected '" + prefix + "' line", lineno);
        std::vector<int> cuts{0};
        for (size_t i = 1; i < toks.size(); ++i) {
            try {
                cuts.push_back(std::stoi(toks[i]));
            } catch (const std::exception&) {
                throw parse_error("bad cut '" + toks[i] + "'", lineno);
            }
        }
        cuts.push_back(p.size());
        if (static_cast<int>(cuts.size()) != expect + 1)
            throw parse_error("wrong number of interior cuts on '" + prefix + "' line", lineno);
        return cuts;
    };
    Gridding g;
    g.col_cuts = parse_cuts(content[1], "cols:", m.width(), 2);
    g.row_cuts = parse_cuts(content[2], "rows:", m.height(), 3);
    try {
        return GriddedPermutation(std::move(p), m, std::move(g));
    } catch (const std::exception& e) {
        throw parse_error(e.what(), 1);
    }
}

std::string format_gridded(const GriddedPermutation& g) {
    std::string out = to_string(g.perm()) + "\n";
    out += "cols:";
    for (int i = 1; i < g.matrix().width(); ++i)
        out += " " + std::to_string(g.gridding().col_cuts[static_cast<size_t>(i)]);
    out += "\nrows:";
    for (int j = 1; j < g.matrix().height(); ++j)
        out += " " + std::to_string(g.gridding().row_cuts[static_cast<size_t>(j)]);
    out += "\n";
    return out;
}

CnfSummary parse_dimacs(const std::string& text) {
    const auto lines = lines_of(text);
    CnfSummary s;
    bool header = false;
    int declared_clauses = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
        const auto toks = split_ws(lines[i]);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (toks.size() != 4 || toks[1] != "cnf")
                throw parse_error("bad DIMACS header", static_cast<int>(i) + 1);
            try {
                s.variables = std::stoi(toks[2]);
                declared_clauses = std::stoi(toks[3]);
            } catch (const std::exception&) {
                throw parse_error("bad DIMACS header numbers", static_cast<int>(i) + 1);
            }
            header = true;
            continue;
        }
        if (!header) throw parse_error("clause before DIMACS header", static_cast<int>(i) + 1);
        for (const auto& t : toks) {
            int lit = 0;
            try {
                lit = std::stoi(t);
            } catch (const std::exception&) {
                throw parse_error("bad literal '" + t + "'", static_cast<int>(i) + 1);
            }
            if (lit == 0) ++s.clauses;
        }
    }
    if (!header) throw parse_error("missing DIMACS header", 1);
    if (declared_clauses != s.clauses)
        throw parse_error("clause count differs from header (" + std::to_string(s.clauses) +
                              " vs " + std::to_string(declared_clauses) + ")",
                          1);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json to_json(const Permutation& p) { return nlohmann::json(p.values()); }

nlohmann::json to_json(const DichotomyVerdict& v) {
    nlohmann::json witness = nlohmann::json::array();
    for (const Cell& c : v.witness) witness.push_back({c.col, c.row});
    return {{"verdict", to_string(v.verdict)}, {"witness", witness}, {"reason", v.reason}};
}

namespace {

nlohmann::json tree_node_json(const GridTree& t, int id) {
    const auto& n = t.node(id);
    if (n.is_leaf()) return nlohmann::json::array({n.point.x, n.point.y});
    return {{"l", tree_node_json(t, n.left)}, {"r", tree_node_json(t, n.right)}};
}

}  // namespace

nlohmann::json to_json(const GridTree& t) {
    if (t.empty()) return nullptr;
    return tree_node_json(t, t.root());
}

nlohmann::json to_json(const SignedPermutation& s) {
    std::vector<int> signed_vals;
    for (int i = 1; i <= s.size(); ++i) signed_vals.push_back(s.at(i));
    return nlohmann::json(signed_vals);
}

nlohmann::json to_json(const GriddingMatrix& m) {
    return {{"width", m.width()}, {"height", m.height()}, {"rows", format_matrix(m)}};
}

nlohmann::json to_json(const HardnessProvenance& p) {
    return {{"source", to_json(p.source)},
            {"path_matrix", to_json(p.path)},
            {"f", to_json(p.f)},
            {"g", to_json(p.g)},
            {"anchor_cell", {p.anchor_cell.col, p.anchor_cell.row}},
            {"anchor_length", p.anchor_length},
            {"steps", p.steps}};
}

nlohmann::json to_json(const HardnessInstance& i) {
    return {{"pattern", to_json(i.pattern_star)},
            {"text", to_json(i.text_star)},
            {"provenance", to_json(i.provenance)}};
}

SignedPermutation signed_permutation_from_json(const nlohmann::json& j) {
    std::vector<int> vals, signs;
    for (const auto& v : j) {
        const int s = v.get<int>();
        vals.push_back(std::abs(s));
        signs.push_back(s < 0 ? -1 : 1);
    }
    return {Permutation(vals), signs};
}

GriddingMatrix matrix_from_json(const nlohmann::json& j) {
    return parse_matrix(j.at("rows").get<std::string>());
}

HardnessProvenance provenance_from_json(const nlohmann::json& j) {
    HardnessProvenance p;
    p.source = matrix_from_json(j.at("source"));
    p.path = matrix_from_json(j.at("path_matrix"));
    p.f = signed_permutation_from_json(j.at("f"));
    p.g = signed_permutation_from_json(j.at("g"));
    p.anchor_cell = {j.at("anchor_cell")[0].get<int>(), j.at("anchor_cell")[1].get<int>()};
    p.anchor_length = j.at("anchor_length").get<int>();
    p.steps = j.at("steps").get<int>();
    return p;
}

HardnessInstance instance_from_json(const nlohmann::json& j) {
    HardnessInstance i;
    i.pattern_star = Permutation(j.at("pattern").get<std::vector<int>>());
    i.text_star = Permutation(j.at("text").get<std::vector<int>>());
    i.provenance = provenance_from_json(j.at("provenance"));
    return i;
}

}  // namespace gridpm
