#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "gridpm/constructions.hpp"
#include "gridpm/io.hpp"
#include "gridpm/matcher.hpp"
#include "gridpm/width.hpp"

using namespace gridpm;
using nlohmann::json;

namespace {

// Exit codes: 0 affirmative/success, 1 negative decision, 2 usage or format
// error, 3 resource limit exceeded.
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Options {
    bool json_out = false;
    uint64_t seed = 0;
};

json with_format(json j) {
    j["format"] = 1;
    return j;
}

std::string cells_to_text(const std::vector<Cell>& cells) {
    std::string out;
    for (const Cell& c : cells) {
        if (!out.empty()) out += ' ';
        out += "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
    }
    return out;
}

int run_classify(const Options& opt, const std::string& matrix_path) {
    const GriddingMatrix m = parse_matrix(read_file(matrix_path));
    const DichotomyVerdict v = classify(m);
    if (opt.json_out) {
        std::cout << with_format(to_json(v)).dump() << "\n";
    } else {
        std::cout << "verdict: " << to_string(v.verdict) << "\n";
        std::cout << "reason: " << v.reason << "\n";
        if (!v.witness.empty()) std::cout << "witness: " << cells_to_text(v.witness) << "\n";
    }
    return v.verdict == Verdict::inconclusive ? kExitNo : kExitYes;
}

struct MatchJob {
    std::string path;
    MatchResult result;
};

int run_match(const Options& opt, const std::string& pattern_path,
              const std::vector<std::string>& text_paths, const std::string& solver,
              const std::string& ordering_path, bool witness, uint64_t max_states, int jobs) {
    MatchRequest base;
    base.pattern = parse_permutation(read_file(pattern_path));
    base.strategy = solver == "dp" ? MatchStrategy::dp : MatchStrategy::brute;
    base.want_witness = witness;
    base.max_states = max_states;
    if (!ordering_path.empty()) {
        const Permutation sigma = parse_permutation(read_file(ordering_path));
        base.ordering = PwOrdering{sigma, pw_under_ordering(base.pattern, sigma)};
    }

    std::vector<MatchJob> results(text_paths.size());
    for (size_t i = 0; i < text_paths.size(); ++i) results[i].path = text_paths[i];

    // Workers own disjoint strides; output is merged in input order below.
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](size_t from, size_t step) {
        for (size_t i = from; i < results.size(); i += step) {
            try {
                MatchRequest req = base;
                req.text = parse_permutation(read_file(results[i].path));
                results[i].result = match(req);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const size_t nthreads =
        static_cast<size_t>(std::max(1, std::min<int>(jobs, static_cast<int>(results.size()))));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
    worker(0, nthreads);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    bool all = true;
    json out = json::array();
    for (const auto& r : results) {
        all = all && r.result.contained;
        if (opt.json_out) {
            json one{{"text", r.path}, {"contained", r.result.contained}};
            if (r.result.witness) one["witness"] = r.result.witness->positions;
            one["stats"] = {{"states", r.result.stats.states},
                            {"transitions", r.result.stats.transitions},
                            {"peak_layer", r.result.stats.peak_layer}};
            out.push_back(one);
        } else {
            std::cout << (results.size() > 1 ? r.path + ": " : std::string());
            std::cout << (r.result.contained ? "contained" : "not contained");
            if (r.result.witness) {
                std::cout << " at";
                for (int pos : r.result.witness->positions) std::cout << ' ' << pos;
            }
            std::cout << "\n";
        }
    }
    if (opt.json_out) std::cout << with_format({{"results", out}}).dump() << "\n";
    return all ? kExitYes : kExitNo;
}

int run_gridcheck(const Options& opt, const std::string& perm_path, const std::string& matrix_path,
                  const std::string& gridded_path) {
    const GriddingMatrix m = parse_matrix(read_file(matrix_path));
    if (!gridded_path.empty()) {
        // parse_gridded validates against the matrix; failures surface as
        // parse errors with exit code 2, structural mismatches as "invalid".
        try {
            parse_gridded(read_file(gridded_path), m);
        } catch (const parse_error& e) {
            if (std::string(e.what()).find("does not satisfy") == std::string::npos) throw;
            if (opt.json_out)
                std::cout << with_format({{"valid", false}}).dump() << "\n";
            else
                std::cout << "invalid\n";
            return kExitNo;
        }
        if (opt.json_out)
            std::cout << with_format({{"valid", true}}).dump() << "\n";
        else
            std::cout << "valid\n";
        return kExitYes;
    }
    const Permutation p = parse_permutation(read_file(perm_path));
    const auto g = find_gridding(p, m);
    if (opt.json_out) {
        json j{{"griddable", g.has_value()}};
        if (g) {
            j["col_cuts"] = g->col_cuts;
            j["row_cuts"] = g->row_cuts;
        }
        std::cout << with_format(j).dump() << "\n";
    } else if (g) {
        std::cout << format_gridded(GriddedPermutation(p, m, *g));
    } else {
        std::cout << "no gridding\n";
    }
    return g.has_value() ? kExitYes : kExitNo;
}

int run_width(const Options& opt, const std::string& mode, const std::string& perm_path,
              const std::string& ordering_path, int max_n) {
    const Permutation p = parse_permutation(read_file(perm_path));
    int value = 0;
    if (mode == "pw" || mode == "gw") {
        if (p.size() > std::min(max_n, kExactWidthMaxN))
            throw resource_limit_error("permutation longer than the exact-width limit");
        value = exact_width_oracle(p, mode == "pw" ? WidthMode::pathwidth : WidthMode::gridwidth);
    } else if (mode == "pw-order") {
        if (ordering_path.empty()) throw parse_error("pw-order needs --ordering", 0);
        value = pw_under_ordering(p, parse_permutation(read_file(ordering_path)));
    } else if (mode == "hpw") {
        value = horizontal_pw(p);
    } else if (mode == "vpw") {
        value = vertical_pw(p);
    } else {
        throw parse_error("unknown width mode '" + mode + "'", 0);
    }
    if (opt.json_out)
        std::cout << with_format({{"mode", mode}, {"value", value}}).dump() << "\n";
    else
        std::cout << value << "\n";
    return kExitYes;
}

ClassEntry entry_from_token(const std::string& tok) {
    return parse_matrix(tok + "\n").at(1, 1);
}

int run_gen(const Options& opt, const std::string& kind, int k, int size,
            const std::string& c_tok, const std::string& d_tok, const std::string& evens,
            const std::string& odds, const std::string& matrix_path, int n) {
    if (kind == "staircase") {
        std::cout << format_matrix(
            staircase_matrix(k, entry_from_token(c_tok), entry_from_token(d_tok)));
    } else if (kind == "lane") {
        std::cout << format_gridded(make_lane(k));
    } else if (kind == "alternation") {
        auto dir = [](const std::string& s) {
            return s == "dec" ? Direction::decreasing : Direction::increasing;
        };
        std::cout << format_permutation(monotone_alternation(size, dir(evens), dir(odds)));
    } else if (kind == "path-witness") {
        std::cout << format_gridded(path_witness(parse_matrix(read_file(matrix_path))));
    } else if (kind == "gridded") {
        std::mt19937_64 rng(opt.seed);
        std::cout << format_gridded(random_gridded(parse_matrix(read_file(matrix_path)), n, rng));
    } else {
        throw parse_error("unknown gen kind '" + kind + "'", 0);
    }
    return kExitYes;
}

SignedPermutation parse_signed(const std::string& text) {
    std::vector<int> vals, signs;
    std::istringstream in(text);
    int v = 0;
    while (in >> v) {
        vals.push_back(std::abs(v));
        signs.push_back(v < 0 ? -1 : 1);
    }
    return {Permutation(vals), signs};
}

int run_transform(const std::string& kind, const std::string& matrix_path,
                  const std::string& gridded_path, int q, const std::string& f_text,
                  const std::string& g_text, const std::string& text_matrix_path,
                  const std::string& text_gridded_path, int cell_col, int cell_row, int window) {
    const GriddingMatrix m = parse_matrix(read_file(matrix_path));
    if (kind == "refine") {
        std::cout << format_matrix(refine(m, q));
    } else if (kind == "fg") {
        const SignedPermutation f = parse_signed(f_text);
        const SignedPermutation g = parse_signed(g_text);
        if (gridded_path.empty())
            std::cout << format_matrix(fg_transform(m, f, g));
        else
            std::cout << format_gridded(
                fg_transform(parse_gridded(read_file(gridded_path), m), f, g));
    } else if (kind == "confine") {
        std::cout << format_gridded(confine(parse_gridded(read_file(gridded_path), m)));
    } else if (kind == "anchor") {
        const GriddedPermutation p = parse_gridded(read_file(gridded_path), m);
        const GriddingMatrix tm = parse_matrix(read_file(text_matrix_path));
        const GriddedPermutation t = parse_gridded(read_file(text_gridded_path), tm);
        const AnchoredPair a = add_anchors(p, t, {cell_col, cell_row});
        std::cout << with_format({{"pattern", to_json(a.pattern)},
                                  {"text", to_json(a.text)},
                                  {"anchor_length", a.anchor_length}})
                         .dump()
                  << "\n";
    } else if (kind == "path-matrix") {
        const PathMatrixResult res = path_matrix(m, q);
        if (window > 0) {
            const auto w = extract_staircase_path(res.matrix, window);
            if (!w) throw std::runtime_error("no staircase window of the requested size");
            std::cout << format_matrix(*w);
        } else {
            std::cout << format_matrix(res.matrix);
        }
    } else if (kind == "bumper-cycle") {
        const auto path = find_bumper_ended_path(m);
        if (!path) {
            std::cerr << "no bumper-ended path\n";
            return kExitNo;
        }
        std::cout << format_matrix(bumper_cycle_matrix(m, *path));
    } else {
        throw parse_error("unknown transform kind '" + kind + "'", 0);
    }
    return kExitYes;
}

int run_reduce(const std::string& cnf_path, const std::string& matrix_path,
               const std::string& base_pattern_path, const std::string& base_text_path) {
    const CnfSummary cnf = parse_dimacs(read_file(cnf_path));
    const int steps = 2 * cnf.clauses + 1;
    const GriddingMatrix m = parse_matrix(read_file(matrix_path));
    const GriddingMatrix pm = staircase_matrix(steps, ClassEntry::inc(), ClassEntry::inc());
    const GriddingMatrix tm = staircase_matrix(
        steps, ClassEntry::av(Permutation(std::vector<int>{3, 2, 1})), ClassEntry::inc());
    const GriddedPermutation bp = parse_gridded(read_file(base_pattern_path), pm);
    const GriddedPermutation bt = parse_gridded(read_file(base_text_path), tm);
    const HardnessInstance inst = build_hardness_instance(m, bp, bt);
    std::cout << with_format(to_json(inst)).dump() << "\n";
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid classes of permutations: dichotomy classification, width bounds, "
                 "pattern matching and hardness instances"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json_out, "structured JSON output");
    app.add_option("--seed", opt.seed, "seed for randomized generation");

    std::string matrix_path, perm_path, gridded_path, ordering_path;
    std::string text_matrix_path, text_gridded_path;
    std::vector<std::string> text_paths;
    std::string solver = "brute", width_mode, gen_kind, transform_kind;
    std::string c_tok = "+", d_tok = "+", evens = "inc", odds = "inc";
    std::string cnf_path, base_pattern_path, base_text_path, f_text, g_text;
    bool witness = false;
    uint64_t max_states = 0;
    int jobs = 1, max_n = kExactWidthMaxN, k = 1, size = 2, q = 1, n = 0;
    int cell_col = 1, cell_row = 1, window = 0;

    auto* classify_cmd = app.add_subcommand("classify", "dichotomy verdict for a gridding matrix");
    classify_cmd->add_option("-m,--matrix", matrix_path, "matrix file")->required();

    auto* match_cmd = app.add_subcommand("match", "pattern containment");
    match_cmd->add_option("-p,--pattern", perm_path, "pattern file")->required();
    match_cmd->add_option("-t,--text", text_paths, "text file(s)")->required();
    match_cmd->add_option("--solver", solver, "brute|dp")->check(CLI::IsMember({"brute", "dp"}));
    match_cmd->add_option("--ordering", ordering_path, "ordering file for the dp engine");
    match_cmd->add_flag("--witness", witness, "report an occurrence");
    match_cmd->add_option("--max-states", max_states, "dp state budget (0 = unlimited)");
    match_cmd->add_option("--jobs", jobs, "parallel jobs across texts");

    auto* gridcheck_cmd = app.add_subcommand("gridcheck", "find or validate a gridding");
    gridcheck_cmd->add_option("-m,--matrix", matrix_path, "matrix file")->required();
    gridcheck_cmd->add_option("-p,--perm", perm_path, "permutation file");
    gridcheck_cmd->add_option("--gridded", gridded_path, "gridded file to validate");

    auto* width_cmd = app.add_subcommand("width", "width parameters");
    width_cmd->add_option("--mode", width_mode, "pw|gw|pw-order|hpw|vpw")->required();
    width_cmd->add_option("-p,--perm", perm_path, "permutation file")->required();
    width_cmd->add_option("--ordering", ordering_path, "ordering for pw-order");
    width_cmd->add_option("--max-n", max_n, "exact-oracle length cap");

    auto* gen_cmd = app.add_subcommand("gen", "generate objects");
    gen_cmd->add_option("kind", gen_kind, "staircase|lane|alternation|path-witness|gridded")
        ->required();
    gen_cmd->add_option("-k,--steps", k, "staircase/lane steps");
    gen_cmd->add_option("--size", size, "alternation size");
    gen_cmd->add_option("--cell-c", c_tok, "staircase diagonal entry token");
    gen_cmd->add_option("--cell-d", d_tok, "staircase off-diagonal entry token");
    gen_cmd->add_option("--evens", evens, "inc|dec");
    gen_cmd->add_option("--odds", odds, "inc|dec");
    gen_cmd->add_option("-m,--matrix", matrix_path, "matrix file");
    gen_cmd->add_option("-n,--length", n, "length for gridded generation");

    auto* transform_cmd = app.add_subcommand("transform", "matrix and gridding transforms");
    transform_cmd
        ->add_option("kind", transform_kind, "refine|fg|confine|anchor|path-matrix|bumper-cycle")
        ->required();
    transform_cmd->add_option("-m,--matrix", matrix_path, "matrix file")->required();
    transform_cmd->add_option("-g,--gridded", gridded_path, "gridded file");
    transform_cmd->add_option("-q,--factor", q, "refinement factor / path length");
    transform_cmd->add_option("-f,--cols", f_text, "signed column permutation, e.g. '-2 1'");
    transform_cmd->add_option("--rows", g_text, "signed row permutation");
    transform_cmd->add_option("--text-matrix", text_matrix_path, "text matrix file (anchor)");
    transform_cmd->add_option("--text-gridded", text_gridded_path, "text gridded file (anchor)");
    transform_cmd->add_option("--cell-col", cell_col, "anchor cell column");
    transform_cmd->add_option("--cell-row", cell_row, "anchor cell row");
    transform_cmd->add_option("--window", window, "staircase window size (path-matrix)");

    auto* reduce_cmd = app.add_subcommand("reduce", "hardness-instance pipeline");
    reduce_cmd->add_option("--cnf", cnf_path, "DIMACS file sizing the pipeline")->required();
    reduce_cmd->add_option("-m,--matrix", matrix_path, "cyclic monotone matrix")->required();
    reduce_cmd->add_option("--base-pattern", base_pattern_path, "gridded base pattern")->required();
    reduce_cmd->add_option("--base-text", base_text_path, "gridded base text")->required();

    for (auto* sub : {classify_cmd, match_cmd, gridcheck_cmd, width_cmd, gen_cmd, transform_cmd,
                      reduce_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(opt, matrix_path);
        if (match_cmd->parsed())
            return run_match(opt, perm_path, text_paths, solver, ordering_path, witness,
                             max_states, jobs);
        if (gridcheck_cmd->parsed())
            return run_gridcheck(opt, perm_path, matrix_path, gridded_path);
        if (width_cmd->parsed()) return run_width(opt, width_mode, perm_path, ordering_path, max_n);
        if (gen_cmd->parsed())
            return run_gen(opt, gen_kind, k, size, c_tok, d_tok, evens, odds, matrix_path, n);
        if (transform_cmd->parsed())
            return run_transform(transform_kind, matrix_path, gridded_path, q, f_text, g_text,
                                 text_matrix_path, text_gridded_path, cell_col, cell_row, window);
        if (reduce_cmd->parsed())
            return run_reduce(cnf_path, matrix_path, base_pattern_path, base_text_path);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what();
        if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
        std::cerr << "\n";
        return kExitUsage;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
