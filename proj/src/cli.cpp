#include "ctt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctt/combinatorics.hpp"
#include "ctt/derivative_chain.hpp"
#include "ctt/games.hpp"
#include "ctt/oracles.hpp"
#include "ctt/search.hpp"
#include "ctt/serialize.hpp"
#include "ctt/tt_round.hpp"

namespace ctt::cli {

namespace {

using nlohmann::json;

json op_count_json(const OpCount& ops) {
    return json{{"additions", ops.additions},
                {"multiplications", ops.multiplications},
                {"total", ops.total()}};
}

// Counts beyond 2^53 lose digits as JSON numbers; ship those as strings.
json bigint_json(const bigint& v) {
    static const bigint lim = bigint(1) << 53;
    if (v >= -lim && v <= lim) return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

// --- input files ---------------------------------------------------------------

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    Matrix A;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<double> row;
        std::string cell;
        std::istringstream cells(t);
        while (std::getline(cells, cell, ',')) {
            const std::string c = strip(cell);
            if (c.empty()) throw std::invalid_argument("matrix file: empty cell in '" + path + "'");
            std::size_t used = 0;
            row.push_back(std::stod(c, &used));
            if (used != c.size())
                throw std::invalid_argument("matrix file: bad number '" + c + "'");
        }
        if (!A.empty() && row.size() != A.front().size())
            throw std::invalid_argument("matrix file: ragged rows in '" + path + "'");
        A.push_back(std::move(row));
    }
    if (A.empty()) throw std::invalid_argument("matrix file '" + path + "' holds no rows");
    return A;
}

CnfFormula read_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CNF file '" + path + "'");
    CnfFormula F;
    bool saw_header = false;
    std::vector<int> clause;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (t.empty() || t[0] == 'c' || t[0] == '%') continue;
        if (t[0] == 'p') {
            std::istringstream hdr(t);
            std::string p, fmt;
            int clauses = 0;
            if (!(hdr >> p >> fmt >> F.vars >> clauses) || fmt != "cnf")
                throw std::invalid_argument("CNF file: malformed problem line '" + t + "'");
            saw_header = true;
            continue;
        }
        std::istringstream nums(t);
        int lit = 0;
        while (nums >> lit) {
            if (lit == 0) {
                F.clauses.push_back(clause);
                clause.clear();
            } else {
                clause.push_back(lit);
            }
        }
    }
    if (!clause.empty()) F.clauses.push_back(clause);
    if (!saw_header) throw std::invalid_argument("CNF file '" + path + "' lacks a 'p cnf' line");
    F.validate();
    return F;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

// --- game plumbing ---------------------------------------------------------------

GameKind kind_from_name(const std::string& s) {
    if (s == "shoes") return GameKind::Shoes;
    if (s == "airport") return GameKind::Airport;
    if (s == "majority") return GameKind::Majority;
    if (s == "bankruptcy") return GameKind::Bankruptcy;
    if (s == "seller") return GameKind::OneSeller;
    throw std::invalid_argument("unknown game kind '" + s + "'");
}

const char* kind_name(GameKind k) {
    switch (k) {
    case GameKind::Shoes: return "shoes";
    case GameKind::Airport: return "airport";
    case GameKind::Majority: return "majority";
    case GameKind::Bankruptcy: return "bankruptcy";
    case GameKind::OneSeller: return "seller";
    }
    return "?";
}

Weights weights_from_name(const std::string& s) {
    if (s == "shapley") return Weights::Shapley;
    if (s == "banzhaf") return Weights::Banzhaf;
    throw std::invalid_argument("unknown weight family '" + s + "' (shapley|banzhaf)");
}

GameSpec game_from_config(const json& cfg) {
    GameSpec g;
    g.kind = kind_from_name(cfg.at("kind").get<std::string>());
    g.players = cfg.at("players").get<int>();
    g.weights = weights_from_name(cfg.value("weights", "shapley"));
    if (!cfg.contains("params")) {
        const auto seed = cfg.value("seed", std::uint64_t(0));
        GameSpec r = random_game(g.kind, g.players, seed);
        r.weights = g.weights;
        return r;
    }
    const json& p = cfg.at("params");
    switch (g.kind) {
    case GameKind::Shoes:
        break;
    case GameKind::Airport:
        g.costs = p.at("costs").get<std::vector<double>>();
        break;
    case GameKind::Majority:
        g.weights_maj = p.at("weights").get<std::vector<long long>>();
        g.threshold = p.at("threshold").get<long long>();
        break;
    case GameKind::Bankruptcy:
        g.claims = p.at("claims").get<std::vector<double>>();
        g.estate = p.at("estate").get<double>();
        break;
    case GameKind::OneSeller:
        g.prices = p.at("prices").get<std::vector<double>>();
        break;
    }
    g.validate();
    return g;
}

json game_params_json(const GameSpec& g) {
    json p{{"players", g.players},
           {"weight_family", g.weights == Weights::Shapley ? "shapley" : "banzhaf"}};
    switch (g.kind) {
    case GameKind::Shoes:
        p["left_sellers"] = (g.players - 1) / 2;
        break;
    case GameKind::Airport:
        p["costs"] = g.costs;
        break;
    case GameKind::Majority:
        p["weights"] = g.weights_maj;
        p["threshold"] = g.threshold;
        break;
    case GameKind::Bankruptcy:
        p["claims"] = g.claims;
        p["estate"] = g.estate;
        break;
    case GameKind::OneSeller:
        p["prices"] = g.prices;
        break;
    }
    return p;
}

// Contraction cost of the two-tensor payoff path, summed over all players.
std::optional<OpCount> pair_contraction_ops(const GameSpec& g) {
    if (g.players < 2 &&
        (g.kind == GameKind::Majority || g.kind == GameKind::Bankruptcy))
        return std::nullopt;
    OpCount ops;
    for (int k = 1; k <= g.players; ++k) {
        auto [with_k, without_k] = build_game_tensors(g, k);
        auto ones = [](const TtTensor& t) {
            WeightVectors w(std::size_t(t.dims()));
            for (int j = 1; j <= t.dims(); ++j)
                w[std::size_t(j) - 1].assign(std::size_t(t.mode_size(j)), 1.0);
            return convolve_rank_one(t, w).second;
        };
        ops += ones(with_k);
        ops += ones(without_k);
    }
    return ops;
}

// --- bench helpers ---------------------------------------------------------------

struct Range {
    int lo = 0;
    int hi = 0;
};

Range parse_range(const std::string& s) {
    const auto dots = s.find("..");
    Range r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(s);
        } else {
            r.lo = std::stoi(s.substr(0, dots));
            r.hi = std::stoi(s.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range '" + s + "' (expected A or A..B)");
    }
    if (r.lo > r.hi) throw std::invalid_argument("empty range '" + s + "'");
    return r;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
}

// Least-squares slope of log2(y) against x; the per-step growth exponent.
std::optional<double> log2_growth(const std::vector<std::pair<int, double>>& pts) {
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        if (!(y > 0.0)) return std::nullopt;
        const double ly = std::log2(y);
        sx += x;
        sy += ly;
        sxx += double(x) * x;
        sxy += x * ly;
    }
    const double n = double(pts.size());
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / den;
}

Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix A(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& row : A)
        for (double& v : row) v = double(rng() >> 11) * 0x1.0p-53;
    return A;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tensor-train construction, contraction, and problem catalog"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing,
                 "report wall_ms (off by default so reports are byte-stable)");

    json rep;            // the JSON report, when the subcommand produces one
    std::string summary; // one line for stderr

    // queens ---------------------------------------------------------------
    auto* q_cmd = app.add_subcommand("queens", "non-attacking queen placements");
    int q_n = 8;
    double q_eps = 0.0;
    bool q_find = false;
    q_cmd->add_option("--n", q_n, "board size")->required();
    auto* q_eps_opt = q_cmd->add_option("--eps", q_eps, "rounding tolerance applied afterwards");
    q_cmd->add_flag("--find", q_find, "extract one placement");
    q_cmd->callback([&] {
        QueensResult r = queens_tensor(q_n);
        rep["problem"] = "queens";
        rep["params"] = json{{"n", q_n}};
        rep["ranks"] = r.ranks;
        rep["count"] = bigint_json(r.count);
        if (q_eps_opt->count() > 0) {
            rep["params"]["eps"] = q_eps;
            const TtTensor rounded = tt_round(r.tensor, q_eps);
            rep["ranks_rounded"] = rounded.ranks();
            rep["count_rounded"] = contract_modes<double>(rounded);
        }
        if (q_find) {
            auto hit = find_nonzero(r.tensor);
            if (hit)
                rep["placement"] = hit->indices;
            else
                rep["placement"] = nullptr;
        }
        summary = "queens n=" + std::to_string(q_n) + ": count " + r.count.str();
    });

    // permanent ------------------------------------------------------------
    auto* p_cmd = app.add_subcommand("permanent", "matrix permanent by TT contraction");
    std::string p_file;
    bool p_oracle = false;
    p_cmd->add_option("--matrix", p_file, "CSV matrix file")->required();
    p_cmd->add_flag("--oracle", p_oracle, "compare against the Gray-code Ryser value");
    p_cmd->callback([&] {
        const Matrix A = read_matrix_csv(p_file);
        const PermanentResult r = permanent(A);
        const int n = int(A.size());
        rep["problem"] = "permanent";
        rep["params"] = json{{"n", n}, {"matrix", p_file}};
        rep["ranks"] = r.ranks;
        rep["value"] = r.value;
        rep["op_count"] = op_count_json(r.ops);
        rep["op_bound"] = 2.0 * std::ldexp(double(n), n); // 2 * 2^n * n
        summary = "permanent n=" + std::to_string(n) + ": " + std::to_string(r.value);
        if (p_oracle) {
            const double ref = ryser_reference(A);
            rep["oracle_value"] = ref;
            rep["rel_err"] = rel_err(r.value, ref);
            summary += " (ryser " + std::to_string(ref) + ")";
        }
    });

    // game -----------------------------------------------------------------
    auto* g_cmd = app.add_subcommand("game", "cooperative game payoff vector");
    std::string g_kind;
    int g_players = 0;
    std::string g_config;
    std::string g_weights = "shapley";
    bool g_oracle = false;
    std::uint64_t g_seed = 0;
    g_cmd->add_option("kind", g_kind, "shoes|airport|majority|bankruptcy|seller")
            ->required()
            ->check(CLI::IsMember({"shoes", "airport", "majority", "bankruptcy", "seller"}));
    g_cmd->add_option("--players", g_players, "player count for a generated instance");
    g_cmd->add_option("--config", g_config, "JSON instance file (overrides --players)");
    g_cmd->add_option("--weights", g_weights, "shapley|banzhaf");
    g_cmd->add_flag("--oracle", g_oracle, "compare against the exhaustive subset sum");
    g_cmd->add_option("--seed", g_seed, "seed for the generated instance");
    g_cmd->callback([&] {
        GameSpec g;
        bool seeded = false;
        if (!g_config.empty()) {
            g = game_from_config(read_json_file(g_config));
            if (kind_name(g.kind) != g_kind)
                throw std::invalid_argument("config kind '" + std::string(kind_name(g.kind)) +
                                            "' contradicts the command line '" + g_kind + "'");
        } else {
            if (g_players <= 0)
                throw std::invalid_argument("game: --players (or --config) is required");
            g = random_game(kind_from_name(g_kind), g_players, g_seed);
            g.weights = weights_from_name(g_weights);
            seeded = true;
        }
        const PayoffVector pv = payoff_all(g);
        rep["problem"] = "game";
        rep["kind"] = kind_name(g.kind);
        rep["params"] = game_params_json(g);
        rep["payoffs"] = pv.values;
        if (auto ops = pair_contraction_ops(g))
            rep["op_count"] = op_count_json(*ops);
        else
            rep["op_count"] = nullptr;
        if (seeded) rep["seed"] = g_seed;
        if (g_oracle) {
            std::vector<double> ref(std::size_t(g.players));
            double worst = 0.0;
            for (int k = 1; k <= g.players; ++k) {
                ref[std::size_t(k) - 1] = brute_payoff(g, k);
                worst = std::max(worst,
                                 rel_err(pv.values[std::size_t(k) - 1], ref[std::size_t(k) - 1]));
            }
            rep["oracle"] = json{{"payoffs", ref}, {"max_rel_err", worst}};
        }
        summary = std::string("game ") + kind_name(g.kind) + " with " +
                  std::to_string(g.players) + " players";
    });

    // knapsack ---------------------------------------------------------------
    auto* k_cmd = app.add_subcommand("knapsack", "bounded knapsack by indicator products");
    std::string k_config;
    k_cmd->add_option("--config", k_config, "JSON instance file")->required();
    k_cmd->callback([&] {
        const json cfg = read_json_file(k_config);
        KnapsackInstance inst;
        inst.values = cfg.at("values").get<std::vector<double>>();
        const json& w = cfg.at("weights");
        if (!w.empty() && w.front().is_array())
            inst.weights = w.get<std::vector<std::vector<double>>>();
        else
            inst.weights = {w.get<std::vector<double>>()};
        const json& cap = cfg.at("capacities");
        if (cap.is_array())
            inst.capacities = cap.get<std::vector<double>>();
        else
            inst.capacities = {cap.get<double>()};
        if (cfg.contains("bounds")) inst.bounds = cfg.at("bounds").get<std::vector<int>>();
        const double eps = cfg.value("eps", 0.0);

        auto r = knapsack_solve(inst, eps);
        rep["problem"] = "knapsack";
        rep["params"] = json{{"items", inst.values.size()},
                             {"constraints", inst.weights.size()},
                             {"eps", eps},
                             {"config", k_config}};
        if (r) {
            rep["assignment"] = r->pick.indices;
            rep["value"] = r->total_value;
            rep["ranks"] = r->ranks;
            rep["feasible"] = true;
            summary = "knapsack: value " + std::to_string(r->total_value);
        } else {
            rep["assignment"] = nullptr;
            rep["feasible"] = false;
            summary = "knapsack: no feasible selection";
        }
    });

    // partition ---------------------------------------------------------------
    auto* pt_cmd = app.add_subcommand("partition", "split a set into equal-sum parts");
    std::string pt_set;
    int pt_parts = 2;
    pt_cmd->add_option("--set", pt_set, "JSON array of positive integers (inline or a file)")
            ->required();
    pt_cmd->add_option("--parts", pt_parts, "number of parts")->required();
    pt_cmd->callback([&] {
        const std::string trimmed = strip(pt_set);
        const json doc = !trimmed.empty() && trimmed.front() == '['
                                 ? json::parse(trimmed)
                                 : read_json_file(pt_set);
        const std::vector<long long> S = doc.get<std::vector<long long>>();
        long long total = 0;
        for (long long s : S) total += s;
        auto r = partition_solve(S, pt_parts);
        rep["problem"] = "partition";
        rep["params"] = json{{"size", S.size()}, {"parts", pt_parts}, {"total", total}};
        if (r) {
            rep["assignment"] = r->indices;
            std::vector<long long> sums(std::size_t(pt_parts), 0);
            for (std::size_t i = 0; i < S.size(); ++i)
                sums[std::size_t(r->indices[i])] += S[i];
            rep["part_sums"] = sums;
            summary = "partition: found";
        } else {
            rep["assignment"] = nullptr;
            summary = "partition: none exists";
        }
    });

    // sat ----------------------------------------------------------------------
    auto* s_cmd = app.add_subcommand("sat", "CNF model counting / model extraction");
    std::string s_file;
    bool s_count = false, s_model = false;
    s_cmd->add_option("--cnf", s_file, "DIMACS CNF file")->required();
    s_cmd->add_flag("--count", s_count, "count satisfying assignments (default)");
    s_cmd->add_flag("--model", s_model, "extract one satisfying assignment");
    s_cmd->callback([&] {
        const CnfFormula F = read_dimacs(s_file);
        rep["problem"] = "sat";
        rep["params"] = json{{"vars", F.vars}, {"clauses", F.clauses.size()}, {"cnf", s_file}};
        if (!s_count && !s_model) s_count = true;
        if (s_count) {
            const bigint c = sat_count(F);
            rep["count"] = bigint_json(c);
            summary = "sat: " + c.str() + " models";
        }
        if (s_model) {
            auto m = sat_model(F);
            rep["satisfiable"] = bool(m);
            if (m)
                rep["assignment"] = *m;
            else
                rep["assignment"] = nullptr;
            if (summary.empty()) summary = m ? "sat: satisfiable" : "sat: unsatisfiable";
        }
    });

    // subsets --------------------------------------------------------------------
    auto* ss_cmd = app.add_subcommand("subsets", "subsets of {1..n} with sum divisible by m");
    int ss_n = 1, ss_m = 5;
    ss_cmd->add_option("--n", ss_n, "set size")->required();
    ss_cmd->add_option("--mod", ss_m, "modulus")->required();
    ss_cmd->callback([&] {
        const bigint c = subsets_divisible_count(ss_n, ss_m);
        rep["problem"] = "subsets";
        rep["params"] = json{{"n", ss_n}, {"mod", ss_m}};
        rep["count"] = bigint_json(c);
        if (ss_m == 5 && ss_n % 5 == 0)
            rep["analytic"] = bigint_json(subsets_divisible_analytic(ss_n));
        summary = "subsets n=" + std::to_string(ss_n) + " mod " + std::to_string(ss_m) + ": " +
                  c.str();
    });

    // qtt-step ----------------------------------------------------------------------
    auto* st_cmd = app.add_subcommand("qtt-step", "binary step-function tensor");
    int st_d = 1;
    long long st_t = 0;
    st_cmd->add_option("--d", st_d, "bits")->required();
    st_cmd->add_option("--t", st_t, "threshold")->required();
    st_cmd->callback([&] {
        const TtTensor t = qtt_step_build(st_d, st_t);
        rep["problem"] = "qtt-step";
        rep["params"] = json{{"d", st_d}, {"t", st_t}};
        rep["ranks"] = t.ranks();
        const bigint ones = contract_modes<bigint>(t);
        const bigint expected = (bigint(1) << st_d) - 1 - st_t;
        rep["ones"] = bigint_json(ones);
        rep["expected_ones"] = bigint_json(expected);
        rep["verified"] = ones == expected;
        summary = "qtt-step d=" + std::to_string(st_d) + " t=" + std::to_string(st_t);
    });

    // tt -----------------------------------------------------------------------------
    auto* tt_cmd = app.add_subcommand("tt", "operate on a serialized tensor");
    tt_cmd->require_subcommand(1);
    std::string tt_in, tt_out, tt_idx;
    double tt_eps = 0.0;
    auto* ttr = tt_cmd->add_subcommand("round", "rank reduction");
    ttr->add_option("--in", tt_in, "tensor JSON file")->required();
    ttr->add_option("--eps", tt_eps, "relative tolerance (0: drop exact zero modes)");
    ttr->add_option("--out", tt_out, "write the rounded tensor here");
    ttr->callback([&] {
        const TtTensor t = load_tensor(tt_in);
        const TtTensor r = tt_round(t, tt_eps);
        rep["problem"] = "tt-round";
        rep["params"] = json{{"in", tt_in}, {"eps", tt_eps}};
        rep["ranks"] = t.ranks();
        rep["ranks_rounded"] = r.ranks();
        if (!tt_out.empty()) {
            save_tensor(tt_out, r);
            rep["out"] = tt_out;
        }
        summary = "tt round: done";
    });
    auto* tti = tt_cmd->add_subcommand("info", "shape summary");
    tti->add_option("--in", tt_in, "tensor JSON file")->required();
    tti->callback([&] {
        const TtTensor t = load_tensor(tt_in);
        rep["problem"] = "tt-info";
        rep["params"] = json{{"in", tt_in}};
        rep["d"] = t.dims();
        rep["mode_sizes"] = t.mode_sizes();
        rep["ranks"] = t.ranks();
        rep["middle_index"] = t.middle();
        bool any = false;
        for (int k = 1; k <= t.dims(); ++k) any = any || t.has_factor(k);
        rep["has_factors"] = any;
        summary = "tt info: d=" + std::to_string(t.dims());
    });
    auto* tte = tt_cmd->add_subcommand("eval", "one entry");
    tte->add_option("--in", tt_in, "tensor JSON file")->required();
    tte->add_option("--idx", tt_idx, "comma-separated 0-based indices")->required();
    tte->callback([&] {
        const TtTensor t = load_tensor(tt_in);
        std::vector<int> idx;
        std::istringstream cells(tt_idx);
        std::string cell;
        while (std::getline(cells, cell, ',')) idx.push_back(std::stoi(strip(cell)));
        rep["problem"] = "tt-eval";
        rep["params"] = json{{"in", tt_in}, {"idx", idx}};
        rep["value"] = eval_entry(t, idx);
        summary = "tt eval: " + std::to_string(rep["value"].get<double>());
    });

    // bench -----------------------------------------------------------------------
    auto* b_cmd = app.add_subcommand("bench", "size sweep with CSV output");
    std::string b_family, b_kind, b_n, b_players;
    bool b_oracle = false;
    std::uint64_t b_seed = 0;
    b_cmd->add_option("family", b_family, "permanent|queens|game")
            ->required()
            ->check(CLI::IsMember({"permanent", "queens", "game"}));
    b_cmd->add_option("kind", b_kind, "game kind when family is 'game'");
    b_cmd->add_option("--n", b_n, "size range A..B");
    b_cmd->add_option("--players", b_players, "player range A..B");
    b_cmd->add_flag("--oracle", b_oracle, "add oracle comparison columns");
    b_cmd->add_option("--seed", b_seed, "base seed; row seeds derive as seed + size");
    b_cmd->callback([&] {
        std::vector<std::pair<int, double>> growth;
        if (b_family == "permanent") {
            if (b_n.empty()) throw std::invalid_argument("bench permanent needs --n A..B");
            const Range r = parse_range(b_n);
            out << "n,value,additions,multiplications,total_ops,op_bound,within_bound";
            if (b_oracle) out << ",oracle_value,rel_err";
            out << ",wall_ms\n";
            for (int n = r.lo; n <= r.hi; ++n) {
                const Matrix A = random_matrix(n, b_seed + std::uint64_t(n));
                const double t0 = now_ms();
                const PermanentResult pr = permanent(A);
                const double ms = now_ms() - t0;
                const double bound = 2.0 * std::ldexp(double(n), n);
                out << n << ',' << pr.value << ',' << pr.ops.additions << ','
                    << pr.ops.multiplications << ',' << pr.ops.total() << ',' << bound << ','
                    << (double(pr.ops.total()) <= bound ? 1 : 0);
                if (b_oracle) {
                    const double ref = ryser_reference(A);
                    out << ',' << ref << ',' << rel_err(pr.value, ref);
                }
                out << ',' << ms << '\n';
                growth.emplace_back(n, double(pr.ops.total()));
            }
            if (auto s = log2_growth(growth))
                err << "bench permanent: total_ops ~ 2^(" << *s << " n)\n";
        } else if (b_family == "queens") {
            if (b_n.empty()) throw std::invalid_argument("bench queens needs --n A..B");
            const Range r = parse_range(b_n);
            out << "n,count,oracle_count,match,wall_ms\n";
            for (int n = r.lo; n <= r.hi; ++n) {
                const double t0 = now_ms();
                const QueensResult qr = queens_tensor(n, std::max(12, r.hi));
                const double ms = now_ms() - t0;
                out << n << ',' << qr.count.str() << ',';
                std::string match = "";
                try {
                    const long long ref = brute_count_queens(n);
                    out << ref;
                    match = qr.count == ref ? "1" : "0";
                } catch (const std::runtime_error&) {
                    out << "NA"; // enumeration over budget
                }
                out << ',' << match << ',' << ms << '\n';
                growth.emplace_back(n, ms);
            }
            if (auto s = log2_growth(growth))
                err << "bench queens: wall_ms ~ 2^(" << *s << " n)\n";
        } else {
            if (b_kind.empty() || b_players.empty())
                throw std::invalid_argument("bench game needs a kind and --players A..B");
            const GameKind kind = kind_from_name(b_kind);
            const Range r = parse_range(b_players);
            out << "players,total_ops";
            if (b_oracle) out << ",max_rel_err";
            out << ",wall_ms\n";
            for (int n = r.lo; n <= r.hi; ++n) {
                if (kind == GameKind::Shoes && (n % 2 == 0 || n < 3)) continue;
                if (kind == GameKind::OneSeller && n < 2) continue;
                const GameSpec g = random_game(kind, n, b_seed + std::uint64_t(n));
                const double t0 = now_ms();
                const PayoffVector pv = payoff_all(g);
                const double ms = now_ms() - t0;
                const auto ops = pair_contraction_ops(g);
                out << n << ',' << (ops ? std::to_string(ops->total()) : "NA");
                if (b_oracle) {
                    double worst = 0.0;
                    for (int k = 1; k <= n; ++k)
                        worst = std::max(worst,
                                         rel_err(pv.values[std::size_t(k) - 1], brute_payoff(g, k)));
                    out << ',' << worst;
                }
                out << ',' << ms << '\n';
                if (ops) growth.emplace_back(n, double(ops->total()));
            }
            if (auto s = log2_growth(growth))
                err << "bench game " << b_kind << ": total_ops ~ 2^(" << *s << " players)\n";
        }
    });

    const double t_start = now_ms();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        err << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        const json j{{"error", {{"type", "usage"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const rank_explosion_error& e) {
        const json j{{"error", {{"type", "rank_explosion"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        const json j{{"error", {{"type", "invalid_argument"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        const json j{{"error", {{"type", "out_of_range"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        const json j{{"error", {{"type", "internal"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        const json j{{"error", {{"type", "runtime"}, {"message", e.what()}}}};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (!rep.is_null()) {
        rep["wall_ms"] = timing ? json(now_ms() - t_start) : json();
        if (!rep.contains("seed")) rep["seed"] = nullptr;
        out << rep.dump(2) << "\n";
    }
    if (!summary.empty()) err << summary << "\n";
    return 0;
}

} // namespace ctt::cli
