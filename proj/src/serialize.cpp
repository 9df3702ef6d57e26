#include "ctt/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace ctt {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json core_to_json(const Core& c) {
    json j;
    j["r_left"] = c.r_left;
    j["n"] = c.n;
    j["r_right"] = c.r_right;
    if (c.is_sparse()) {
        const SparseCore& s = c.sparse();
        const bool rows = s.kind == SparseCore::Kind::RowSelect;
        j["kind"] = rows ? "row_select" : "col_select";
        json triples = json::array();
        const int outer = rows ? c.r_left : c.r_right;
        for (int i = 0; i < c.n; ++i) {
            for (int o = 0; o < outer; ++o) {
                const int inner = s.sel[std::size_t(i)][std::size_t(o)];
                if (inner < 0) continue;
                // Unit at G(x, i, y).
                const int x = rows ? o : inner;
                const int y = rows ? inner : o;
                triples.push_back(json::array({x, i, y}));
            }
        }
        j["triples"] = std::move(triples);
    } else {
        j["kind"] = "dense";
        j["values"] = c.dense().values;
    }
    return j;
}

Core core_from_json(const json& j) {
    Core c;
    c.r_left = j.at("r_left").get<int>();
    c.n = j.at("n").get<int>();
    c.r_right = j.at("r_right").get<int>();
    if (c.r_left < 1 || c.n < 1 || c.r_right < 1)
        throw std::invalid_argument("tensor_from_json: non-positive core dimension");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "dense") {
        DenseCore d;
        d.values = j.at("values").get<std::vector<double>>();
        if (d.values.size() != std::size_t(c.r_left) * c.n * c.r_right)
            throw std::invalid_argument("tensor_from_json: dense core size mismatch");
        c.data = std::move(d);
        return c;
    }
    if (kind != "row_select" && kind != "col_select")
        throw std::invalid_argument("tensor_from_json: unknown core kind '" + kind + "'");
    SparseCore s;
    const bool rows = kind == "row_select";
    s.kind = rows ? SparseCore::Kind::RowSelect : SparseCore::Kind::ColSelect;
    const int outer = rows ? c.r_left : c.r_right;
    s.sel.assign(std::size_t(c.n), std::vector<int>(std::size_t(outer), -1));
    for (const json& triple : j.at("triples")) {
        if (!triple.is_array() || triple.size() != 3)
            throw std::invalid_argument("tensor_from_json: malformed unit triple");
        const int x = triple[0].get<int>();
        const int i = triple[1].get<int>();
        const int y = triple[2].get<int>();
        if (x < 0 || x >= c.r_left || i < 0 || i >= c.n || y < 0 || y >= c.r_right)
            throw std::invalid_argument("tensor_from_json: unit triple out of range");
        int& cell = s.sel[std::size_t(i)][std::size_t(rows ? x : y)];
        if (cell != -1) throw std::invalid_argument("tensor_from_json: duplicate unit in sparse core");
        cell = rows ? y : x;
    }
    c.data = std::move(s);
    return c;
}

} // namespace

json tensor_to_json(const TtTensor& t) {
    json j;
    j["format"] = "ctt-tensor";
    j["version"] = kFormatVersion;
    j["d"] = t.dims();
    j["mode_sizes"] = t.mode_sizes();
    j["ranks"] = t.ranks();
    j["middle_index"] = t.middle();
    json cores = json::array();
    for (int k = 1; k <= t.dims(); ++k) cores.push_back(core_to_json(t.core(k)));
    j["cores"] = std::move(cores);
    json factors = json::array();
    for (int k = 1; k <= t.dims(); ++k) {
        if (!t.has_factor(k)) {
            factors.push_back(nullptr);
            continue;
        }
        const Factor& f = t.factor(k);
        factors.push_back(json{{"rows", f.n_external}, {"cols", f.n_internal}, {"values", f.values}});
    }
    j["factors"] = std::move(factors);
    return j;
}

TtTensor tensor_from_json(const json& j) {
    if (j.value("format", "") != "ctt-tensor")
        throw std::invalid_argument("tensor_from_json: not a tensor document");
    if (j.at("version").get<int>() != kFormatVersion)
        throw std::invalid_argument("tensor_from_json: unsupported format version");
    const int d = j.at("d").get<int>();
    const json& jcores = j.at("cores");
    if (d < 1 || !jcores.is_array() || int(jcores.size()) != d)
        throw std::invalid_argument("tensor_from_json: core list does not match d");
    std::vector<Core> cores;
    cores.reserve(std::size_t(d));
    for (const json& jc : jcores) cores.push_back(core_from_json(jc));
    TtTensor t(std::move(cores), j.at("middle_index").get<int>());
    if (j.contains("factors")) {
        const json& jf = j.at("factors");
        if (!jf.is_array() || int(jf.size()) != d)
            throw std::invalid_argument("tensor_from_json: factor list does not match d");
        for (int k = 1; k <= d; ++k) {
            const json& f = jf[std::size_t(k) - 1];
            if (f.is_null()) continue;
            Factor factor;
            factor.n_external = f.at("rows").get<int>();
            factor.n_internal = f.at("cols").get<int>();
            factor.values = f.at("values").get<std::vector<double>>();
            t.set_factor(k, std::move(factor));
        }
    }
    // Cross-check the redundant header fields.
    if (j.at("mode_sizes").get<std::vector<int>>() != t.mode_sizes())
        throw std::invalid_argument("tensor_from_json: mode_sizes header disagrees with cores");
    if (j.at("ranks").get<std::vector<int>>() != t.ranks())
        throw std::invalid_argument("tensor_from_json: ranks header disagrees with cores");
    return t;
}

void save_tensor(const std::string& path, const TtTensor& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tensor: cannot open '" + path + "' for writing");
    out << tensor_to_json(t).dump(1, '\t') << '\n';
    if (!out) throw std::runtime_error("save_tensor: write to '" + path + "' failed");
}

TtTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_tensor: cannot open '" + path + "'");
    json j;
    in >> j;
    return tensor_from_json(j);
}

} // namespace ctt
