#include "dimer/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dimer::config {

namespace {

struct RawValue {
    std::string text;
    int line = 0;
    bool is_list = false;
    std::vector<std::string> items;
};

using Block = std::map<std::string, RawValue>;
using Tree = std::map<std::string, Block>;

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string normalize(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != '_' && c != '-') out.push_back(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string suggest(const std::string& key, const std::vector<std::string>& known) {
    const std::string norm = normalize(key);
    for (const auto& k : known)
        if (normalize(k) == norm) return k;
    // Fall back to smallest edit distance.
    auto dist = [](const std::string& a, const std::string& b) {
        std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j)
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                                   prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
            std::swap(prev, cur);
        }
        return prev[b.size()];
    };
    std::string best;
    std::size_t best_d = key.size();
    for (const auto& k : known) {
        const std::size_t d = dist(normalize(key), normalize(k));
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best_d <= std::max<std::size_t>(2, key.size() / 2) ? best : "";
}

[[noreturn]] void fail(int line, const std::string& msg, const std::string& hint = "") {
    std::ostringstream out;
    out << "config error (line " << line << "): " << msg;
    if (!hint.empty()) out << "; did you mean \"" << hint << "\"?";
    throw ConfigError(out.str());
}

Tree tokenize(const std::string& text) {
    Tree tree;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string current;  // open block name, empty at top level
    int block_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = strip(raw);
        if (s.empty()) continue;
        if (s == "}") {
            if (current.empty()) fail(line, "unmatched '}'");
            current.clear();
            continue;
        }
        if (s.back() == '{') {
            if (!current.empty()) fail(line, "nested blocks are not supported");
            current = strip(s.substr(0, s.size() - 1));
            if (current.empty()) fail(line, "block name missing before '{'");
            block_line = line;
            tree[current];  // create even if empty
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value' or a block");
        if (current.empty()) fail(line, "key outside of a block: '" + strip(s.substr(0, eq)) + "'");
        const std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (val.empty()) fail(line, "empty value for key '" + key + "'");
        RawValue rv;
        rv.line = line;
        rv.text = val;
        if (val.front() == '[') {
            if (val.back() != ']') fail(line, "unterminated list for key '" + key + "'");
            rv.is_list = true;
            std::string inner = val.substr(1, val.size() - 2);
            std::string item;
            std::istringstream items(inner);
            while (std::getline(items, item, ',')) {
                item = strip(item);
                if (!item.empty()) rv.items.push_back(item);
            }
        }
        if (tree[current].count(key)) fail(line, "duplicate key '" + key + "'");
        tree[current][key] = rv;
    }
    if (!current.empty()) fail(block_line, "block '" + current + "' is never closed");
    return tree;
}

double to_double(const RawValue& rv, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(rv.text, &pos);
        if (pos != rv.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(rv.line, "key '" + key + "': expected a number, got '" + rv.text + "'");
    }
}

long to_long(const RawValue& rv, const std::string& key) {
    const double v = to_double(rv, key);
    if (v != std::floor(v)) fail(rv.line, "key '" + key + "': expected an integer");
    return static_cast<long>(v);
}

// Per-block key dispatch; unknown keys are rejected with a suggestion.
struct KeyReader {
    const Block& block;
    std::vector<std::string> known;

    bool has(const std::string& key) {
        known.push_back(key);
        return block.count(key) > 0;
    }
    double num(const std::string& key, double fallback) {
        return has(key) ? to_double(block.at(key), key) : fallback;
    }
    long integer(const std::string& key, long fallback) {
        return has(key) ? to_long(block.at(key), key) : fallback;
    }
    std::string str(const std::string& key, const std::string& fallback) {
        return has(key) ? block.at(key).text : fallback;
    }
    std::vector<double> list(const std::string& key) {
        if (!has(key)) return {};
        const RawValue& rv = block.at(key);
        if (!rv.is_list) fail(rv.line, "key '" + key + "': expected a [list]");
        std::vector<double> out;
        for (const auto& item : rv.items) {
            RawValue one{item, rv.line, false, {}};
            out.push_back(to_double(one, key));
        }
        return out;
    }
    void finish(const std::string& block_name) const {
        for (const auto& [key, rv] : block) {
            if (std::find(known.begin(), known.end(), key) == known.end())
                fail(rv.line, "unknown key '" + key + "' in block '" + block_name + "'",
                     suggest(key, known));
        }
    }
};

}  // namespace

std::vector<double> ScanBlock::grid() const {
    if (!values.empty()) return values;
    if (steps < 1) throw ConfigError("scan: needs steps >= 1 or an explicit values list");
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i)
        g[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1.0);
    return g;
}

void JobConfig::validate() const {
    if (model.N < 1) throw ConfigError("model: N must be >= 1");
    const double U = resolved_U();
    if (!(U > 0.0)) throw ConfigError("model: U must be positive");
    if (resolved_Delta_max() >= U)
        throw ConfigError("model: Delta_max must satisfy Delta < U "
                          "(branching would shed single particles otherwise)");
    if (schedule.mode != "constant" && schedule.mode != "adaptive")
        throw ConfigError("schedule: mode must be 'constant' or 'adaptive'");
    if (!(schedule.dt > 0.0)) throw ConfigError("schedule: dt must be positive");
    if (schedule.mode == "constant" && (!(schedule.dot_J > 0.0) || !(schedule.dot_Delta > 0.0)))
        throw ConfigError("schedule: constant mode needs positive dot_J and dot_Delta");
    if (schedule.mode == "adaptive" && !(schedule.lambda > 0.0))
        throw ConfigError("schedule: adaptive mode needs lambda > 0");
    if (ensemble.points < 1) throw ConfigError("ensemble: points must be >= 1");
    if (ensemble.M < 0) throw ConfigError("ensemble: M must be >= 0");
    if (husimi.n_theta < 8 || husimi.n_phi < 8)
        throw ConfigError("husimi: resolution must be at least 8x8");
}

JobConfig parse_config(const std::string& text) {
    const Tree tree = tokenize(text);
    JobConfig job;

    const std::vector<std::string> known_blocks = {
        "model", "schedule", "scan", "ensemble", "output",
        "husimi", "quench", "feasibility"};
    for (const auto& [name, block] : tree) {
        if (std::find(known_blocks.begin(), known_blocks.end(), name) == known_blocks.end()) {
            const int line = block.empty() ? 1 : block.begin()->second.line;
            fail(line, "unknown block '" + name + "'", suggest(name, known_blocks));
        }
    }

    if (tree.count("model")) {
        KeyReader r{tree.at("model"), {}};
        job.model.N = static_cast<int>(r.integer("N", job.model.N));
        job.model.U = r.num("U", job.model.U);
        job.model.J_max = r.num("J_max", job.model.J_max);
        job.model.Delta_max = r.num("Delta_max", job.model.Delta_max);
        r.finish("model");
    }
    if (tree.count("schedule")) {
        KeyReader r{tree.at("schedule"), {}};
        job.schedule.mode = r.str("mode", job.schedule.mode);
        job.schedule.dot_J = r.num("dot_J", job.schedule.dot_J);
        job.schedule.dot_Delta = r.num("dot_Delta", job.schedule.dot_Delta);
        job.schedule.lambda = r.num("lambda", job.schedule.lambda);
        job.schedule.dt = r.num("dt", job.schedule.dt);
        job.schedule.snapshot_stride =
            static_cast<int>(r.integer("snapshot_stride", job.schedule.snapshot_stride));
        job.schedule.J_floor = r.num("J_floor", job.schedule.J_floor);
        job.schedule.phi = r.num("phi", job.schedule.phi);
        if (r.has("N_phi")) {
            job.schedule.phi_total_set = true;
            job.schedule.phi_total = to_double(tree.at("schedule").at("N_phi"), "N_phi");
        }
        r.finish("schedule");
    }
    if (tree.count("scan")) {
        KeyReader r{tree.at("scan"), {}};
        job.scan.present = true;
        job.scan.variable = r.str("variable", "");
        job.scan.from = r.num("from", 0.0);
        job.scan.to = r.num("to", 0.0);
        job.scan.steps = static_cast<int>(r.integer("steps", 0));
        job.scan.values = r.list("values");
        r.finish("scan");
        if (job.scan.variable.empty())
            throw ConfigError("scan: 'variable' is required");
    }
    if (tree.count("ensemble")) {
        KeyReader r{tree.at("ensemble"), {}};
        job.ensemble.points = static_cast<int>(r.integer("points", job.ensemble.points));
        job.ensemble.M = r.integer("M", job.ensemble.M);
        job.ensemble.seed = static_cast<std::uint64_t>(r.integer("seed", 1));
        r.finish("ensemble");
    }
    if (tree.count("output")) {
        KeyReader r{tree.at("output"), {}};
        const std::string formats = r.str("formats", "");
        if (!formats.empty()) {
            job.output.csv = formats.find("csv") != std::string::npos;
            job.output.json = formats.find("json") != std::string::npos;
        }
        r.finish("output");
    }
    if (tree.count("husimi")) {
        KeyReader r{tree.at("husimi"), {}};
        job.husimi.n_theta = static_cast<int>(r.integer("n_theta", job.husimi.n_theta));
        job.husimi.n_phi = static_cast<int>(r.integer("n_phi", job.husimi.n_phi));
        job.husimi.source = r.str("source", job.husimi.source);
        job.husimi.theta = r.num("theta", job.husimi.theta);
        job.husimi.phi = r.num("phi", job.husimi.phi);
        job.husimi.cat_phase = r.num("cat_phase", job.husimi.cat_phase);
        job.husimi.rotate = r.num("rotate", job.husimi.rotate);
        job.husimi.duration = r.num("duration", job.husimi.duration);
        r.finish("husimi");
    }
    if (tree.count("quench")) {
        KeyReader r{tree.at("quench"), {}};
        job.quench.duration = r.num("duration", job.quench.duration);
        job.quench.samples = static_cast<int>(r.integer("samples", job.quench.samples));
        r.finish("quench");
    }
    if (tree.count("feasibility")) {
        KeyReader r{tree.at("feasibility"), {}};
        auto& spec = job.feasibility.spec;
        spec.V0 = r.num("V0", spec.V0);
        spec.sigma = r.num("sigma", spec.sigma);
        spec.lambda0 = r.num("lambda0", spec.lambda0);
        spec.m = r.num("mass_amu", spec.m / 1.66053906660e-27) * 1.66053906660e-27;
        spec.rho = r.num("rho", spec.rho);
        spec.a = r.num("a_bohr", spec.a / 5.29177210903e-11) * 5.29177210903e-11;
        spec.P0 = r.num("P0", spec.P0);
        spec.tau = r.num("tau", spec.tau);
        job.feasibility.lambda = r.num("lambda", job.feasibility.lambda);
        job.feasibility.C_split = r.num("C_split", job.feasibility.C_split);
        job.feasibility.C_branch = r.num("C_branch", job.feasibility.C_branch);
        r.finish("feasibility");
    }

    job.validate();
    return job;
}

JobConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace dimer::config
