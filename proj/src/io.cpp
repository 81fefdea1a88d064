#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace ccfv::io {

std::string format_double(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "nx", "ny", "lx", "ly", "r", "mu", "beta", "chi", "t_end", "record_every",
        "ic_mode", "u_base", "v_base", "amplitude", "modes_k", "seed", "cfl_safety",
        "quad_tol", "evolve_w", "upvq_p", "upvq_q", "output_dir", "u0_file", "v0_file"};
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line;
};

class KeyTable {
public:
    KeyTable(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& k) const { return entries_.count(k) != 0; }

    std::string require_raw(const std::string& k) const {
        auto it = entries_.find(k);
        if (it == entries_.end())
            throw ConfigError("config: missing required key '" + k + "'", k, 0);
        return it->second.value;
    }

    int line_of(const std::string& k) const {
        auto it = entries_.find(k);
        return it == entries_.end() ? 0 : it->second.line;
    }

    double get_double(const std::string& k) const { return parse_double(k, require_raw(k)); }
    double get_double_or(const std::string& k, double dflt) const {
        return has(k) ? get_double(k) : dflt;
    }
    long get_long(const std::string& k) const { return parse_long(k, require_raw(k)); }
    long get_long_or(const std::string& k, long dflt) const {
        return has(k) ? get_long(k) : dflt;
    }
    std::uint64_t get_u64_or(const std::string& k, std::uint64_t dflt) const {
        if (!has(k)) return dflt;
        const std::string v = require_raw(k);
        std::uint64_t out{};
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size()) fail_value(k, v);
        return out;
    }
    bool get_bool_or(const std::string& k, bool dflt) const {
        if (!has(k)) return dflt;
        const std::string v = require_raw(k);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        fail_value(k, v);
        return dflt;
    }
    std::string get_string_or(const std::string& k, const std::string& dflt) const {
        return has(k) ? require_raw(k) : dflt;
    }

    [[noreturn]] void fail_value(const std::string& k, const std::string& v) const {
        throw ConfigError("config: key '" + k + "' at line " + std::to_string(line_of(k)) +
                              ": cannot parse value '" + v + "'",
                          k, line_of(k));
    }
    [[noreturn]] void fail_rule(const std::string& k, const std::string& rule) const {
        throw ConfigError("config: key '" + k + "' at line " + std::to_string(line_of(k)) +
                              ": " + rule,
                          k, line_of(k));
    }

private:
    double parse_double(const std::string& k, const std::string& v) const {
        double out{};
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size()) fail_value(k, v);
        return out;
    }
    long parse_long(const std::string& k, const std::string& v) const {
        long out{};
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size()) fail_value(k, v);
        return out;
    }

    std::map<std::string, Entry> entries_;
};

KeyTable tokenize(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": expected 'key = value'",
                              "", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": empty key or value",
                              key, lineno);
        bool known = false;
        for (const std::string& k : known_keys()) known = known || (k == key);
        if (!known)
            throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'",
                              key, lineno);
        if (entries.count(key))
            throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "' (first at line " +
                                  std::to_string(entries[key].line) + ")",
                              key, lineno);
        entries[key] = Entry{value, lineno};
    }
    return KeyTable(std::move(entries));
}

} // namespace

RunConfig parse_config(const std::string& text) {
    const KeyTable t = tokenize(text);
    for (const char* k : {"nx", "ny", "lx", "ly", "r", "mu", "beta", "chi", "t_end",
                          "record_every", "ic_mode", "u_base", "v_base"})
        t.require_raw(k);

    RunConfig cfg;

    const long nx = t.get_long("nx"), ny = t.get_long("ny");
    const double lx = t.get_double("lx"), ly = t.get_double("ly");
    if (nx < 4) t.fail_rule("nx", "must be >= 4");
    if (ny < 4) t.fail_rule("ny", "must be >= 4");
    if (!(lx > 0.0)) t.fail_rule("lx", "must be > 0");
    if (!(ly > 0.0)) t.fail_rule("ly", "must be > 0");
    try {
        cfg.grid = Grid2D(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what(), "ny", t.line_of("ny"));
    }

    cfg.params.r = t.get_double("r");
    cfg.params.mu = t.get_double("mu");
    cfg.params.beta = t.get_double("beta");
    cfg.params.chi = t.get_double("chi");
    cfg.params.t_end = t.get_double("t_end");
    cfg.params.cfl_safety = t.get_double_or("cfl_safety", 0.8);
    cfg.params.quad_tol = t.get_double_or("quad_tol", 1e-8);
    if (!(cfg.params.r > 0.0)) t.fail_rule("r", "must be > 0");
    if (!(cfg.params.mu > 0.0)) t.fail_rule("mu", "must be > 0");
    if (!(cfg.params.chi > 0.0)) t.fail_rule("chi", "must be > 0");
    if (!(cfg.params.beta < 1.0)) t.fail_rule("beta", "must be < 1");
    if (!(cfg.params.t_end >= 0.0)) t.fail_rule("t_end", "must be >= 0");
    if (!(cfg.params.cfl_safety > 0.0 && cfg.params.cfl_safety <= 1.0))
        t.fail_rule("cfl_safety", "must be in (0, 1]");
    if (!(cfg.params.quad_tol > 0.0)) t.fail_rule("quad_tol", "must be > 0");

    cfg.record_every = t.get_double("record_every");
    if (!(cfg.record_every > 0.0)) t.fail_rule("record_every", "must be > 0");

    try {
        cfg.ic.mode = ic_mode_from_string(t.require_raw("ic_mode"));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what(), "ic_mode",
                          t.line_of("ic_mode"));
    }
    cfg.ic.u_base = t.get_double("u_base");
    cfg.ic.v_base = t.get_double("v_base");
    cfg.ic.amplitude = t.get_double_or("amplitude", 0.1);
    cfg.ic.modes_k = static_cast<int>(t.get_long_or("modes_k", 4));
    cfg.ic.seed = t.get_u64_or("seed", 0);
    cfg.ic.u_file = t.get_string_or("u0_file", "");
    cfg.ic.v_file = t.get_string_or("v0_file", "");
    if (!(cfg.ic.u_base > 0.0)) t.fail_rule("u_base", "must be > 0");
    if (!(cfg.ic.v_base > 0.0)) t.fail_rule("v_base", "must be > 0");
    if (!(cfg.ic.amplitude >= 0.0 && cfg.ic.amplitude < 1.0))
        t.fail_rule("amplitude", "must be in [0, 1)");
    if (cfg.ic.mode == IcMode::random_fourier && cfg.ic.modes_k < 1)
        t.fail_rule("modes_k", "must be >= 1");
    if (cfg.ic.mode == IcMode::file && (cfg.ic.u_file.empty() || cfg.ic.v_file.empty()))
        throw ConfigError("config: ic_mode=file requires u0_file and v0_file", "ic_mode",
                          t.line_of("ic_mode"));

    cfg.evolve_w = t.get_bool_or("evolve_w", false);
    cfg.output_dir = t.get_string_or("output_dir", ".");

    if (t.has("upvq_p") != t.has("upvq_q"))
        throw ConfigError("config: upvq_p and upvq_q must be given together", "upvq_p",
                          std::max(t.line_of("upvq_p"), t.line_of("upvq_q")));
    if (t.has("upvq_p")) {
        cfg.upvq_p = t.get_double("upvq_p");
        cfg.upvq_q = t.get_double("upvq_q");
        if (!(*cfg.upvq_p > 1.0)) t.fail_rule("upvq_p", "must be > 1");
        const double qmax = std::min(cfg.params.mu * *cfg.upvq_p, *cfg.upvq_p - 1.0);
        if (!(*cfg.upvq_q > 0.0 && *cfg.upvq_q < qmax))
            t.fail_rule("upvq_q", "must satisfy 0 < q < min(mu*p, p-1)");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "nx = " << cfg.grid.nx << "\n";
    out << "ny = " << cfg.grid.ny << "\n";
    out << "lx = " << format_double(cfg.grid.lx) << "\n";
    out << "ly = " << format_double(cfg.grid.ly) << "\n";
    out << "r = " << format_double(cfg.params.r) << "\n";
    out << "mu = " << format_double(cfg.params.mu) << "\n";
    out << "beta = " << format_double(cfg.params.beta) << "\n";
    out << "chi = " << format_double(cfg.params.chi) << "\n";
    out << "t_end = " << format_double(cfg.params.t_end) << "\n";
    out << "record_every = " << format_double(cfg.record_every) << "\n";
    out << "cfl_safety = " << format_double(cfg.params.cfl_safety) << "\n";
    out << "quad_tol = " << format_double(cfg.params.quad_tol) << "\n";
    out << "ic_mode = " << to_string(cfg.ic.mode) << "\n";
    out << "u_base = " << format_double(cfg.ic.u_base) << "\n";
    out << "v_base = " << format_double(cfg.ic.v_base) << "\n";
    out << "amplitude = " << format_double(cfg.ic.amplitude) << "\n";
    out << "modes_k = " << cfg.ic.modes_k << "\n";
    out << "seed = " << cfg.ic.seed << "\n";
    out << "evolve_w = " << (cfg.evolve_w ? "true" : "false") << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    if (!cfg.ic.u_file.empty()) out << "u0_file = " << cfg.ic.u_file << "\n";
    if (!cfg.ic.v_file.empty()) out << "v0_file = " << cfg.ic.v_file << "\n";
    if (cfg.upvq_p) out << "upvq_p = " << format_double(*cfg.upvq_p) << "\n";
    if (cfg.upvq_q) out << "upvq_q = " << format_double(*cfg.upvq_q) << "\n";
    return out.str();
}

namespace {

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("io: cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out) throw std::runtime_error("io: short write to '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

double parse_field_double(const std::string& tok, const std::string& what, int line) {
    double out{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw std::runtime_error("io: " + what + " at line " + std::to_string(line) +
                                 ": cannot parse '" + tok + "'");
    return out;
}

} // namespace

const char* const kTimeseriesHeader =
    "t,mass_u,l2_u,linf_u,min_u,mass_ode_residual,linf_U,l2_U,linf_v,min_v,"
    "l2_grad_w,l4_grad_w,linf_grad_w,linf_grad_v_over_v,energy_F,"
    "energy_identity_residual,gn1_ratio,gn2_ratio,upvq,dt_last";

void write_timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                          const std::string& path) {
    if (records.empty())
        throw std::invalid_argument("write_timeseries_csv: records must be nonempty");
    std::ostringstream out;
    out << kTimeseriesHeader << "\n";
    for (const DiagnosticsRecord& r : records) {
        out << format_double(r.t) << ',' << format_double(r.mass_u) << ','
            << format_double(r.l2_u) << ',' << format_double(r.linf_u) << ','
            << format_double(r.min_u) << ',' << format_double(r.mass_ode_residual) << ','
            << format_double(r.linf_U) << ',' << format_double(r.l2_U) << ','
            << format_double(r.linf_v) << ',' << format_double(r.min_v) << ','
            << format_double(r.l2_grad_w) << ',' << format_double(r.l4_grad_w) << ','
            << format_double(r.linf_grad_w) << ','
            << format_double(r.linf_grad_v_over_v) << ',' << format_double(r.energy_F)
            << ',' << format_double(r.energy_identity_residual) << ','
            << format_double(r.gn1_ratio) << ',' << format_double(r.gn2_ratio) << ',';
        if (r.upvq) out << format_double(*r.upvq);
        out << ',' << format_double(r.dt_last) << "\n";
    }
    atomic_write(path, out.str());
}

std::vector<DiagnosticsRecord> read_timeseries_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("io: '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTimeseriesHeader)
        throw std::runtime_error("io: '" + path + "': header mismatch");

    std::vector<DiagnosticsRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cols.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (cols.size() != 20)
            throw std::runtime_error("io: '" + path + "' line " + std::to_string(lineno) +
                                     ": expected 20 fields, got " +
                                     std::to_string(cols.size()));
        auto fd = [&](int k) { return parse_field_double(cols[k], "timeseries", lineno); };
        DiagnosticsRecord r;
        r.t = fd(0);
        r.mass_u = fd(1);
        r.l2_u = fd(2);
        r.linf_u = fd(3);
        r.min_u = fd(4);
        r.mass_ode_residual = fd(5);
        r.linf_U = fd(6);
        r.l2_U = fd(7);
        r.linf_v = fd(8);
        r.min_v = fd(9);
        r.l2_grad_w = fd(10);
        r.l4_grad_w = fd(11);
        r.linf_grad_w = fd(12);
        r.linf_grad_v_over_v = fd(13);
        r.energy_F = fd(14);
        r.energy_identity_residual = fd(15);
        r.gn1_ratio = fd(16);
        r.gn2_ratio = fd(17);
        if (!cols[18].empty()) r.upvq = fd(18);
        r.dt_last = fd(19);
        records.push_back(r);
    }
    return records;
}

void write_field_snapshot(const RawField& f, const std::string& path) {
    if (f.name.empty() || f.name.find_first_of(" \t\n") != std::string::npos)
        throw std::invalid_argument("write_field_snapshot: name must be one token");
    if (f.values.size() != static_cast<std::size_t>(f.nx) * f.ny)
        throw std::invalid_argument("write_field_snapshot: value count != nx*ny");
    std::ostringstream out;
    out << "FIELD2D " << f.nx << ' ' << f.ny << ' ' << format_double(f.lx) << ' '
        << format_double(f.ly) << ' ' << format_double(f.t) << ' ' << f.name << "\n";
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            if (i) out << ' ';
            out << format_double(f.values[static_cast<std::size_t>(j) * f.nx + i]);
        }
        out << "\n";
    }
    atomic_write(path, out.str());
}

void write_field_snapshot(const ScalarField& f, const std::string& name, double t,
                          const std::string& path) {
    RawField raw;
    raw.nx = f.grid.nx;
    raw.ny = f.grid.ny;
    raw.lx = f.grid.lx;
    raw.ly = f.grid.ly;
    raw.t = t;
    raw.name = name;
    raw.values = f.values;
    write_field_snapshot(raw, path);
}

RawField read_field_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("io: '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream head(line);
    std::string magic;
    RawField f;
    head >> magic >> f.nx >> f.ny;
    std::string slx, sly, st;
    head >> slx >> sly >> st >> f.name;
    std::string extra;
    if (magic != "FIELD2D" || f.nx <= 0 || f.ny <= 0 || f.name.empty() || (head >> extra))
        throw std::runtime_error("io: '" + path + "' line 1: malformed FIELD2D header");
    f.lx = parse_field_double(slx, "snapshot", 1);
    f.ly = parse_field_double(sly, "snapshot", 1);
    f.t = parse_field_double(st, "snapshot", 1);

    f.values.reserve(static_cast<std::size_t>(f.nx) * f.ny);
    for (int j = 0; j < f.ny; ++j) {
        if (!std::getline(in, line))
            throw std::runtime_error("io: '" + path + "' line " + std::to_string(j + 2) +
                                     ": missing row");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream row(line);
        std::string tok;
        int count = 0;
        while (row >> tok) {
            f.values.push_back(parse_field_double(tok, "snapshot", j + 2));
            ++count;
        }
        if (count != f.nx)
            throw std::runtime_error("io: '" + path + "' line " + std::to_string(j + 2) +
                                     ": expected " + std::to_string(f.nx) +
                                     " values, got " + std::to_string(count));
    }
    return f;
}

} // namespace ccfv::io
