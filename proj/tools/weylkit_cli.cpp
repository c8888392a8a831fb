// weylkit command-line driver. Talks to the library only through weylkit.h.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weylkit/weylkit.h"

using json = nlohmann::json;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure reported by the library; status decides the exit code.
struct LibError : std::runtime_error {
    wk_status status;
    LibError(wk_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(wk_status s) {
    if (s != WK_OK) throw LibError(s, std::string(wk_status_name(s)) + ": " + wk_last_error());
}

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

// ---------- config parsing ----------

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) invalid(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) invalid(path, "must be finite");
    return v;
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) invalid(path, "expected an integer");
    return j.get<int>();
}

cd get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {get_number(j, path), 0.0};
    if (j.is_array() && j.size() == 2)
        return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
    if (j.is_object() && j.contains("re"))
        return {get_number(j["re"], path + ".re"),
                j.contains("im") ? get_number(j["im"], path + ".im") : 0.0};
    invalid(path, "expected a number, [re, im] or {\"re\", \"im\"}");
}

std::vector<double> get_numbers(const json& j, const std::string& path) {
    if (j.is_number()) return {get_number(j, path)};
    if (!j.is_array()) invalid(path, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Row-major m x m matrix of wk_complex; a bare number means 1 x 1.
std::vector<wk_complex> get_matrix(const json& j, const std::string& path, int* dim) {
    std::vector<wk_complex> out;
    if (j.is_number()) {
        const cd v = get_complex(j, path);
        out.push_back({v.real(), v.imag()});
        *dim = 1;
        return out;
    }
    if (!j.is_array() || j.empty()) invalid(path, "expected a non-empty list of rows");
    const int m = static_cast<int>(j.size());
    for (int r = 0; r < m; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != m)
            invalid(rp, "row must have " + std::to_string(m) + " entries");
        for (int c = 0; c < m; ++c) {
            const cd v = get_complex(j[r][c], rp + "[" + std::to_string(c) + "]");
            out.push_back({v.real(), v.imag()});
        }
    }
    *dim = m;
    return out;
}

using PotPtr = std::shared_ptr<wk_potential>;

PotPtr own(wk_potential* p) { return PotPtr(p, wk_potential_free); }

// Library rejection of a potential is a config problem.
void check_pot(wk_status s, const std::string& path) {
    if (s == WK_INVALID_ARGUMENT) invalid(path, wk_last_error());
    check(s);
}

PotPtr parse_potential(const json& j, const std::string& path) {
    if (!j.is_object()) invalid(path, "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) invalid(path + ".kind", "missing");
    const std::string kind = j["kind"];
    wk_potential* p = nullptr;
    auto field = [&](const char* k) -> const json& {
        if (!j.contains(k)) invalid(path + "." + k, "missing");
        return j[k];
    };
    if (kind == "constant") {
        int m = 0;
        const auto q = get_matrix(field("value"), path + ".value", &m);
        check_pot(wk_potential_constant(m, q.data(), &p), path);
    } else if (kind == "gaussian") {
        int m = 0;
        const auto a = get_matrix(field("amplitude"), path + ".amplitude", &m);
        const double c = j.contains("center") ? get_number(j["center"], path + ".center") : 0.0;
        const double w = j.contains("width") ? get_number(j["width"], path + ".width") : 1.0;
        if (!(w > 0)) invalid(path + ".width", "must be > 0");
        check_pot(wk_potential_gaussian(m, a.data(), c, w, &p), path);
    } else if (kind == "truncated") {
        const PotPtr base = parse_potential(field("base"), path + ".base");
        const double x0 = get_number(field("x0"), path + ".x0");
        const double x1 = get_number(field("x1"), path + ".x1");
        if (!(x0 < x1)) invalid(path + ".x1", "must exceed x0");
        check_pot(wk_potential_truncated(base.get(), x0, x1, &p), path);
    } else if (kind == "piecewise_constant") {
        const auto br = get_numbers(field("breaks"), path + ".breaks");
        const json& vals = field("values");
        if (!vals.is_array() || vals.size() + 1 != br.size())
            invalid(path + ".values", "need one matrix per interval (len(breaks) - 1)");
        for (std::size_t i = 1; i < br.size(); ++i)
            if (!(br[i] > br[i - 1])) invalid(path + ".breaks[" + std::to_string(i) + "]", "breaks must increase");
        int m = 0;
        std::vector<wk_complex> all;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            int mi = 0;
            const std::string vp = path + ".values[" + std::to_string(i) + "]";
            const auto v = get_matrix(vals[i], vp, &mi);
            if (i == 0) m = mi;
            if (mi != m) invalid(vp, "dimension mismatch");
            all.insert(all.end(), v.begin(), v.end());
        }
        check_pot(wk_potential_piecewise_constant(m, static_cast<int>(vals.size()), br.data(),
                                                  all.data(), &p),
                  path);
    } else if (kind == "matrix_expr") {
        const int m = get_int(field("dim"), path + ".dim");
        if (m < 1) invalid(path + ".dim", "must be >= 1");
        const json& terms = field("terms");
        if (!terms.is_array()) invalid(path + ".terms", "expected a list");
        static const std::map<std::string, wk_term_kind> shapes{
            {"polynomial", WK_TERM_POLYNOMIAL}, {"gaussian", WK_TERM_GAUSSIAN},
            {"cos", WK_TERM_COSINE},            {"sin", WK_TERM_SINE},
            {"exp", WK_TERM_EXPONENTIAL}};
        std::vector<std::vector<double>> params(terms.size());
        std::vector<wk_expr_term> ts(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tp = path + ".terms[" + std::to_string(i) + "]";
            const json& t = terms[i];
            if (!t.is_object()) invalid(tp, "expected an object");
            if (!t.contains("shape") || !t["shape"].is_string() || !shapes.count(t["shape"]))
                invalid(tp + ".shape", "one of polynomial, gaussian, cos, sin, exp");
            ts[i].kind = shapes.at(t["shape"]);
            ts[i].row = t.contains("row") ? get_int(t["row"], tp + ".row") : 0;
            ts[i].col = t.contains("col") ? get_int(t["col"], tp + ".col") : 0;
            if (ts[i].row < 0 || ts[i].row >= m) invalid(tp + ".row", "out of range");
            if (ts[i].col < 0 || ts[i].col >= m) invalid(tp + ".col", "out of range");
            const cd c = t.contains("coefficient") ? get_complex(t["coefficient"], tp + ".coefficient") : cd(1);
            ts[i].coefficient = {c.real(), c.imag()};
            if (t.contains("params")) params[i] = get_numbers(t["params"], tp + ".params");
            ts[i].nparams = static_cast<int>(params[i].size());
            ts[i].params = params[i].data();
        }
        check_pot(wk_potential_matrix_expr(m, static_cast<int>(ts.size()), ts.data(), &p), path);
    } else if (kind == "sum") {
        const json& terms = field("terms");
        if (!terms.is_array() || terms.empty()) invalid(path + ".terms", "expected a non-empty list");
        PotPtr acc = parse_potential(terms[0], path + ".terms[0]");
        for (std::size_t i = 1; i < terms.size(); ++i) {
            const std::string tp = path + ".terms[" + std::to_string(i) + "]";
            const PotPtr next = parse_potential(terms[i], tp);
            wk_potential* s = nullptr;
            check_pot(wk_potential_sum(acc.get(), next.get(), &s), tp);
            acc = own(s);
        }
        return acc;
    } else {
        invalid(path + ".kind",
                "unknown kind '" + kind +
                    "' (constant, truncated, gaussian, piecewise_constant, matrix_expr, sum)");
    }
    return own(p);
}

struct Config {
    std::string experiment;
    json raw;
    PotPtr pot, pot2;
    int m = 1;
    std::vector<double> moduli, args;
    double x0 = 0;
    std::vector<double> xs;
    int order = 2;
    std::vector<int> orders;
    wk_step_control step{};
    wk_limit_options limit{};
    wk_volterra_options volterra{};
    std::string method = "limit";
    std::vector<std::string> methods;
    std::vector<double> horizons;
    int samples = 10;
    double threshold = 1e-6;
    double defect_tol = 1e-8;
    double x1 = 1;
    double riccati_shift = 1;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "csv";
    unsigned jobs = 1;
};

const std::vector<std::string> kExperiments{"mfun", "asymp", "disk", "volterra", "green",
                                            "locality", "verify", "compare"};

struct Overrides {
    std::optional<double> rtol, atol;
    std::optional<long> max_steps;
    std::optional<unsigned> jobs;
    std::optional<std::uint64_t> seed;
    std::string out, format;
};

Config load_config(const std::string& path, const std::string& sub, const Overrides& ov) {
    Config cfg;
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    try {
        in >> cfg.raw;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: parse error: ") + e.what());
    }
    const json& j = cfg.raw;
    if (!j.is_object()) invalid("config", "top level must be an object");

    cfg.experiment = sub;
    if (j.contains("experiment")) {
        if (!j["experiment"].is_string()) invalid("experiment", "expected a string");
        const std::string e = j["experiment"];
        if (sub.empty()) cfg.experiment = e;
        else if (e != sub) invalid("experiment", "config says '" + e + "' but subcommand is '" + sub + "'");
    }
    if (cfg.experiment.empty()) invalid("experiment", "missing (give a subcommand or an experiment key)");
    if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end())
        invalid("experiment", "unknown experiment '" + cfg.experiment + "'");

    if (!j.contains("potential")) invalid("potential", "missing");
    cfg.pot = parse_potential(j["potential"], "potential");
    cfg.m = wk_potential_dim(cfg.pot.get());
    if (j.contains("potential2")) {
        cfg.pot2 = parse_potential(j["potential2"], "potential2");
        if (wk_potential_dim(cfg.pot2.get()) != cfg.m) invalid("potential2", "dimension differs from potential");
    }

    if (j.contains("z_grid")) {
        const json& g = j["z_grid"];
        if (!g.is_object()) invalid("z_grid", "expected an object");
        if (g.contains("moduli")) cfg.moduli = get_numbers(g["moduli"], "z_grid.moduli");
        if (g.contains("arg")) cfg.args = get_numbers(g["arg"], "z_grid.arg");
    }
    for (std::size_t i = 0; i < cfg.moduli.size(); ++i)
        if (!(cfg.moduli[i] > 0)) invalid("z_grid.moduli[" + std::to_string(i) + "]", "must be > 0");
    for (std::size_t i = 0; i < cfg.args.size(); ++i)
        if (!(cfg.args[i] > 0 && cfg.args[i] < kPi))
            invalid("z_grid.arg[" + std::to_string(i) + "]", "must lie in (0, pi)");

    if (j.contains("x0")) cfg.x0 = get_number(j["x0"], "x0");
    cfg.xs = j.contains("x") ? get_numbers(j["x"], "x") : std::vector<double>{cfg.x0};
    if (j.contains("order")) {
        if (j["order"].is_array()) {
            for (std::size_t i = 0; i < j["order"].size(); ++i)
                cfg.orders.push_back(get_int(j["order"][i], "order[" + std::to_string(i) + "]"));
        } else {
            cfg.orders.push_back(get_int(j["order"], "order"));
        }
        for (std::size_t i = 0; i < cfg.orders.size(); ++i)
            if (cfg.orders[i] < 0) invalid(j["order"].is_array() ? "order[" + std::to_string(i) + "]" : "order", "must be >= 0");
        if (!cfg.orders.empty()) cfg.order = cfg.orders.front();
    }
    if (cfg.orders.empty()) cfg.orders.push_back(cfg.order);

    wk_step_control_default(&cfg.step);
    wk_limit_options_default(&cfg.limit);
    wk_volterra_options_default(&cfg.volterra);
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) invalid("tolerances", "expected an object");
        auto pos = [&](const char* k, double& dst) {
            if (!t.contains(k)) return;
            dst = get_number(t[k], std::string("tolerances.") + k);
            if (!(dst > 0)) invalid(std::string("tolerances.") + k, "must be > 0");
        };
        pos("rtol", cfg.step.rtol);
        pos("atol", cfg.step.atol);
        pos("limit_rtol", cfg.limit.rtol);
        pos("initial_length", cfg.limit.initial_length);
        pos("max_length", cfg.limit.max_length);
        pos("volterra_tol", cfg.volterra.tol);
        if (t.contains("max_steps")) {
            cfg.step.max_steps = get_int(t["max_steps"], "tolerances.max_steps");
            if (cfg.step.max_steps < 1) invalid("tolerances.max_steps", "must be >= 1");
        }
    }
    if (ov.rtol) {
        if (!(*ov.rtol > 0)) invalid("--rtol", "must be > 0");
        cfg.step.rtol = *ov.rtol;
    }
    if (ov.atol) {
        if (!(*ov.atol > 0)) invalid("--atol", "must be > 0");
        cfg.step.atol = *ov.atol;
    }
    if (ov.max_steps) {
        if (*ov.max_steps < 1) invalid("--max-steps", "must be >= 1");
        cfg.step.max_steps = *ov.max_steps;
    }
    // The limit extraction keeps its own tighter step control unless the
    // user asked for something specific.
    const bool step_given = ov.rtol || ov.atol || ov.max_steps ||
                            (j.contains("tolerances") && (j["tolerances"].contains("rtol") ||
                                                          j["tolerances"].contains("atol") ||
                                                          j["tolerances"].contains("max_steps")));
    if (step_given) {
        cfg.limit.step = cfg.step;
        const bool lr = j.contains("tolerances") && j["tolerances"].contains("limit_rtol");
        if (!lr) cfg.limit.rtol = std::max(cfg.limit.rtol, 100 * cfg.step.rtol);
    } else if (cfg.experiment == "disk") {
        // membership defects of 1e-8 need integration error well below that
        cfg.step.rtol = 1e-14;
        cfg.step.atol = 1e-16;
    }

    if (j.contains("method")) {
        if (!j["method"].is_string()) invalid("method", "expected a string");
        cfg.method = j["method"];
    }
    if (j.contains("methods")) {
        const json& ms = j["methods"];
        if (!ms.is_array()) invalid("methods", "expected a list");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (!ms[i].is_string()) invalid("methods[" + std::to_string(i) + "]", "expected a string");
            cfg.methods.push_back(ms[i]);
        }
    }
    if (j.contains("c")) cfg.horizons = get_numbers(j["c"], "c");
    if (j.contains("samples")) {
        cfg.samples = get_int(j["samples"], "samples");
        if (cfg.samples < 1) invalid("samples", "must be >= 1");
    }
    if (j.contains("threshold")) cfg.threshold = get_number(j["threshold"], "threshold");
    if (j.contains("defect_tol")) cfg.defect_tol = get_number(j["defect_tol"], "defect_tol");
    if (j.contains("x1")) cfg.x1 = get_number(j["x1"], "x1");
    if (j.contains("riccati_shift")) {
        cfg.riccati_shift = get_number(j["riccati_shift"], "riccati_shift");
        if (!(cfg.riccati_shift > 0)) invalid("riccati_shift", "must be > 0");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) invalid("seed", "expected a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (ov.seed) cfg.seed = *ov.seed;

    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) invalid("output", "expected an object");
        if (o.contains("path")) {
            if (!o["path"].is_string()) invalid("output.path", "expected a string");
            cfg.out_path = o["path"];
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) invalid("output.format", "expected a string");
            cfg.format = o["format"];
        }
    }
    if (!ov.out.empty()) cfg.out_path = ov.out;
    if (!ov.format.empty()) cfg.format = ov.format;
    if (cfg.format != "csv" && cfg.format != "json") invalid("output.format", "must be csv or json");
    if (j.contains("jobs")) {
        const int n = get_int(j["jobs"], "jobs");
        if (n < 1) invalid("jobs", "must be >= 1");
        cfg.jobs = static_cast<unsigned>(n);
    }
    if (ov.jobs) cfg.jobs = std::max(1u, *ov.jobs);
    return cfg;
}

// ---------- output table ----------

using Cell = std::variant<std::monostate, double, long, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) return fmt(std::get<double>(c));
    if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
    if (std::holds_alternative<std::string>(c)) {
        const std::string& s = std::get<std::string>(c);
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    return "";
}

json json_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (std::isfinite(v)) return v;
        return fmt(v);
    }
    if (std::holds_alternative<long>(c)) return std::get<long>(c);
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

void write_table(std::ostream& os, const Table& t, const json& meta, const std::string& format) {
    if (format == "csv") {
        os << "# meta " << meta.dump() << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const Row& r : t.rows) {
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                os << (i ? "," : "") << (i < r.size() ? csv_cell(r[i]) : "");
            os << "\n";
        }
    } else {
        json doc;
        doc["meta"] = meta;
        doc["columns"] = t.columns;
        json rows = json::array();
        for (const Row& r : t.rows) {
            json o = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                o[t.columns[i]] = i < r.size() ? json_cell(r[i]) : json(nullptr);
            rows.push_back(std::move(o));
        }
        doc["rows"] = std::move(rows);
        os << doc.dump(1) << "\n";
    }
}

// Common leading columns: experiment, z, x0, method, index; then m*m matrix entries.
std::vector<std::string> base_columns(int m, const std::vector<std::string>& extra) {
    std::vector<std::string> c{"experiment", "z.re", "z.im", "x0", "method", "index", "m"};
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const std::string n = "v" + std::to_string(i) + std::to_string(k);
            c.push_back(n + ".re");
            c.push_back(n + ".im");
        }
    c.insert(c.end(), extra.begin(), extra.end());
    return c;
}

Row base_row(const std::string& exp, std::optional<cd> z, double x0, const std::string& method,
             long index, int m, const wk_complex* v) {
    Row r{exp};
    if (z) {
        r.push_back(z->real());
        r.push_back(z->imag());
    } else {
        r.push_back(std::monostate{});
        r.push_back(std::monostate{});
    }
    r.push_back(x0);
    r.push_back(method);
    r.push_back(index);
    r.push_back(static_cast<long>(m));
    for (int i = 0; i < m * m; ++i) {
        if (v) {
            r.push_back(v[i].re);
            r.push_back(v[i].im);
        } else {
            r.push_back(std::monostate{});
            r.push_back(std::monostate{});
        }
    }
    return r;
}

// ---------- helpers over matrices ----------

using Mat = std::vector<wk_complex>;

double norm_of(int m, const Mat& a) {
    double v = 0;
    check(wk_op_norm(m, a.data(), &v));
    return v;
}

Mat minus(const Mat& a, const Mat& b) {
    Mat d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = {a[i].re - b[i].re, a[i].im - b[i].im};
    return d;
}

Mat identity(int m) {
    Mat a(static_cast<std::size_t>(m * m), wk_complex{0, 0});
    for (int i = 0; i < m; ++i) a[i * m + i].re = 1;
    return a;
}

wk_complex wz(cd z) { return {z.real(), z.imag()}; }

std::vector<cd> z_points(const Config& cfg) {
    if (cfg.moduli.empty()) invalid("z_grid.moduli", "missing");
    if (cfg.args.empty()) invalid("z_grid.arg", "missing");
    std::vector<cd> zs;
    for (double r : cfg.moduli)
        for (double a : cfg.args) zs.push_back(std::polar(r, a));
    return zs;
}

// Runs n jobs on a small pool; outputs stay in index order.
template <class T>
std::vector<T> run_pool(std::size_t n, unsigned jobs, const std::function<T(std::size_t)>& task) {
    std::vector<std::optional<T>> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = task(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    for (unsigned t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::vector<T> res;
    res.reserve(n);
    for (auto& o : out) res.push_back(std::move(*o));
    return res;
}

bool has_support(const Config& cfg, const wk_potential* p) {
    (void)cfg;
    return wk_potential_support(p, nullptr, nullptr) == 1;
}

// ---------- experiments ----------

struct Outcome {
    Table table;
    json summary = json::object();
    bool pass = true;
    std::vector<std::string> report;  // human lines for stdout
};

Mat compute_m(const Config& cfg, const std::string& method, cd z, double x, json* diag) {
    const int m = cfg.m;
    Mat out(static_cast<std::size_t>(m * m));
    if (method == "limit") {
        wk_limit_info info{};
        check(wk_limit_m(cfg.pot.get(), wz(z), x, &cfg.limit, out.data(), &info));
        if (diag) {
            (*diag)["error_estimate"] = info.error_estimate;
            (*diag)["horizon"] = info.horizon;
        }
    } else if (method == "mirror") {
        check(wk_mirror_m_minus(cfg.pot.get(), wz(z), x, &cfg.limit, out.data()));
    } else if (method == "volterra") {
        wk_volterra_info info{};
        check(wk_volterra_m(cfg.pot.get(), wz(z), x, &cfg.volterra, out.data(), &info));
        if (diag) {
            (*diag)["iterations"] = info.iterations;
            (*diag)["residual"] = info.residual;
        }
    } else if (method == "riccati") {
        // M_+ is carried towards smaller x, the stable direction of its flow
        Mat start(out.size());
        check(wk_limit_m(cfg.pot.get(), wz(z), x + cfg.riccati_shift, &cfg.limit, start.data(), nullptr));
        check(wk_riccati_flow(cfg.pot.get(), wz(z), start.data(), x + cfg.riccati_shift, x, &cfg.step,
                              out.data()));
    } else if (method == "regular") {
        if (cfg.horizons.empty()) invalid("c", "regular method needs a horizon c");
        const Mat b1 = identity(m), b2(out.size(), wk_complex{0, 0});
        check(wk_regular_m(cfg.pot.get(), wz(z), x + cfg.horizons.front(), x, b1.data(), b2.data(),
                           &cfg.step, out.data()));
    } else {
        invalid("method", "unknown method '" + method + "' (limit, mirror, volterra, riccati, regular)");
    }
    return out;
}

void require_method_ok(const Config& cfg, const std::string& method, const std::string& path) {
    static const std::vector<std::string> known{"limit", "mirror", "volterra", "riccati", "regular"};
    if (std::find(known.begin(), known.end(), method) == known.end())
        invalid(path, "unknown method '" + method + "' (limit, mirror, volterra, riccati, regular)");
    if (method == "volterra" && !has_support(cfg, cfg.pot.get()))
        invalid(path, "volterra needs a compactly supported potential (support_hint missing)");
    if (method == "regular" && cfg.horizons.empty()) invalid("c", "regular method needs a horizon c");
}

Outcome run_mfun(const Config& cfg) {
    require_method_ok(cfg, cfg.method, "method");
    const auto zs = z_points(cfg);
    struct Job { cd z; double x; };
    std::vector<Job> jobs;
    for (double x : cfg.xs)
        for (cd z : zs) jobs.push_back({z, x});
    Outcome o;
    o.table.columns = base_columns(cfg.m, {"diag.error_estimate", "diag.horizon"});
    auto rows = run_pool<Row>(jobs.size(), cfg.jobs, [&](std::size_t i) {
        json d;
        const Mat v = compute_m(cfg, cfg.method, jobs[i].z, jobs[i].x, &d);
        Row r = base_row("mfun", jobs[i].z, jobs[i].x, cfg.method, static_cast<long>(i), cfg.m, v.data());
        r.push_back(d.contains("error_estimate") ? Cell(d["error_estimate"].get<double>()) : Cell{});
        r.push_back(d.contains("horizon") ? Cell(d["horizon"].get<double>()) : Cell{});
        return r;
    });
    o.table.rows = std::move(rows);
    o.summary["points"] = jobs.size();
    return o;
}

Outcome run_asymp(const Config& cfg) {
    const int n = cfg.order;
    const int mm = cfg.m * cfg.m;
    Outcome o;
    o.table.columns = base_columns(cfg.m, {});
    std::vector<cd> zs;
    if (!cfg.moduli.empty() || !cfg.args.empty()) zs = z_points(cfg);
    for (double x : cfg.xs) {
        Mat coeffs(static_cast<std::size_t>(std::max(n, 1) * mm));
        if (n > 0) {
            const wk_status s = wk_m_coeffs(cfg.pot.get(), x, n, coeffs.data());
            if (s == WK_INVALID_ARGUMENT) invalid("order", wk_last_error());
            check(s);
        }
        for (int k = 0; k < n; ++k)
            o.table.rows.push_back(base_row("asymp", std::nullopt, x, "coeff", k + 1, cfg.m, coeffs.data() + k * mm));
        for (std::size_t i = 0; i < zs.size(); ++i) {
            Mat v(static_cast<std::size_t>(mm));
            check(wk_eval_series(cfg.m, n, coeffs.data(), wz(zs[i]), v.data()));
            o.table.rows.push_back(base_row("asymp", zs[i], x, "series", static_cast<long>(i), cfg.m, v.data()));
        }
    }
    o.summary["order"] = n;
    return o;
}

Outcome run_volterra(const Config& cfg) {
    if (!has_support(cfg, cfg.pot.get()))
        invalid("potential", "volterra needs a compactly supported potential (support_hint missing)");
    const auto zs = z_points(cfg);
    struct Job { cd z; double x; };
    std::vector<Job> jobs;
    for (double x : cfg.xs)
        for (cd z : zs) jobs.push_back({z, x});
    Outcome o;
    o.table.columns = base_columns(cfg.m, {"diag.iterations", "diag.panels", "diag.residual",
                                           "diag.max_norm", "diag.majorant"});
    o.table.rows = run_pool<Row>(jobs.size(), cfg.jobs, [&](std::size_t i) {
        Mat v(static_cast<std::size_t>(cfg.m * cfg.m));
        wk_volterra_info info{};
        check(wk_volterra_m(cfg.pot.get(), wz(jobs[i].z), jobs[i].x, &cfg.volterra, v.data(), &info));
        Row r = base_row("volterra", jobs[i].z, jobs[i].x, "volterra", static_cast<long>(i), cfg.m, v.data());
        r.push_back(static_cast<long>(info.iterations));
        r.push_back(static_cast<long>(info.panels));
        r.push_back(info.residual);
        r.push_back(info.max_norm);
        r.push_back(info.majorant);
        return r;
    });
    return o;
}

Outcome run_green(const Config& cfg) {
    const int n = cfg.order;
    const int mm = cfg.m * cfg.m;
    const auto zs = z_points(cfg);
    Outcome o;
    o.table.columns = base_columns(cfg.m, {"diag.series_diff"});
    for (double x : cfg.xs) {
        Mat g(static_cast<std::size_t>((n + 1) * mm));
        const wk_status s = wk_green_coeffs(cfg.pot.get(), x, n, g.data());
        if (s == WK_INVALID_ARGUMENT) invalid("order", wk_last_error());
        check(s);
        for (int k = 0; k <= n; ++k) {
            Row r = base_row("green", std::nullopt, x, "coeff", k, cfg.m, g.data() + k * mm);
            r.push_back(std::monostate{});
            o.table.rows.push_back(std::move(r));
        }
        auto rows = run_pool<std::vector<Row>>(zs.size(), cfg.jobs, [&](std::size_t i) {
            const cd z = zs[i];
            Mat mp(mm), mn(mm), gd(mm), gs(mm);
            check(wk_limit_m(cfg.pot.get(), wz(z), x, &cfg.limit, mp.data(), nullptr));
            check(wk_mirror_m_minus(cfg.pot.get(), wz(z), x, &cfg.limit, mn.data()));
            check(wk_green_diag(cfg.m, mn.data(), mp.data(), gd.data()));
            check(wk_eval_green_series(cfg.m, n, g.data(), wz(z), gs.data()));
            const double d = norm_of(cfg.m, minus(gd, gs));
            std::vector<Row> out;
            Row a = base_row("green", z, x, "numeric", static_cast<long>(i), cfg.m, gd.data());
            a.push_back(d);
            Row b = base_row("green", z, x, "series", static_cast<long>(i), cfg.m, gs.data());
            b.push_back(d);
            out.push_back(std::move(a));
            out.push_back(std::move(b));
            return out;
        });
        for (auto& rs : rows)
            for (auto& r : rs) o.table.rows.push_back(std::move(r));
    }
    return o;
}

// Random admissible boundary data: beta1 = I with beta2 = S + iP (P > 0) or
// beta2 = S (self-adjoint), S Hermitian.
struct Beta {
    Mat b1, b2;
    std::string cls;
};

std::vector<Beta> sample_betas(int m, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Beta> out;
    for (int s = 0; s < count; ++s) {
        Beta b;
        b.b1 = identity(m);
        b.b2.assign(static_cast<std::size_t>(m * m), wk_complex{0, 0});
        const bool positive = s % 2 == 0;
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                const double re = u(rng), im = i == j ? 0 : u(rng);
                b.b2[i * m + j] = {re, im};
                b.b2[j * m + i] = {re, -im};
            }
        if (positive) {
            // P = G G* + 0.1 I
            std::vector<cd> gm(static_cast<std::size_t>(m * m));
            for (auto& v : gm) v = {u(rng), u(rng)};
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    cd p = i == j ? cd(0.1) : cd(0);
                    for (int k = 0; k < m; ++k) p += gm[i * m + k] * std::conj(gm[j * m + k]);
                    // beta2 += i P
                    b.b2[i * m + j].re -= p.imag();
                    b.b2[i * m + j].im += p.real();
                }
        }
        b.cls = positive ? "positive" : "selfadjoint";
        out.push_back(std::move(b));
    }
    return out;
}

Outcome run_disk(const Config& cfg) {
    const auto zs = z_points(cfg);
    if (cfg.horizons.empty()) invalid("c", "missing horizon list");
    for (std::size_t i = 0; i < cfg.horizons.size(); ++i)
        if (!(cfg.horizons[i] > 0)) invalid("c[" + std::to_string(i) + "]", "must be > 0 (offset from x0)");
    std::vector<double> cs = cfg.horizons;
    std::sort(cs.begin(), cs.end());
    const auto betas = sample_betas(cfg.m, cfg.samples, cfg.seed);
    struct Job { cd z; double c; std::size_t beta; };
    std::vector<Job> jobs;
    for (cd z : zs)
        for (double c : cs)
            for (std::size_t b = 0; b < betas.size(); ++b) jobs.push_back({z, c, b});
    Outcome o;
    o.table.columns = base_columns(cfg.m, {"c", "sign_class", "defect", "nested_defect", "pass"});
    const double x0 = cfg.x0;
    o.table.rows = run_pool<Row>(jobs.size(), cfg.jobs, [&](std::size_t i) {
        const Job& jb = jobs[i];
        const Beta& b = betas[jb.beta];
        Mat mv(static_cast<std::size_t>(cfg.m * cfg.m));
        check(wk_regular_m(cfg.pot.get(), wz(jb.z), x0 + jb.c, x0, b.b1.data(), b.b2.data(), &cfg.step, mv.data()));
        double own_defect = 0, nested = 0;
        check(wk_disk_membership(cfg.pot.get(), mv.data(), wz(jb.z), x0 + jb.c, x0, &cfg.step, &own_defect));
        for (double c : cs) {
            if (c >= jb.c) break;
            double d = 0;
            check(wk_disk_membership(cfg.pot.get(), mv.data(), wz(jb.z), x0 + c, x0, &cfg.step, &d));
            nested = std::max(nested, d);
        }
        Row r = base_row("disk", jb.z, x0, "regular", static_cast<long>(jb.beta), cfg.m, mv.data());
        r.push_back(jb.c);
        r.push_back(b.cls);
        r.push_back(own_defect);
        r.push_back(nested);
        r.push_back(std::string(own_defect <= cfg.defect_tol && nested <= cfg.defect_tol ? "PASS" : "FAIL"));
        return r;
    });
    double worst = 0;
    for (const Row& r : o.table.rows) {
        const std::size_t k = o.table.columns.size();
        worst = std::max({worst, std::get<double>(r[k - 3]), std::get<double>(r[k - 2])});
    }
    o.pass = worst <= cfg.defect_tol;
    o.summary["max_defect"] = worst;
    o.report.push_back(std::string(o.pass ? "PASS" : "FAIL") + " disk: max defect " + fmt(worst) +
                       " (tol " + fmt(cfg.defect_tol) + ")");
    return o;
}

Outcome run_verify(const Config& cfg) {
    if (cfg.moduli.size() < 3) invalid("z_grid.moduli", "verify needs at least three moduli");
    if (cfg.args.empty()) invalid("z_grid.arg", "missing");
    wk_verify_options vo;
    wk_verify_options_default(&vo);
    if (cfg.raw.contains("method")) {
        if (cfg.method == "limit") vo.method = WK_METHOD_LIMIT;
        else if (cfg.method == "volterra") vo.method = WK_METHOD_VOLTERRA;
        else if (cfg.method == "auto") vo.method = WK_METHOD_AUTO;
        else invalid("method", "verify method must be auto, limit or volterra");
        if (vo.method == WK_METHOD_VOLTERRA && !has_support(cfg, cfg.pot.get()))
            invalid("method", "volterra needs a compactly supported potential (support_hint missing)");
    }
    if (cfg.raw.contains("tolerances")) {
        const json& t = cfg.raw["tolerances"];
        if (t.contains("limit_rtol")) vo.limit.rtol = cfg.limit.rtol;
        if (t.contains("max_length")) vo.limit.max_length = cfg.limit.max_length;
        if (t.contains("volterra_tol")) vo.volterra.tol = cfg.volterra.tol;
        if (t.contains("rtol") || t.contains("atol")) vo.limit.step = cfg.step;
    }
    const std::size_t nm = cfg.moduli.size(), nd = cfg.args.size();
    Outcome o;
    o.table.columns = {"experiment", "z.re", "z.im", "x0", "method", "order", "delta", "modulus",
                       "remainder", "scaled_remainder", "pass_delta"};
    auto results = run_pool<json>(cfg.orders.size(), cfg.jobs, [&](std::size_t oi) {
        std::vector<double> scaled(nm * nd), rem(nm * nd);
        std::vector<int> ppd(nd);
        int pass = 0;
        wk_method used{};
        const wk_status s = wk_verify_order(cfg.pot.get(), cfg.x0, cfg.orders[oi], static_cast<int>(nm),
                                            cfg.moduli.data(), static_cast<int>(nd), cfg.args.data(), &vo,
                                            scaled.data(), rem.data(), ppd.data(), &pass, &used);
        if (s == WK_INVALID_ARGUMENT) invalid("order", wk_last_error());
        check(s);
        json r;
        r["scaled"] = scaled;
        r["rem"] = rem;
        r["ppd"] = ppd;
        r["pass"] = pass;
        r["method"] = used == WK_METHOD_VOLTERRA ? "volterra" : "limit";
        return r;
    });
    for (std::size_t oi = 0; oi < cfg.orders.size(); ++oi) {
        const json& r = results[oi];
        const int n = cfg.orders[oi];
        const std::string method = r["method"];
        std::ostringstream tab;
        tab << "R_j for N = " << n << " (" << method << ")\n  delta \\ |z|";
        for (double mod : cfg.moduli) tab << "  " << fmt(mod);
        for (std::size_t d = 0; d < nd; ++d) {
            tab << "\n  " << fmt(cfg.args[d]);
            for (std::size_t j = 0; j < nm; ++j) {
                const double sc = r["scaled"][d * nm + j];
                const double re = r["rem"][d * nm + j];
                const cd z = std::polar(cfg.moduli[j], cfg.args[d]);
                o.table.rows.push_back(Row{"verify", z.real(), z.imag(), cfg.x0, method, static_cast<long>(n),
                                           cfg.args[d], cfg.moduli[j], re, sc,
                                           std::string(r["ppd"][d].get<int>() ? "PASS" : "FAIL")});
                char buf[32];
                std::snprintf(buf, sizeof buf, "  %.4e", sc);
                tab << buf;
            }
            tab << (r["ppd"][d].get<int>() ? "  ok" : "  not decreasing");
        }
        const bool pass = r["pass"].get<int>() != 0;
        o.pass = o.pass && pass;
        o.report.push_back(std::string(pass ? "PASS" : "FAIL") + " verify N=" + std::to_string(n));
        o.report.push_back(tab.str());
        o.summary["order_" + std::to_string(n)] = pass ? "PASS" : "FAIL";
    }
    return o;
}

Outcome run_locality(const Config& cfg) {
    if (!cfg.pot2) invalid("potential2", "missing (locality compares two potentials)");
    if (cfg.moduli.size() < 2) invalid("z_grid.moduli", "locality needs at least two moduli");
    if (!(cfg.x1 > cfg.x0)) invalid("x1", "must exceed x0");
    wk_locality_options lo;
    wk_locality_options_default(&lo);
    if (!cfg.args.empty()) {
        if (cfg.args.size() != 1) invalid("z_grid.arg", "locality uses a single ray");
        lo.delta = cfg.args[0];
    }
    const std::size_t n = cfg.moduli.size();
    std::vector<double> ims(n), diff(n), norm(n);
    wk_locality_summary s{};
    const wk_status st = wk_locality(cfg.pot.get(), cfg.pot2.get(), cfg.x0, cfg.x1, static_cast<int>(n),
                                     cfg.moduli.data(), &lo, ims.data(), diff.data(), norm.data(), &s);
    if (st == WK_INVALID_ARGUMENT) invalid("potential2", wk_last_error());
    check(st);
    Outcome o;
    o.table.columns = {"experiment", "z.re", "z.im", "x0", "method", "modulus", "im_sqrt_z", "diff",
                       "normalized"};
    for (std::size_t j = 0; j < n; ++j) {
        const cd z = std::polar(cfg.moduli[j], lo.delta);
        o.table.rows.push_back(Row{"locality", z.real(), z.imag(), cfg.x0, std::string("limit"), cfg.moduli[j],
                                   ims[j], diff[j], norm[j]});
    }
    o.pass = s.pass != 0;
    o.summary["slope"] = s.slope;
    o.summary["slope_bound"] = s.slope_bound;
    o.summary["bounded"] = s.bounded != 0;
    o.summary["identical"] = s.identical != 0;
    o.report.push_back(std::string(o.pass ? "PASS" : "FAIL") + " locality: slope " + fmt(s.slope) +
                       (s.identical ? " (potentials identical)" : " bound " + fmt(s.slope_bound)) +
                       ", normalized " + (s.bounded ? "bounded" : "unbounded"));
    return o;
}

Outcome run_compare(const Config& cfg) {
    std::vector<std::string> methods = cfg.methods;
    if (methods.empty()) methods = {"limit", "volterra"};
    if (methods.size() < 2) invalid("methods", "compare needs at least two methods");
    for (std::size_t i = 0; i < methods.size(); ++i)
        require_method_ok(cfg, methods[i], "methods[" + std::to_string(i) + "]");
    const auto zs = z_points(cfg);
    struct Job { cd z; double x; };
    std::vector<Job> jobs;
    for (double x : cfg.xs)
        for (cd z : zs) jobs.push_back({z, x});
    Outcome o;
    o.table.columns = base_columns(cfg.m, {"diff_vs_first", "max_pairwise"});
    auto rows = run_pool<std::vector<Row>>(jobs.size(), cfg.jobs, [&](std::size_t i) {
        std::vector<Mat> vals;
        for (const auto& me : methods) vals.push_back(compute_m(cfg, me, jobs[i].z, jobs[i].x, nullptr));
        double worst = 0;
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b)
                worst = std::max(worst, norm_of(cfg.m, minus(vals[a], vals[b])));
        std::vector<Row> out;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            Row r = base_row("compare", jobs[i].z, jobs[i].x, methods[k], static_cast<long>(i), cfg.m, vals[k].data());
            r.push_back(norm_of(cfg.m, minus(vals[k], vals[0])));
            r.push_back(worst);
            out.push_back(std::move(r));
        }
        return out;
    });
    double worst = 0;
    for (auto& rs : rows)
        for (auto& r : rs) {
            worst = std::max(worst, std::get<double>(r.back()));
            o.table.rows.push_back(std::move(r));
        }
    o.pass = worst <= cfg.threshold;
    o.summary["max_diff"] = worst;
    o.summary["threshold"] = cfg.threshold;
    std::string names;
    for (const auto& me : methods) names += (names.empty() ? "" : " vs ") + me;
    o.report.push_back(std::string(o.pass ? "PASS" : "FAIL") + " compare " + names + ": max diff " +
                       fmt(worst) + " (threshold " + fmt(cfg.threshold) + ")");
    return o;
}

json make_meta(const Config& cfg, const Outcome& o) {
    json meta;
    meta["experiment"] = cfg.experiment;
    meta["version"] = wk_version();
    meta["m"] = cfg.m;
    meta["potential_kind"] = wk_potential_kind(cfg.pot.get());
    meta["tolerances"] = {{"rtol", cfg.step.rtol},
                          {"atol", cfg.step.atol},
                          {"max_steps", cfg.step.max_steps},
                          {"limit_rtol", cfg.limit.rtol},
                          {"initial_length", cfg.limit.initial_length},
                          {"max_length", cfg.limit.max_length},
                          {"volterra_tol", cfg.volterra.tol}};
    meta["seed"] = cfg.seed;
    meta["summary"] = o.summary;
    meta["status"] = o.pass ? "PASS" : "FAIL";
    return meta;
}

int run(const std::string& sub, const std::string& config_path, const Overrides& ov) {
    if (config_path.empty()) throw ValidationError("--config: required");
    const Config cfg = load_config(config_path, sub, ov);
    static const std::map<std::string, Outcome (*)(const Config&)> table{
        {"mfun", run_mfun},     {"asymp", run_asymp},       {"disk", run_disk},
        {"volterra", run_volterra}, {"green", run_green},   {"locality", run_locality},
        {"verify", run_verify}, {"compare", run_compare}};
    const Outcome o = table.at(cfg.experiment)(cfg);
    const json meta = make_meta(cfg, o);
    if (cfg.out_path.empty()) {
        write_table(std::cout, o.table, meta, cfg.format);
        for (const auto& l : o.report) std::cerr << l << "\n";
    } else {
        std::ofstream f(cfg.out_path);
        if (!f) throw ValidationError("output.path: cannot write '" + cfg.out_path + "'");
        write_table(f, o.table, meta, cfg.format);
        for (const auto& l : o.report) std::cout << l << "\n";
    }
    return o.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weylkit: Weyl-Titchmarsh M-matrices and their high-energy asymptotics"};
    app.fallthrough();
    std::string config_path;
    Overrides ov;
    double rtol = 0, atol = 0;
    long max_steps = 0;
    unsigned jobs = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--out", ov.out, "output file (default: stdout)");
    app.add_option("--format", ov.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* o_rtol = app.add_option("--rtol", rtol, "integrator relative tolerance");
    auto* o_atol = app.add_option("--atol", atol, "integrator absolute tolerance");
    auto* o_steps = app.add_option("--max-steps", max_steps, "integrator step budget");
    auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
    auto* o_seed = app.add_option("--seed", seed, "random seed (overrides config)");
    app.add_flag_callback("--version", [] {
        std::cout << "weylkit " << wk_version() << "\n";
        std::exit(0);
    }, "print version");

    const char* help[][2] = {{"mfun", "M_+(z, x) (or M_-, Volterra, Riccati, regular) over a z-grid"},
                             {"asymp", "expansion coefficients m_k(x) and partial sums"},
                             {"disk", "disk containment and nesting for random boundary data"},
                             {"volterra", "M_+ from the Volterra equation (compact support)"},
                             {"green", "diagonal Green's matrix against its expansion"},
                             {"locality", "exponential locality of M for two potentials"},
                             {"verify", "asymptotic order check with the R_j table"},
                             {"compare", "cross-method agreement"}};
    std::vector<CLI::App*> subs;
    for (auto& h : help) subs.push_back(app.add_subcommand(h[0], h[1]));
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (o_rtol->count()) ov.rtol = rtol;
    if (o_atol->count()) ov.atol = atol;
    if (o_steps->count()) ov.max_steps = max_steps;
    if (o_jobs->count()) ov.jobs = jobs;
    if (o_seed->count()) ov.seed = seed;
    std::string sub;
    for (auto* s : subs)
        if (s->parsed()) sub = s->get_name();

    try {
        return run(sub, config_path, ov);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const LibError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return e.status == WK_INVALID_ARGUMENT ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
