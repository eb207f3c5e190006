// anharmonic: spectra, expansion comparisons and the worked examples from the
// command line. Exit codes: 0 ok, 1 acceptance failure, 2 config error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "anharmonic/asymptotics.hpp"
#include "anharmonic/eigensolve.hpp"
#include "anharmonic/errors.hpp"
#include "anharmonic/fit.hpp"
#include "anharmonic/io.hpp"
#include "anharmonic/potential.hpp"
#include "anharmonic/scenarios.hpp"
#include "anharmonic/volterra.hpp"

using namespace anharmonic;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(s);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

double to_number(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        config_error("malformed number '" + s + "' in " + what);
    }
}

int to_int(const std::string& s, const std::string& what) {
    const double v = to_number(s, what);
    if (v != std::floor(v)) config_error("expected an integer in " + what + ", got '" + s + "'");
    return static_cast<int>(v);
}

// "lo..hi" or a single index.
std::pair<int, int> parse_index_range(const std::string& s) {
    const auto dots = s.find("..");
    const int lo = to_int(dots == std::string::npos ? s : s.substr(0, dots), "--n");
    const int hi = dots == std::string::npos ? lo : to_int(s.substr(dots + 2), "--n");
    if (lo < 1 || hi < lo) config_error("--n needs 1 <= lo <= hi");
    return {lo, hi};
}

// "lo:hi:count"
std::vector<double> parse_grid(const std::string& s, bool geometric, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) config_error(what + " expects lo:hi:count");
    const double lo = to_number(parts[0], what);
    const double hi = to_number(parts[1], what);
    const int count = to_int(parts[2], what);
    if (count < 2 || !(hi > lo)) config_error(what + " needs lo < hi and count >= 2");
    if (geometric) return geometric_grid(lo, hi, count);
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1.0));
    return g;
}

PerturbationPiece parse_piece(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.empty()) config_error("empty --perturbation");
    const auto& kind = parts[0];
    const auto arg = [&](std::size_t i) { return to_number(parts.at(i), "--perturbation " + kind); };
    if (kind == "step" && parts.size() == 4) return Step{arg(1), arg(2), arg(3)};
    if (kind == "weierstrass" && (parts.size() == 3 || parts.size() == 5)) {
        TruncatedWeierstrass w;
        w.tau = arg(1);
        w.J = to_int(parts[2], "--perturbation weierstrass");
        if (parts.size() == 5) {
            w.lo = arg(3);
            w.hi = arg(4);
        }
        return w;
    }
    if (kind == "cosine" && (parts.size() == 3 || parts.size() == 5)) {
        WindowedCosine c;
        c.amplitude = arg(1);
        c.omega = arg(2);
        if (parts.size() == 5) {
            c.lo = arg(3);
            c.hi = arg(4);
        }
        return c;
    }
    config_error("unrecognised --perturbation '" + s +
                 "' (expected step:h:lo:hi, weierstrass:tau:J[:lo:hi] or cosine:a:omega[:lo:hi])");
}

struct CommonArgs {
    std::string config;
    std::optional<double> alpha;
    std::string terms;
    std::string shifted;
    std::optional<double> quartic;
    std::vector<std::string> perturbation;
    std::optional<double> b;
    std::string bc;
    std::string n = "1..10";
    bool n_given = false;
    double tol = 1e-8;
    std::string format = "csv";
    std::string output;
    std::optional<int> threads;
    std::string scheme = "numerov";
};

struct RunConfig {
    PotentialSpec spec;
    Geometry geometry = Geometry::FullLine;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    int n_lo = 1;
    int n_hi = 10;
    double tol = 1e-8;
    std::string format = "csv";
    std::string output;
    Scheme scheme = Scheme::Numerov;
    int threads = 1;
};

void add_common(CLI::App* app, CommonArgs& a, bool with_range = true) {
    app->add_option("--config", a.config, "JSON potential or run configuration");
    app->add_option("--alpha", a.alpha, "q0 = |x|^alpha");
    app->add_option("--terms", a.terms, "q0 = sum a|x|^alpha, given as a:alpha,a:alpha,...");
    app->add_option("--shifted", a.shifted, "q0 = (|x| + c)^alpha, given as c:alpha");
    app->add_option("--quartic", a.quartic, "q0 = (x^2 + c)^2, given c");
    app->add_option("--perturbation", a.perturbation, "perturbation piece (repeatable)");
    app->add_option("--b", a.b, "support radius b (default: 1, or the support plus 0.5)");
    app->add_option("--bc", a.bc, "dirichlet|neumann: half line with this condition at 0");
    if (with_range) {
        app->add_option("--n", a.n, "index range lo..hi")->each([&a](const std::string&) { a.n_given = true; });
    }
    app->add_option("--tol", a.tol, "eigenvalue tolerance")->check(CLI::PositiveNumber);
    app->add_option("--format", a.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--output,-o", a.output, "output path (default stdout)");
    app->add_option("--threads", a.threads, "worker threads (capped by ANHARMONIC_THREADS)")
        ->check(CLI::PositiveNumber);
    app->add_option("--scheme", a.scheme, "numerov|fd2")->check(CLI::IsMember({"numerov", "fd2"}));
}

int thread_count(std::optional<int> requested) {
    int t = requested.value_or(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    if (const char* env = std::getenv("ANHARMONIC_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1) config_error("ANHARMONIC_THREADS must be a positive integer");
        t = std::min<long>(t, cap);
    }
    return std::max(1, t);
}

BoundaryCondition parse_bc(const std::string& s) {
    if (s == "dirichlet") return BoundaryCondition::Dirichlet;
    if (s == "neumann") return BoundaryCondition::Neumann;
    config_error("--bc must be dirichlet or neumann");
}

RunConfig resolve(const CommonArgs& a) {
    RunConfig rc;
    Json cfg;
    bool have_potential = false;
    if (!a.config.empty()) {
        cfg = io::read_json_file(a.config);
        if (!cfg.is_object()) config_error("configuration must be a JSON object");
        if (cfg.contains("q0")) {
            rc.spec = io::potential_from_json(cfg);
            have_potential = true;
        } else if (cfg.contains("potential")) {
            Json p = cfg.at("potential");
            if (!p.contains("schema_version") && cfg.contains("schema_version")) p["schema_version"] = cfg["schema_version"];
            rc.spec = io::potential_from_json(p);
            have_potential = true;
            if (cfg.contains("n")) {
                const auto& n = cfg.at("n");
                if (!n.is_array() || n.size() != 2 || !n[0].is_number_integer() || !n[1].is_number_integer()) {
                    config_error("config 'n' must be [lo, hi]");
                }
                rc.n_lo = n[0].get<int>();
                rc.n_hi = n[1].get<int>();
            }
            if (cfg.contains("bc")) {
                if (!cfg.at("bc").is_string()) config_error("config 'bc' must be a string");
                rc.geometry = Geometry::HalfLine;
                rc.bc = parse_bc(cfg.at("bc").get<std::string>());
            }
            if (cfg.contains("tol")) {
                if (!cfg.at("tol").is_number()) config_error("config 'tol' must be a number");
                rc.tol = cfg.at("tol").get<double>();
            }
            if (cfg.contains("output")) {
                const auto& out = cfg.at("output");
                if (out.contains("format")) rc.format = out.at("format").get<std::string>();
                if (out.contains("path")) rc.output = out.at("path").get<std::string>();
            }
        } else {
            config_error("configuration needs either 'q0' (a potential) or 'potential'");
        }
    }

    std::vector<PerturbationPiece> pieces;
    for (const auto& p : a.perturbation) pieces.push_back(parse_piece(p));
    const int shapes = a.alpha.has_value() + !a.terms.empty() + !a.shifted.empty() + a.quartic.has_value();
    if (shapes > 1) config_error("give only one of --alpha, --terms, --shifted, --quartic");
    if (shapes == 1 || !have_potential) {
        PotentialSpec s;
        if (!a.terms.empty()) {
            for (const auto& t : split(a.terms, ',')) {
                const auto pair = split(t, ':');
                if (pair.size() != 2) config_error("--terms expects a:alpha pairs");
                s.terms.push_back({to_number(pair[0], "--terms"), to_number(pair[1], "--terms")});
            }
            s.composite = PlainSum{};
        } else if (!a.shifted.empty()) {
            const auto pair = split(a.shifted, ':');
            if (pair.size() != 2) config_error("--shifted expects c:alpha");
            s.composite = ShiftedPower{to_number(pair[0], "--shifted"), to_number(pair[1], "--shifted")};
        } else if (a.quartic) {
            s.composite = Quartic{*a.quartic};
        } else {
            s.terms.push_back({1.0, a.alpha.value_or(2.0)});
        }
        s.perturbation = have_potential && pieces.empty() ? rc.spec.perturbation : Perturbation(pieces);
        s.b = have_potential ? rc.spec.b : 1.0;
        rc.spec = s;
    } else if (!pieces.empty()) {
        rc.spec.perturbation = Perturbation(pieces);
    }
    if (a.b) {
        rc.spec.b = *a.b;
    } else if (!have_potential && !rc.spec.perturbation.is_zero()) {
        const auto [lo, hi] = rc.spec.perturbation.support();
        rc.spec.b = std::max(1.0, std::max(std::abs(lo), std::abs(hi)) + 0.5);
    }
    rc.spec.validate();

    if (!a.bc.empty()) {
        rc.geometry = Geometry::HalfLine;
        rc.bc = parse_bc(a.bc);
    }
    if (a.n_given || a.config.empty()) std::tie(rc.n_lo, rc.n_hi) = parse_index_range(a.n);
    if (rc.n_lo < 1 || rc.n_hi < rc.n_lo) config_error("index range must satisfy 1 <= lo <= hi");
    if (a.tol != 1e-8 || a.config.empty()) rc.tol = a.tol;
    if (!(rc.tol > 0.0)) config_error("tolerance must be positive");
    if (a.format != "csv" || rc.format.empty()) rc.format = a.format;
    if (rc.format != "csv" && rc.format != "json") config_error("format must be json or csv");
    if (!a.output.empty()) rc.output = a.output;
    rc.scheme = a.scheme == "fd2" ? Scheme::FD2 : Scheme::Numerov;
    rc.threads = thread_count(a.threads);
    return rc;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) config_error("cannot write '" + path + "'");
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Flat table written as CSV or as {schema_version, meta, columns, rows}.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    [[nodiscard]] std::string csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
        out += '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                const auto& v = r[i];
                if (v.is_number_integer()) {
                    out += std::to_string(v.get<long long>());
                } else if (v.is_number()) {
                    out += io::format_double(v.get<double>());
                } else if (v.is_boolean()) {
                    out += v.get<bool>() ? "true" : "false";
                } else if (v.is_string()) {
                    out += v.get<std::string>();
                }
            }
            out += '\n';
        }
        return out;
    }

    [[nodiscard]] Json json(const Json& meta) const {
        Json j;
        j["schema_version"] = io::kSchemaVersion;
        j["meta"] = meta;
        j["columns"] = columns;
        Json rs = Json::array();
        for (const auto& r : rows) rs.push_back(Json(r));
        j["rows"] = rs;
        return j;
    }
};

void write_table(const Table& t, const RunConfig& rc, const Json& meta) {
    emit(rc.format == "json" ? dump(t.json(meta)) : t.csv(), rc.output);
}

Json base_meta(const RunConfig& rc) {
    Json m;
    m["potential"] = io::potential_to_json(rc.spec);
    m["geometry"] = std::string(to_string(rc.geometry));
    if (rc.geometry == Geometry::HalfLine) m["bc"] = std::string(to_string(rc.bc));
    return m;
}

SolveOptions solve_options(const RunConfig& rc) {
    SolveOptions so;
    so.tol = rc.tol;
    so.threads = rc.threads;
    return so;
}

Spectrum run_oracle(const RunConfig& rc, int lo, int hi) {
    const double lmax = lambda_upper_estimate(rc.spec, hi, rc.geometry);
    const auto problem = BoundaryProblem::automatic(rc.spec, lmax, rc.geometry, rc.bc, rc.scheme);
    return solve_range(problem, rc.spec, lo, hi, solve_options(rc));
}

int cmd_spectrum(const CommonArgs& a) {
    const auto rc = resolve(a);
    const auto s = run_oracle(rc, rc.n_lo, rc.n_hi);
    if (rc.format == "json") {
        Json meta = base_meta(rc);
        meta["tol"] = rc.tol;
        emit(dump(io::spectrum_to_json(s, meta)), rc.output);
    } else {
        emit(io::spectrum_to_csv(s), rc.output);
    }
    return kExitOk;
}

Spectrum load_spectrum(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) config_error("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return io::spectrum_from_csv(ss.str());
    }
    return io::spectrum_from_json(io::read_json_file(path));
}

double power_alpha(const PotentialSpec& spec) {
    if (!std::holds_alternative<PlainSum>(spec.composite) || spec.terms.size() != 1 || spec.terms[0].a != 1.0) {
        config_error("the expansion predictor needs q0 = |x|^alpha (use --predictor thm2 for other potentials)");
    }
    return spec.terms[0].alpha;
}

PotentialSpec even_extension_spec(const PotentialSpec& spec) {
    PotentialSpec s = spec;
    s.perturbation = spec.perturbation.even_extension();
    return s;
}

int cmd_compare(const CommonArgs& a, const std::string& predictor, const std::string& form_name,
                const std::string& spectrum_path) {
    const auto rc = resolve(a);
    const auto form = form_name == "printed" ? ExpansionForm::Printed : ExpansionForm::Rederived;
    const bool half = rc.geometry == Geometry::HalfLine;
    if (predictor == "thm2" && half) config_error("the thm2 predictor applies to the full line only");
    if (predictor == "expansion") (void)power_alpha(rc.spec);

    const auto s = spectrum_path.empty() ? run_oracle(rc, rc.n_lo, rc.n_hi) : load_spectrum(spectrum_path);
    ExpansionReport rep;
    rep.alpha = leading_alpha(rc.spec);
    rep.form = form;
    rep.predictor = predictor;
    const auto k = constants(rep.alpha, rc.spec.perturbation);
    const auto ext = even_extension_spec(rc.spec);
    for (const auto& e : s.entries) {
        if (e.n < rc.n_lo || e.n > rc.n_hi) continue;
        ExpansionRow row;
        if (predictor == "expansion") {
            row = half ? halfline_expansion(rep.alpha, rc.spec.perturbation, e.n, rc.bc, form)
                       : eigenvalue_expansion(k, rc.spec.perturbation, e.n, form);
            row.set_oracle(e.lambda);
        } else if (predictor == "quantization") {
            const auto q = half ? quantization_solve(ext, e.n,
                                                     rc.bc == BoundaryCondition::Dirichlet ? TypeTag::D : TypeTag::N, form)
                                : merged_root(rc.spec, e.n, form);
            row.n = e.n;
            row.term1 = q.lambda;
            row.predicted = q.lambda;
            row.set_oracle(e.lambda);
        } else {
            row.n = e.n;
            row.oracle = e.lambda;
            row.residual = thm2_residual(rc.spec, e.n, e.lambda, form);
        }
        rep.rows.push_back(row);
    }
    if (rep.rows.empty()) config_error("no eigenvalues in the requested index range");

    Json fitj = Json::object();
    if (rep.rows.size() >= 3) {
        std::vector<double> xs, ys;
        for (const auto& r : rep.rows) {
            xs.push_back(predictor == "thm2" ? *r.oracle : r.n);
            ys.push_back(std::max(std::abs(*r.residual), 1e-300));
        }
        fitj["against"] = predictor == "thm2" ? "lambda" : "n";
        fitj["slope"] = fit::loglog(xs, ys).slope;
        fitj["envelope_slope"] = fit::loglog(xs, fit::upper_envelope(ys)).slope;
    }
    if (rc.format == "json") {
        Json meta = base_meta(rc);
        meta["fit"] = fitj;
        emit(dump(io::report_to_json(rep, meta)), rc.output);
    } else {
        emit(io::report_to_csv(rep), rc.output);
        if (fitj.contains("slope")) {
            std::fprintf(stderr, "fitted log-log slope vs %s: %.4f (envelope %.4f)\n",
                         fitj["against"].get<std::string>().c_str(), fitj["slope"].get<double>(),
                         fitj["envelope_slope"].get<double>());
        }
    }
    return kExitOk;
}

int cmd_quantize(const CommonArgs& a, const std::string& type, const std::string& form_name) {
    const auto rc = resolve(a);
    const auto form = form_name == "printed" ? ExpansionForm::Printed : ExpansionForm::Rederived;
    Table t{{"n", "type", "lambda", "mu", "Q", "correction", "d2", "residual"}, {}};
    for (int n = rc.n_lo; n <= rc.n_hi; ++n) {
        const auto q = type == "merged" ? merged_root(rc.spec, n, form)
                                        : quantization_solve(rc.spec, n, type == "D" ? TypeTag::D : TypeTag::N, form);
        t.rows.push_back({n, std::string(to_string(q.type)), q.lambda, q.mu, q.Q, q.correction, q.d2, q.residual});
    }
    Json meta = base_meta(rc);
    meta["form"] = form_name;
    write_table(t, rc, meta);
    return kExitOk;
}

int cmd_counting(const CommonArgs& a, const std::string& grid) {
    const auto rc = resolve(a);
    const auto lambdas = parse_grid(grid, false, "--lambda-range");
    const auto problem = BoundaryProblem::automatic(rc.spec, lambdas.back(), rc.geometry, rc.bc, rc.scheme);
    const Discretization d(problem, rc.spec);
    Table t{{"lambda", "sturm", "asymptotic", "difference"}, {}};
    for (double l : lambdas) {
        const long c = d.count(l);
        const double asym = counting_asymptotic(rc.spec, l);
        t.rows.push_back({l, c, asym, static_cast<double>(c) - asym});
    }
    write_table(t, rc, base_meta(rc));
    return kExitOk;
}

int cmd_heat_trace(const CommonArgs& a, const std::vector<double>& ts) {
    const auto rc = resolve(a);
    if (ts.empty()) config_error("--t needs at least one value");
    const double t_min = *std::min_element(ts.begin(), ts.end());
    if (!(t_min > 0.0)) config_error("--t values must be positive");
    const double cutoff = heat_trace_cutoff(t_min);
    const int n_max = static_cast<int>(std::ceil(counting_asymptotic(rc.spec, cutoff))) + 3;
    const auto s = run_oracle(rc, 1, n_max);
    std::vector<double> eig;
    for (const auto& e : s.entries) eig.push_back(e.lambda);
    const double alpha = leading_alpha(rc.spec);
    double shift = 0.0;
    if (const auto* sp = std::get_if<ShiftedPower>(&rc.spec.composite)) shift = sp->c;
    Table t{{"t", "terms", "partial_sum", "tail", "total", "leading", "difference"}, {}};
    for (double tt : ts) {
        const auto h = heat_trace_numeric(rc.spec, eig, tt);
        const double lead = heat_trace_leading(alpha, tt, shift);
        t.rows.push_back({tt, h.terms, h.partial_sum, h.tail, h.total, lead, h.total - lead});
    }
    write_table(t, rc, base_meta(rc));
    return kExitOk;
}

int cmd_volterra(const CommonArgs& a, const std::string& grid, const std::string& which) {
    const auto rc = resolve(a);
    const auto lambdas = parse_grid(grid, true, "--lambda-range");
    std::vector<LemmaQuantity> qs;
    if (which == "all" || which == "f_est") qs.push_back(LemmaQuantity::FEst);
    if (which == "all" || which == "k1") qs.push_back(LemmaQuantity::K1);
    if (which == "all" || which == "k2") qs.push_back(LemmaQuantity::K2);
    Table t{{"quantity", "lambda", "error", "exponent", "envelope_exponent", "monotone"}, {}};
    for (auto q : qs) {
        const auto r = lemma_rate_check(rc.spec, lambdas, q);
        for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
            t.rows.push_back({std::string(to_string(q)), r.lambdas[i], r.errors[i], r.exponent, r.envelope_exponent,
                              r.monotone});
        }
    }
    write_table(t, rc, base_meta(rc));
    return kExitOk;
}

int print_scenario(const scenarios::ScenarioResult& r) {
    std::printf("%s\n", r.title.c_str());
    for (const auto& line : r.table) std::printf("  %s\n", line.c_str());
    for (const auto& c : r.checks) {
        std::printf("%s %s: %s\n", c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL"), c.label.c_str(),
                    c.detail.c_str());
    }
    return r.passed() ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalues and asymptotic expansions of perturbed anharmonic oscillators"};
    app.require_subcommand(1);

    CommonArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "compute eigenvalues");
    add_common(spectrum, spectrum_args);

    CommonArgs compare_args;
    std::string predictor = "expansion";
    std::string form = "rederived";
    std::string spectrum_in;
    auto* compare = app.add_subcommand("compare", "compare oracle eigenvalues with an asymptotic predictor");
    add_common(compare, compare_args);
    compare->add_option("--predictor", predictor, "expansion|quantization|thm2")
        ->check(CLI::IsMember({"expansion", "quantization", "thm2"}));
    compare->add_option("--form", form, "printed|rederived")->check(CLI::IsMember({"printed", "rederived"}));
    compare->add_option("--spectrum", spectrum_in, "use a spectrum file (json or .csv) instead of solving");

    CommonArgs quantize_args;
    std::string qtype = "merged";
    std::string qform = "rederived";
    auto* quantize = app.add_subcommand("quantize", "roots of the quantization relation");
    add_common(quantize, quantize_args);
    quantize->add_option("--type", qtype, "D|N|merged")->check(CLI::IsMember({"D", "N", "merged"}));
    quantize->add_option("--form", qform, "printed|rederived")->check(CLI::IsMember({"printed", "rederived"}));

    CommonArgs counting_args;
    std::string counting_grid = "20:1000:50";
    auto* counting = app.add_subcommand("counting", "Sturm count versus the counting asymptotic");
    add_common(counting, counting_args, false);
    counting->add_option("--lambda-range", counting_grid, "lo:hi:count (uniform)");

    CommonArgs heat_args;
    std::vector<double> ts{0.02, 0.05, 0.1};
    auto* heat = app.add_subcommand("heat-trace", "numerical heat trace versus its leading term");
    add_common(heat, heat_args, false);
    heat->add_option("--t", ts, "times")->delimiter(',');

    CommonArgs volterra_args;
    std::string volterra_grid = "100:1000000:9";
    std::string quantity = "all";
    auto* volterra = app.add_subcommand("volterra-verify", "interior-solution error rates as CSV");
    add_common(volterra, volterra_args, false);
    volterra->add_option("--lambda-range", volterra_grid, "lo:hi:count (geometric)");
    volterra->add_option("--quantity", quantity, "all|f_est|k1|k2")->check(CLI::IsMember({"all", "f_est", "k1", "k2"}));

    std::string which;
    double tau = 0.5;
    int J = 6;
    double c = 1.0;
    double shifted_alpha = 3.0;
    std::optional<int> example_threads;
    auto* examples = app.add_subcommand("examples", "run a worked example end to end");
    examples->add_option("which", which, "weierstrass|shifted|quartic|halfline")
        ->required()
        ->check(CLI::IsMember({"weierstrass", "shifted", "quartic", "halfline"}));
    examples->add_option("--tau", tau, "Weierstrass exponent");
    examples->add_option("--J", J, "Weierstrass truncation level");
    examples->add_option("--c", c, "shift c for shifted and quartic");
    examples->add_option("--alpha", shifted_alpha, "exponent for shifted");
    examples->add_option("--threads", example_threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*spectrum) return cmd_spectrum(spectrum_args);
        if (*compare) return cmd_compare(compare_args, predictor, form, spectrum_in);
        if (*quantize) return cmd_quantize(quantize_args, qtype, qform);
        if (*counting) return cmd_counting(counting_args, counting_grid);
        if (*heat) return cmd_heat_trace(heat_args, ts);
        if (*volterra) return cmd_volterra(volterra_args, volterra_grid, quantity);
        if (*examples) {
            scenarios::Options opt;
            opt.threads = thread_count(example_threads);
            if (which == "weierstrass") return print_scenario(scenarios::weierstrass_example(tau, J, opt));
            if (which == "shifted") return print_scenario(scenarios::shifted_example(c, shifted_alpha, opt));
            if (which == "quartic") return print_scenario(scenarios::quartic_example(c, opt));
            return print_scenario(scenarios::halfline_example(opt));
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.kind() == ErrorKind::Config ? kExitConfig : kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return kExitOk;
}
