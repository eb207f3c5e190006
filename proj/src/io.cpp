#include "anharmonic/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "anharmonic/errors.hpp"

namespace anharmonic::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

double get_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) config_error(std::string("expected number field '") + key + "'");
    return j.at(key).get<double>();
}

double get_number_or(const Json& j, const char* key, double fallback) {
    return j.contains(key) ? get_number(j, key) : fallback;
}

std::string get_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) config_error(std::string("expected string field '") + key + "'");
    return j.at(key).get<std::string>();
}

void check_version(const Json& j) {
    if (!j.is_object()) config_error("expected a JSON object");
    if (!j.contains("schema_version")) config_error("missing schema_version");
    if (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != kSchemaVersion) {
        config_error("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
}

std::vector<double> number_array(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) config_error(std::string("expected array field '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) config_error(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

Json problem_to_json(const BoundaryProblem& p) {
    Json j;
    j["geometry"] = std::string(to_string(p.geometry));
    j["bc_at_zero"] = std::string(to_string(p.bc_at_zero));
    j["L"] = p.L;
    j["h"] = p.h;
    j["scheme"] = std::string(to_string(p.scheme));
    return j;
}

BoundaryProblem problem_from_json(const Json& j) {
    BoundaryProblem p;
    const auto geo = get_string(j, "geometry");
    if (geo == "full") {
        p.geometry = Geometry::FullLine;
    } else if (geo == "half") {
        p.geometry = Geometry::HalfLine;
    } else {
        config_error("unknown geometry '" + geo + "'");
    }
    const auto bc = get_string(j, "bc_at_zero");
    if (bc == "dirichlet") {
        p.bc_at_zero = BoundaryCondition::Dirichlet;
    } else if (bc == "neumann") {
        p.bc_at_zero = BoundaryCondition::Neumann;
    } else {
        config_error("unknown boundary condition '" + bc + "'");
    }
    p.L = get_number(j, "L");
    p.h = get_number(j, "h");
    const auto sc = get_string(j, "scheme");
    if (sc == "numerov") {
        p.scheme = Scheme::Numerov;
    } else if (sc == "fd2") {
        p.scheme = Scheme::FD2;
    } else {
        config_error("unknown scheme '" + sc + "'");
    }
    return p;
}

TypeTag tag_from_string(const std::string& s) {
    if (s == "D") return TypeTag::D;
    if (s == "N") return TypeTag::N;
    if (s == "unknown") return TypeTag::Unknown;
    config_error("unknown type tag '" + s + "'");
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) config_error("malformed number '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        config_error(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

Json perturbation_to_json(const Perturbation& V) {
    Json arr = Json::array();
    for (const auto& piece : V.pieces()) {
        arr.push_back(std::visit(overloaded{
                                     [](const TruncatedWeierstrass& w) {
                                         return Json{{"kind", "weierstrass"}, {"tau", w.tau}, {"J", w.J},
                                                     {"lo", w.lo},          {"hi", w.hi}};
                                     },
                                     [](const WindowedCosine& c) {
                                         return Json{{"kind", "cosine"}, {"amplitude", c.amplitude},
                                                     {"omega", c.omega}, {"lo", c.lo},
                                                     {"hi", c.hi}};
                                     },
                                     [](const Step& s) {
                                         return Json{{"kind", "step"}, {"height", s.height}, {"lo", s.lo}, {"hi", s.hi}};
                                     },
                                     [](const SampledTable& t) {
                                         return Json{{"kind", "table"}, {"x", t.x}, {"v", t.v}};
                                     },
                                 },
                                 piece));
    }
    return arr;
}

Perturbation perturbation_from_json(const Json& j) {
    if (!j.is_array()) config_error("perturbation must be an array of pieces");
    std::vector<PerturbationPiece> pieces;
    for (const auto& p : j) {
        if (!p.is_object()) config_error("perturbation piece must be an object");
        const auto kind = get_string(p, "kind");
        if (kind == "weierstrass") {
            TruncatedWeierstrass w;
            w.tau = get_number(p, "tau");
            if (!p.contains("J") || !p.at("J").is_number_integer()) config_error("weierstrass J must be an integer");
            w.J = p.at("J").get<int>();
            w.lo = get_number_or(p, "lo", w.lo);
            w.hi = get_number_or(p, "hi", w.hi);
            pieces.emplace_back(w);
        } else if (kind == "cosine") {
            WindowedCosine c;
            c.amplitude = get_number(p, "amplitude");
            c.omega = get_number(p, "omega");
            c.lo = get_number_or(p, "lo", c.lo);
            c.hi = get_number_or(p, "hi", c.hi);
            pieces.emplace_back(c);
        } else if (kind == "step") {
            Step s;
            s.height = get_number(p, "height");
            s.lo = get_number(p, "lo");
            s.hi = get_number(p, "hi");
            pieces.emplace_back(s);
        } else if (kind == "table") {
            pieces.emplace_back(SampledTable{number_array(p, "x"), number_array(p, "v")});
        } else {
            config_error("unknown perturbation kind '" + kind + "'");
        }
    }
    return Perturbation(std::move(pieces));
}

Json potential_to_json(const PotentialSpec& spec) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["b"] = spec.b;
    j["q0"] = std::visit(overloaded{
                             [&](const PlainSum&) {
                                 Json terms = Json::array();
                                 for (const auto& t : spec.terms) terms.push_back({{"a", t.a}, {"alpha", t.alpha}});
                                 return Json{{"kind", "sum"}, {"terms", terms}};
                             },
                             [](const ShiftedPower& s) {
                                 return Json{{"kind", "shifted"}, {"c", s.c}, {"alpha", s.alpha}};
                             },
                             [](const Quartic& q) { return Json{{"kind", "quartic"}, {"c", q.c}}; },
                         },
                         spec.composite);
    j["perturbation"] = perturbation_to_json(spec.perturbation);
    return j;
}

PotentialSpec potential_from_json(const Json& j) {
    check_version(j);
    PotentialSpec spec;
    spec.b = get_number(j, "b");
    if (!j.contains("q0") || !j.at("q0").is_object()) config_error("expected object field 'q0'");
    const auto& q0 = j.at("q0");
    const auto kind = get_string(q0, "kind");
    if (kind == "sum") {
        if (!q0.contains("terms") || !q0.at("terms").is_array()) config_error("sum potential needs 'terms'");
        for (const auto& t : q0.at("terms")) spec.terms.push_back({get_number(t, "a"), get_number(t, "alpha")});
        spec.composite = PlainSum{};
    } else if (kind == "shifted") {
        spec.composite = ShiftedPower{get_number(q0, "c"), get_number(q0, "alpha")};
    } else if (kind == "quartic") {
        spec.composite = Quartic{get_number(q0, "c")};
    } else {
        config_error("unknown q0 kind '" + kind + "'");
    }
    if (j.contains("perturbation")) spec.perturbation = perturbation_from_json(j.at("perturbation"));
    spec.validate();
    return spec;
}

PotentialSpec load_potential(const std::string& path) { return potential_from_json(read_json_file(path)); }

Json spectrum_to_json(const Spectrum& s, const Json& meta) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Json m = meta.is_object() ? meta : Json::object();
    m["problem"] = problem_to_json(s.problem);
    j["meta"] = m;
    Json arr = Json::array();
    for (const auto& e : s.entries) {
        arr.push_back({{"n", e.n},
                       {"lambda", e.lambda},
                       {"type", std::string(to_string(e.type))},
                       {"phi", e.phi},
                       {"est_error", e.est_error}});
    }
    j["eigenvalues"] = arr;
    return j;
}

Spectrum spectrum_from_json(const Json& j) {
    check_version(j);
    Spectrum s;
    if (j.contains("meta") && j.at("meta").contains("problem")) s.problem = problem_from_json(j.at("meta").at("problem"));
    if (!j.contains("eigenvalues") || !j.at("eigenvalues").is_array()) config_error("expected 'eigenvalues' array");
    for (const auto& e : j.at("eigenvalues")) {
        SpectrumEntry entry;
        if (!e.contains("n") || !e.at("n").is_number_integer()) config_error("eigenvalue entry needs integer 'n'");
        entry.n = e.at("n").get<int>();
        entry.lambda = get_number(e, "lambda");
        entry.type = tag_from_string(get_string(e, "type"));
        entry.phi = get_number(e, "phi");
        entry.est_error = get_number(e, "est_error");
        s.entries.push_back(entry);
    }
    return s;
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "n,lambda,type,phi,est_error\n";
    for (const auto& e : s.entries) {
        out += std::to_string(e.n) + ',' + format_double(e.lambda) + ',' + std::string(to_string(e.type)) + ',' +
               format_double(e.phi) + ',' + format_double(e.est_error) + '\n';
    }
    return out;
}

Spectrum spectrum_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,lambda,type,phi,est_error") config_error("unexpected spectrum CSV header");
    Spectrum s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 5) config_error("spectrum CSV row needs 5 cells");
        SpectrumEntry e;
        e.n = static_cast<int>(parse_double(cells[0]));
        e.lambda = parse_double(cells[1]);
        e.type = tag_from_string(cells[2]);
        e.phi = parse_double(cells[3]);
        e.est_error = parse_double(cells[4]);
        s.entries.push_back(e);
    }
    return s;
}

std::string report_to_csv(const ExpansionReport& r) {
    std::string out = "n,term1,term2,term3,term4,predicted,oracle,residual\n";
    for (const auto& row : r.rows) {
        out += std::to_string(row.n) + ',' + format_double(row.term1) + ',' + format_double(row.term2) + ',' +
               format_double(row.term3) + ',' + format_double(row.term4) + ',' + format_double(row.predicted) + ',' +
               (row.oracle ? format_double(*row.oracle) : "") + ',' +
               (row.residual ? format_double(*row.residual) : "") + '\n';
    }
    return out;
}

Json report_to_json(const ExpansionReport& r, const Json& meta) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["meta"] = meta.is_object() ? meta : Json::object();
    j["alpha"] = r.alpha;
    j["form"] = std::string(to_string(r.form));
    j["predictor"] = r.predictor;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e{{"n", row.n},
               {"term1", row.term1},
               {"term2", row.term2},
               {"term3", row.term3},
               {"term4", row.term4},
               {"predicted", row.predicted}};
        e["oracle"] = row.oracle ? Json(*row.oracle) : Json(nullptr);
        e["residual"] = row.residual ? Json(*row.residual) : Json(nullptr);
        rows.push_back(e);
    }
    j["rows"] = rows;
    return j;
}

ExpansionReport report_from_json(const Json& j) {
    check_version(j);
    ExpansionReport r;
    r.alpha = get_number(j, "alpha");
    const auto form = get_string(j, "form");
    if (form == "printed") {
        r.form = ExpansionForm::Printed;
    } else if (form == "rederived") {
        r.form = ExpansionForm::Rederived;
    } else {
        config_error("unknown expansion form '" + form + "'");
    }
    r.predictor = get_string(j, "predictor");
    if (!j.contains("rows") || !j.at("rows").is_array()) config_error("expected 'rows' array");
    for (const auto& e : j.at("rows")) {
        ExpansionRow row;
        row.n = e.at("n").get<int>();
        row.term1 = get_number(e, "term1");
        row.term2 = get_number(e, "term2");
        row.term3 = get_number(e, "term3");
        row.term4 = get_number(e, "term4");
        row.predicted = get_number(e, "predicted");
        if (e.contains("oracle") && !e.at("oracle").is_null()) row.oracle = get_number(e, "oracle");
        if (e.contains("residual") && !e.at("residual").is_null()) row.residual = get_number(e, "residual");
        r.rows.push_back(row);
    }
    return r;
}

}  // namespace anharmonic::io
