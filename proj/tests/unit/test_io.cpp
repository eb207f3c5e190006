#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "anharmonic/errors.hpp"
#include "anharmonic/io.hpp"
#include "generators.hpp"

using namespace anharmonic;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Numerical;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    testgen::Gen g(91);
    for (int i = 0; i < 2000; ++i) {
        const double x = g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300));
        CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(19.0) == "19");
}

TEST_CASE("csv line splitting keeps empty trailing cells") {
    CHECK(io::split_csv_line("1,2,,") == std::vector<std::string>{"1", "2", "", ""});
    CHECK(io::split_csv_line("a") == std::vector<std::string>{"a"});
}

TEST_CASE("potential json round trip") {
    testgen::Gen g(92);
    for (int i = 0; i < 30; ++i) {
        auto spec = g.confining(2.5);
        spec.perturbation = g.perturbation(2.0);
        if (g.coin()) spec.perturbation = Perturbation({TruncatedWeierstrass{0.5, 4, -2.0, 2.0}});
        const auto j = io::potential_to_json(spec);
        CHECK(j.at("schema_version") == io::kSchemaVersion);
        const auto back = io::potential_from_json(io::parse_json(j.dump()));
        CHECK(io::potential_to_json(back) == j);
        for (double x = -3.0; x <= 3.0; x += 0.37) CHECK(eval_q(back, x) == eval_q(spec, x));
    }
}

TEST_CASE("potential json errors") {
    CHECK(kind_of([] { (void)io::parse_json("{\"b\": 1,"); }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)io::potential_from_json(io::parse_json(R"({"b":1,"q0":{"kind":"quartic","c":0}})")); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] {
              (void)io::potential_from_json(
                  io::parse_json(R"({"schema_version":2,"b":1,"q0":{"kind":"quartic","c":0}})"));
          }) == ErrorKind::Config);
    CHECK(kind_of([] {
              (void)io::potential_from_json(io::parse_json(
                  R"({"schema_version":1,"b":1,"q0":{"kind":"sum","terms":[{"a":1,"alpha":2}]},
                      "perturbation":[{"kind":"step","height":1,"lo":-2,"hi":0}]})"));
          }) == ErrorKind::Config);
    CHECK(kind_of([] {
              (void)io::potential_from_json(
                  io::parse_json(R"({"schema_version":1,"b":1,"q0":{"kind":"cubic","c":0}})"));
          }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)io::read_json_file("/nonexistent/potential.json"); }) == ErrorKind::Config);
}

TEST_CASE("spectrum json and csv round trip") {
    Spectrum s;
    s.problem.geometry = Geometry::HalfLine;
    s.problem.bc_at_zero = BoundaryCondition::Neumann;
    s.problem.L = 12.5;
    s.problem.h = 1e-3;
    s.problem.scheme = Scheme::FD2;
    testgen::Gen g(93);
    for (int n = 1; n <= 8; ++n) {
        s.entries.push_back({n, 4.0 * n - 3.0 + g.uniform(-1e-3, 1e-3), n % 2 ? TypeTag::N : TypeTag::D,
                             g.uniform(0, 6.28), g.uniform(0, 1e-9), 0.0});
    }
    s.entries[0].type = TypeTag::Unknown;

    const auto j = io::spectrum_to_json(s, io::Json{{"command", "spectrum"}});
    const auto back = io::spectrum_from_json(io::parse_json(j.dump()));
    CHECK(back.problem.geometry == Geometry::HalfLine);
    CHECK(back.problem.bc_at_zero == BoundaryCondition::Neumann);
    CHECK(back.problem.scheme == Scheme::FD2);
    CHECK(back.problem.L == 12.5);
    const auto csv_back = io::spectrum_from_csv(io::spectrum_to_csv(s));
    for (const auto* other : {&back, &csv_back}) {
        REQUIRE(other->entries.size() == s.entries.size());
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            CHECK(other->entries[i].n == s.entries[i].n);
            CHECK(other->entries[i].lambda == s.entries[i].lambda);
            CHECK(other->entries[i].type == s.entries[i].type);
            CHECK(other->entries[i].phi == s.entries[i].phi);
            CHECK(other->entries[i].est_error == s.entries[i].est_error);
        }
    }
    CHECK(kind_of([] { (void)io::spectrum_from_csv("n,lambda\n1,2\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)io::spectrum_from_csv("n,lambda,type,phi,est_error\n1,x,N,0,0\n"); }) == ErrorKind::Config);
}

TEST_CASE("report serialization") {
    ExpansionReport r;
    r.alpha = 4.0;
    r.form = ExpansionForm::Printed;
    ExpansionRow a;
    a.n = 10;
    a.term1 = 40.5;
    a.term4 = -1e-3;
    a.predicted = a.term1 + a.term4;
    ExpansionRow b = a;
    b.n = 11;
    b.set_oracle(40.6);
    r.rows = {a, b};
    const auto csv = io::report_to_csv(r);
    CHECK(csv.starts_with("n,term1,term2,term3,term4,predicted,oracle,residual\n"));
    CHECK(csv.find("\n10,40.5,0,0,-0.001,40.499,,\n") != std::string::npos);
    const auto back = io::report_from_json(io::parse_json(io::report_to_json(r).dump()));
    CHECK(back.form == ExpansionForm::Printed);
    CHECK(back.alpha == 4.0);
    REQUIRE(back.rows.size() == 2);
    CHECK_FALSE(back.rows[0].oracle.has_value());
    CHECK(*back.rows[1].residual == doctest::Approx(40.6 - 40.499));
}
