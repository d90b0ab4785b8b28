// SPDX-License-Identifier: Apache-2.0
//
// fsorf: performance analysis of dual-hop hybrid FSO/RF links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsorf/sweep.hpp"
#include "fsorf/validation.hpp"

using namespace fsorf;

namespace
{

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
    {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',')
    {
        out.emplace_back();
    }
    return out;
}

std::string csv_of(const SweepSpec& spec)
{
    std::ostringstream os;
    write_csv(os, "sweep", {spec}, run_sweep(spec));
    return os.str();
}

} // namespace

TEST_SUITE("sweep spec")
{
    TEST_CASE("grid construction")
    {
        SweepSpec s;
        CHECK(s.grid().size() == 16);
        CHECK(s.grid().back() == 30.0);
        parse_snr_range("10", s);
        CHECK(s.grid() == std::vector<double>{10.0});
        parse_snr_range("0:30:5", s);
        CHECK(s.grid() == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
        parse_snr_range("0:1:0.1", s);
        CHECK(s.grid().size() == 11);
        CHECK_THROWS_AS(parse_snr_range("0:1", s), ParameterError);
        CHECK_THROWS_AS(parse_snr_range("a:b:c", s), ParameterError);
    }

    TEST_CASE("validation of fields")
    {
        SweepSpec s;
        s.validate();
        s.snr_db_start = 10;
        s.snr_db_stop = 0;
        CHECK_THROWS_AS(s.validate(), ParameterError);
        s = SweepSpec{};
        s.snr_db_step = 0;
        CHECK_THROWS_AS(s.validate(), ParameterError);
        s = SweepSpec{};
        s.scheme = "mrc";
        CHECK_THROWS_AS(s.validate(), ParameterError);
        s = SweepSpec{};
        s.regime = "custom";
        s.alpha = -1;
        CHECK_THROWS_AS(s.validate(), ParameterError);
        s = SweepSpec{};
        s.n_samples = 10;
        CHECK_THROWS_AS(s.validate(), ParameterError);
        s.outputs = "analytic";
        s.validate();
    }

    TEST_CASE("xi interpretation")
    {
        SweepSpec s;
        s.regime = "custom";
        s.alpha = 4.0;
        s.beta = 1.9;
        s.xi = 109.2025;
        s.xi_is_squared = true;
        CHECK(s.resolved_regime().xi == doctest::Approx(10.45).epsilon(1e-14));
        s.xi_is_squared = false;
        CHECK(s.resolved_regime().xi == 109.2025);
    }
}

TEST_SUITE("sweep output")
{
    TEST_CASE("single grid point, analytic only")
    {
        SweepSpec s;
        s.scheme = "alamouti";
        parse_snr_range("10", s);
        s.outputs = "analytic";
        const auto rows = run_sweep(s);
        REQUIRE(rows.size() == 1);
        CHECK(!rows[0].pout_mc);
        CHECK(!rows[0].ber_mc);
        const auto lines = lines_of(csv_of(s));
        REQUIRE(lines.size() == 3);
        CHECK(lines[0].rfind("# fsorf 0.1.0 cmd=sweep seed=1", 0) == 0);
        CHECK(lines[1] == "scheme,regime,gamma_avg_db,pout_analytic,pout_mc,pout_ci95,ber_analytic,ber_mc,ber_ci95,"
                          "n_samples");
        const auto fields = split(lines[2]);
        REQUIRE(fields.size() == 10);
        CHECK(fields[0] == "alamouti");
        CHECK(fields[1] == "moderate");
        CHECK(fields[2] == "10");
        CHECK(!fields[3].empty());
        CHECK(fields[4].empty());
        CHECK(fields[5].empty());
        CHECK(!fields[6].empty());
        CHECK(fields[7].empty());
        CHECK(fields[8].empty());
        CHECK(fields[9].empty());
    }

    TEST_CASE("both schemes over seven points give fourteen rows")
    {
        SweepSpec s;
        parse_snr_range("0:30:5", s);
        s.outputs = "analytic";
        CHECK(run_sweep(s).size() == 14);
    }

    TEST_CASE("number formatting")
    {
        CHECK(format_value(0.5) == "0.5000000000");
        CHECK(format_value(2.5e-4) == "2.500000000e-04");
        CHECK(format_value(0.0) == "0.000000000e+00");
        CHECK(format_value(1e-3) == "0.0010000000");
    }

    TEST_CASE("fixed seed reproduces byte-identical CSV, independent of threads")
    {
        SweepSpec s;
        parse_snr_range("0:30:10", s);
        s.n_samples = 20'000;
        s.seed = 42;
        const std::string first = csv_of(s);
        CHECK(first == csv_of(s));
        s.n_workers = 3;
        CHECK(first == csv_of(s));
        s.seed = 43;
        CHECK(first != csv_of(s));
    }

    TEST_CASE("Monte Carlo columns carry values and sample counts")
    {
        SweepSpec s;
        s.scheme = "as";
        parse_snr_range("20", s);
        s.n_samples = 10'000;
        const auto rows = run_sweep(s);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].pout_mc);
        CHECK(rows[0].ber_ci95);
        CHECK(*rows[0].n_samples == 10'000);
        for (double v : {*rows[0].pout_analytic, *rows[0].pout_mc, *rows[0].ber_analytic, *rows[0].ber_mc})
        {
            CHECK((v >= 0.0 && v <= 1.0));
        }
    }

    TEST_CASE("JSON output mirrors the rows with nulls for missing values")
    {
        SweepSpec s;
        parse_snr_range("10", s);
        s.outputs = "analytic";
        std::ostringstream os;
        write_json(os, "sweep", {s}, run_sweep(s));
        const auto doc = nlohmann::json::parse(os.str());
        CHECK(doc["meta"]["command"] == "sweep");
        REQUIRE(doc["rows"].size() == 2);
        CHECK(doc["rows"][0]["pout_mc"].is_null());
        CHECK(doc["rows"][0]["ber_analytic"].is_number());
        CHECK(doc["rows"][1]["scheme"] == "as");
    }
}

TEST_SUITE("figures")
{
    TEST_CASE("cardinality and scope")
    {
        SweepSpec base;
        base.outputs = "analytic";
        parse_snr_range("0:30:5", base);
        const auto fig2 = run_figure(Figure::fig2, base);
        CHECK(fig2.size() == 2 * 2 * 7);
        for (const auto& r : fig2)
        {
            CHECK(r.ber_analytic);
            CHECK(!r.pout_analytic);
        }
        const auto fig3 = run_figure(Figure::fig3, base);
        CHECK(fig3.size() == 2 * 2 * 7);
        const auto fig4 = run_figure(Figure::fig4, base);
        CHECK(fig4.size() == 7);
        for (const auto& r : fig4)
        {
            CHECK(r.scheme == "as");
            CHECK(r.regime == "moderate");
            CHECK(r.pout_analytic);
        }
    }

    TEST_CASE("outage of the two schemes agrees at the top of the fig3 grid")
    {
        SweepSpec base;
        base.outputs = "analytic";
        const auto rows = run_figure(Figure::fig3, base);
        for (const char* regime : {"moderate", "strong"})
        {
            double ac = 0;
            double as = 0;
            for (const auto& r : rows)
            {
                if (r.regime == regime && r.gamma_avg_db == 30.0)
                {
                    (r.scheme == "alamouti" ? ac : as) = *r.pout_analytic;
                }
            }
            CHECK(std::abs(ac - as) / as < 0.05);
        }
    }
}

TEST_SUITE("configuration")
{
    TEST_CASE("key=value files")
    {
        SweepSpec s;
        apply_config_text("# comment\nscheme = as\nregime=strong\nsnr_db=0:20:5\nn_samples=1e5\nseed=9\n"
                          "gamma_th_db=5\noutputs=analytic\n",
                          s);
        CHECK(s.scheme == "as");
        CHECK(s.regime == "strong");
        CHECK(s.grid().size() == 5);
        CHECK(s.n_samples == 100'000);
        CHECK(s.seed == 9);
        CHECK(s.gamma_th_db == 5.0);
        CHECK(s.outputs == "analytic");
        CHECK_THROWS_AS(apply_config_text("colour=blue\n", s), ParameterError);
        CHECK_THROWS_AS(apply_config_text("scheme\n", s), ParameterError);
        CHECK_THROWS_AS(apply_config_text("seed=-3\n", s), ParameterError);
    }

    TEST_CASE("JSON files")
    {
        SweepSpec s;
        apply_config_text(R"({"scheme": "alamouti", "regime": "custom", "alpha": 3.5, "beta": 2.5, "xi": 4,
                              "xi_is_squared": true, "snr_db": [0, 10, 2], "n_samples": 5000, "seed": 7})",
                          s);
        CHECK(s.scheme == "alamouti");
        CHECK(s.alpha == 3.5);
        CHECK(s.xi_is_squared);
        CHECK(s.resolved_regime().xi == 2.0);
        CHECK(s.grid().size() == 6);
        CHECK(s.n_samples == 5000);
        CHECK(s.seed == 7);
        CHECK_THROWS_AS(apply_config_text("{ bad json", s), ParameterError);
    }
}

TEST_SUITE("validation suites")
{
    TEST_CASE("all three sections pass and report a discrepancy")
    {
        const auto sections = run_validation("all");
        REQUIRE(sections.size() == 3);
        for (const auto& s : sections)
        {
            CAPTURE(s.name);
            CHECK(s.passed());
        }
        CHECK(!sections[2].discrepancies.empty());
        std::ostringstream os;
        write_report(os, sections);
        CHECK(os.str().find("DISCREPANCY") != std::string::npos);
        CHECK(os.str().find("summary: 3 section(s), 0 failed") != std::string::npos);
    }

    TEST_CASE("a perturbed psi2 fails the ber suite by name")
    {
        const auto sections = run_validation("ber", {1e-3});
        REQUIRE(sections.size() == 1);
        const Check* f = sections[0].first_failure();
        REQUIRE(f != nullptr);
        CHECK(f->name.find("closed-form/quadrature mismatch") != std::string::npos);
        CHECK_THROWS_AS(run_validation("everything"), ParameterError);
    }
}
