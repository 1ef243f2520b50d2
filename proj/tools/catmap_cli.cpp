// Copyright 2026 The catmap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the catmap C interface.
//
//   catmap [--seed S] [--out DIR] [--threads T] <subcommand> [key=value ...]
//
// Exit status: 0 success, 2 bad input, 3 internal invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "catmap/catmap.h"
#include "emit.hpp"

namespace {

using json = nlohmann::ordered_json;
using catmap::cli::format_double;

struct CliError {
    int code;
    std::string kind;
    std::string message;
};

[[noreturn]] void bad_input(const std::string &msg) { throw CliError{2, "usage", msg}; }

void check(cm_status st) {
    switch (st) {
    case CM_OK:
        return;
    case CM_ERR_INTERNAL:
        throw CliError{3, "internal", cm_last_error()};
    case CM_ERR_UNSUPPORTED:
        throw CliError{2, "unsupported", cm_last_error()};
    case CM_ERR_ARGUMENT:
        throw CliError{2, "argument", cm_last_error()};
    case CM_ERR_PRECONDITION:
        throw CliError{2, "precondition", cm_last_error()};
    }
    throw CliError{3, "internal", "unknown status"};
}

json take_json(char *raw) {
    std::unique_ptr<char, decltype(&cm_string_free)> hold(raw, cm_string_free);
    return json::parse(raw);
}

class Params {
  public:
    Params(std::map<std::string, std::string> defaults, const std::vector<std::string> &args)
        : values_(std::move(defaults)) {
        for (const auto &a : args) {
            const auto eq = a.find('=');
            if (eq == std::string::npos || eq == 0) {
                bad_input("expected key=value, got '" + a + "'");
            }
            const std::string key = a.substr(0, eq);
            if (values_.count(key) == 0) {
                bad_input("unknown parameter '" + key + "'");
            }
            values_[key] = a.substr(eq + 1);
        }
    }

    [[nodiscard]] const std::string &str(const std::string &key) const {
        return values_.at(key);
    }

    [[nodiscard]] std::uint64_t u64(const std::string &key) const {
        const std::string &s = str(key);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception &) {
            bad_input("parameter " + key + " must be a non-negative integer");
        }
        if (used != s.size() || s.find('-') != std::string::npos) {
            bad_input("parameter " + key + " must be a non-negative integer");
        }
        return v;
    }

    [[nodiscard]] unsigned u32(const std::string &key) const {
        const std::uint64_t v = u64(key);
        if (v > 0xffffffffULL) {
            bad_input("parameter " + key + " is too large");
        }
        return static_cast<unsigned>(v);
    }

    [[nodiscard]] long long i64(const std::string &key) const {
        const std::string &s = str(key);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception &) {
            bad_input("parameter " + key + " must be an integer");
        }
        if (used != s.size()) {
            bad_input("parameter " + key + " must be an integer");
        }
        return v;
    }

    /// Decimal or p/q.
    [[nodiscard]] double real(const std::string &key) const {
        const std::string &s = str(key);
        const auto slash = s.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                const double v = std::stod(s, &used);
                if (used == s.size() && std::isfinite(v)) {
                    return v;
                }
            } else {
                const double p = std::stod(s.substr(0, slash), &used);
                std::size_t used2 = 0;
                const double q = std::stod(s.substr(slash + 1), &used2);
                if (used == slash && used2 == s.size() - slash - 1 && q != 0.0) {
                    return p / q;
                }
            }
        } catch (const std::exception &) {
        }
        bad_input("parameter " + key + " must be a real number");
    }

    [[nodiscard]] bool flag(const std::string &key) const {
        const std::string &s = str(key);
        if (s == "1" || s == "true" || s == "yes") {
            return true;
        }
        if (s == "0" || s == "false" || s == "no") {
            return false;
        }
        bad_input("parameter " + key + " must be a boolean");
    }

    [[nodiscard]] std::vector<std::uint64_t> u64_list(const std::string &key) const {
        std::vector<std::uint64_t> out;
        std::stringstream ss(str(key));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            Params tmp({{"v", tok}}, {});
            out.push_back(tmp.u64("v"));
        }
        if (out.empty()) {
            bad_input("parameter " + key + " must list at least one value");
        }
        return out;
    }

  private:
    std::map<std::string, std::string> values_;
};

struct Context {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string name;

    [[nodiscard]] std::string path(const std::string &ext) const {
        return (std::filesystem::path(out_dir) / (name + "-" + std::to_string(seed) + "." + ext))
            .string();
    }

    void write_json(const json &j) const {
        const std::string p = path("json");
        catmap::cli::atomic_write(p, j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
    }
};

using MatrixPtr = std::unique_ptr<cm_matrix, decltype(&cm_matrix_free)>;
using ScarPtr = std::unique_ptr<cm_scar, decltype(&cm_scar_free)>;

MatrixPtr matrix(const std::string &text) {
    cm_matrix *m = nullptr;
    check(cm_matrix_parse(text.c_str(), &m));
    return {m, cm_matrix_free};
}

ScarPtr scar(const Params &p) {
    const MatrixPtr b = matrix(p.str("B"));
    cm_scar *s = nullptr;
    check(cm_scar_build(b.get(), p.u32("k"), &s));
    return {s, cm_scar_free};
}

json scar_summary_json(const cm_scar *s) {
    cm_scar_summary sum{};
    check(cm_scar_get_summary(s, &sum));
    return {{"N", sum.N},         {"P", sum.P},
            {"k", sum.k},         {"phase", sum.phase},
            {"phase_defect", sum.phase_defect},
            {"lambda", sum.lambda}, {"norm2", sum.norm2},
            {"s1", sum.s1},       {"norm2_minus_s1", sum.norm2 - sum.s1}};
}

void scaling_csv(const Context &ctx, const json &j) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < j["sizes"].size(); ++i) {
        rows.push_back({std::to_string(j["sizes"][i].get<std::uint64_t>()),
                        format_double(j["hs"][i].get<double>()),
                        format_double(j["norms"][i].get<double>())});
    }
    catmap::cli::write_csv(ctx.path("csv"), {"M", "h", "norm"}, rows);
    json summary = j;
    summary.erase("hs");
    summary["output"] = ctx.path("csv");
    std::cout << summary.dump(2) << "\n";
}

struct Command {
    std::string help;
    std::map<std::string, std::string> defaults;
    std::function<void(const Params &, const Context &)> run;
};

std::map<std::string, Command> commands() {
    std::map<std::string, Command> c;

    c["check-matrix"] = {
        "symplecticity, hyperbolicity, characteristic polynomial; N>0 adds the period",
        {{"A", "2,1;1,1"}, {"N", "0"}},
        [](const Params &p, const Context &ctx) {
            char *raw = nullptr;
            check(cm_matrix_report(matrix(p.str("A")).get(), p.u64("N"), &raw));
            ctx.write_json(take_json(raw));
        }};

    c["periods"] = {"N_k and the quantum period for an SL(2) matrix",
                    {{"A", "2,1;1,1"}, {"k", "6"}},
                    [](const Params &p, const Context &ctx) {
                        char *raw = nullptr;
                        check(cm_periods(matrix(p.str("A")).get(), p.u32("k"), &raw));
                        ctx.write_json(take_json(raw));
                    }};

    c["scar-build"] = {
        "build the scarred eigenfunction; residual=1 also checks the eigen-equation",
        {{"B", "2,1;1,1"}, {"k", "6"}, {"residual", "1"}},
        [](const Params &p, const Context &ctx) {
            const ScarPtr s = scar(p);
            json j = scar_summary_json(s.get());
            if (p.flag("residual")) {
                double r = 0.0;
                double rt = 0.0;
                check(cm_scar_eigen_residual(s.get(), 0, &r));
                check(cm_scar_eigen_residual(s.get(), 1, &rt));
                j["eigen_residual"] = r;
                j["tight_eigen_residual"] = rt;
            }
            double mass = 0.0;
            double area = 0.0;
            check(cm_scar_band_mass(s.get(), &mass, &area));
            j["band_mass_fraction"] = mass;
            j["band_area_fraction"] = area;
            ctx.write_json(j);
        }};

    c["scar-scan"] = {"matrix elements of translations against the limit measure",
                      {{"B", "2,1;1,1"}, {"k", "6"}, {"window", "2"}},
                      [](const Params &p, const Context &ctx) {
                          const ScarPtr s = scar(p);
                          char *raw = nullptr;
                          check(cm_scar_scan(s.get(), static_cast<int>(p.i64("window")), &raw));
                          ctx.write_json(take_json(raw));
                      }};

    c["scar-density"] = {
        "position density |u(j1, j2)|^2 as PGM (streamed) or CSV",
        {{"B", "2,1;1,1"}, {"k", "6"}, {"centered", "1"}, {"format", "pgm"}},
        [](const Params &p, const Context &ctx) {
            const ScarPtr s = scar(p);
            cm_scar_summary sum{};
            check(cm_scar_get_summary(s.get(), &sum));
            const int centered = p.flag("centered") ? 1 : 0;
            const std::string format = p.str("format");
            auto source = [&](std::uint64_t row, std::vector<double> &out) {
                check(cm_scar_density_row(s.get(), row, centered, out.data()));
            };
            json j{{"N", sum.N}, {"P", sum.P}, {"k", sum.k}, {"centered", centered != 0}};
            if (format == "pgm") {
                const double peak = catmap::cli::write_pgm(ctx.path("pgm"), sum.N, sum.N, source);
                j["max_density"] = peak;
                j["output"] = ctx.path("pgm");
            } else if (format == "csv") {
                if (sum.N > 1024) {
                    bad_input("csv density output is limited to N <= 1024");
                }
                std::vector<std::vector<std::string>> rows;
                std::vector<double> row(sum.N);
                for (std::uint64_t r = 0; r < sum.N; ++r) {
                    source(r, row);
                    for (std::uint64_t c2 = 0; c2 < sum.N; ++c2) {
                        rows.push_back(
                            {std::to_string(r), std::to_string(c2), format_double(row[c2])});
                    }
                }
                catmap::cli::write_csv(ctx.path("csv"), {"j1", "j2", "density"}, rows);
                j["output"] = ctx.path("csv");
            } else {
                bad_input("format must be pgm or csv");
            }
            std::cout << j.dump(2) << "\n";
        }};

    c["overlap-test"] = {"closed-form Gaussian overlap against quadrature",
                         {{"A", "2,1;1,1"}, {"samples", "100"}},
                         [](const Params &p, const Context &ctx) {
                             char *raw = nullptr;
                             check(cm_overlap_test(matrix(p.str("A")).get(), p.u32("samples"),
                                                   ctx.seed, &raw));
                             ctx.write_json(take_json(raw));
                         }};

    c["lattice-sum"] = {
        "sum over l in Z^2 of |<M^q G, U_{l+c} G>| with h = 1/(2 pi N)",
        {{"A", "2,1;1,1"}, {"q", "0"}, {"c1", "0"}, {"c2", "0"}, {"N", "144"}},
        [](const Params &p, const Context &ctx) {
            const std::uint64_t N = p.u64("N");
            if (N == 0) {
                bad_input("N must be positive");
            }
            const double h = 1.0 / (2.0 * M_PI * static_cast<double>(N));
            char *raw = nullptr;
            check(cm_lattice_sum(matrix(p.str("A")).get(), p.i64("q"), p.real("c1"),
                                 p.real("c2"), h, &raw));
            json j = take_json(raw);
            j["N"] = N;
            ctx.write_json(j);
        }};

    c["galois-census"] = {
        "factorization classes of monic reciprocal polynomials over F_ell",
        {{"ell", "5,7,11,13"}, {"n", "1,2"}},
        [](const Params &p, const Context &ctx) {
            std::vector<std::vector<std::string>> rows;
            for (auto ell : p.u64_list("ell")) {
                for (auto n : p.u64_list("n")) {
                    char *raw = nullptr;
                    check(cm_galois_census(static_cast<std::uint32_t>(ell),
                                           static_cast<unsigned>(n), &raw));
                    const json j = take_json(raw);
                    for (const auto &cls : j["classes"]) {
                        rows.push_back({std::to_string(ell), std::to_string(n),
                                        std::to_string(cls["k"].get<unsigned>()),
                                        std::to_string(cls["count"].get<std::uint64_t>()),
                                        format_double(cls["main_term"].get<double>()),
                                        format_double(cls["abs_error"].get<double>())});
                    }
                }
            }
            catmap::cli::write_csv(ctx.path("csv"),
                                   {"ell", "n", "k", "count", "main_term", "abs_error"}, rows);
            std::cout << json{{"rows", rows.size()}, {"output", ctx.path("csv")}}.dump(2)
                      << "\n";
        }};

    c["galois-certify"] = {
        "Frobenius-witness certificate; give poly=c_d,...,c_0 or A=matrix",
        {{"poly", ""}, {"A", ""}, {"bound", "200"}},
        [](const Params &p, const Context &ctx) {
            const bool has_poly = !p.str("poly").empty();
            const bool has_a = !p.str("A").empty();
            if (has_poly == has_a) {
                bad_input("give exactly one of poly= and A=");
            }
            char *raw = nullptr;
            if (has_poly) {
                check(cm_galois_certify_poly(p.str("poly").c_str(), p.u32("bound"), &raw));
            } else {
                check(cm_galois_certify_matrix(matrix(p.str("A")).get(), p.u32("bound"), &raw));
            }
            ctx.write_json(take_json(raw));
        }};

    c["galois-sample"] = {"certify random words in Sp(2n, Z)",
                          {{"n", "2"}, {"L", "20"}, {"count", "500"}, {"bound", "200"}},
                          [](const Params &p, const Context &ctx) {
                              char *raw = nullptr;
                              check(cm_galois_sample(p.u32("n"), p.u32("L"), p.u32("count"),
                                                     ctx.seed, p.u32("bound"), &raw));
                              ctx.write_json(take_json(raw));
                          }};

    c["galois-power-scan"] = {
        "irreducibility of char(A^m) for m = 1..m and the least reducible power",
        {{"A", "0,0,2,1;0,0,1,1;-2,-1,0,0;-1,-1,0,0"}, {"m", "10"}, {"bound", "200"}},
        [](const Params &p, const Context &ctx) {
            char *raw = nullptr;
            check(cm_galois_power_scan(matrix(p.str("A")).get(), p.u32("m"), p.u32("bound"),
                                       &raw));
            ctx.write_json(take_json(raw));
        }};

    c["sl2-census"] = {"trace distribution over SL(2, F_ell)",
                       {{"ell", "5"}},
                       [](const Params &p, const Context &ctx) {
                           std::vector<std::vector<std::string>> rows;
                           json summary = json::array();
                           for (auto ell : p.u64_list("ell")) {
                               char *raw = nullptr;
                               check(cm_sl2_census(static_cast<std::uint32_t>(ell), &raw));
                               const json j = take_json(raw);
                               const auto &counts = j["counts"];
                               for (std::size_t t = 0; t < counts.size(); ++t) {
                                   rows.push_back({std::to_string(ell), std::to_string(t),
                                                   std::to_string(counts[t].get<std::uint64_t>())});
                               }
                               summary.push_back({{"ell", ell},
                                                  {"total", j["total"]},
                                                  {"group_order", j["group_order"]}});
                           }
                           catmap::cli::write_csv(ctx.path("csv"), {"ell", "t", "count"}, rows);
                           std::cout << json{{"census", summary}, {"output", ctx.path("csv")}}
                                            .dump(2)
                                     << "\n";
                       }};

    c["fup-porosity"] = {
        "porosity of a Cantor iterate; alpha0=0 means 3^-depth",
        {{"depth", "6"},
         {"dims", "1"},
         {"nu", "1/9"},
         {"alpha0", "0"},
         {"alpha1", "1"},
         {"mode", "balls"},
         {"dilation", "0"}},
        [](const Params &p, const Context &ctx) {
            const unsigned depth = p.u32("depth");
            double alpha0 = p.real("alpha0");
            if (alpha0 == 0.0) {
                alpha0 = std::pow(3.0, -static_cast<double>(depth));
            }
            const std::string mode = p.str("mode");
            if (mode != "balls" && mode != "lines") {
                bad_input("mode must be balls or lines");
            }
            char *raw = nullptr;
            check(cm_fup_porosity_cantor(depth, p.u32("dims"), p.real("nu"), alpha0,
                                         p.real("alpha1"), mode == "lines" ? 1 : 0,
                                         p.real("dilation"), &raw));
            ctx.write_json(take_json(raw));
        }};

    c["fup-scan"] = {"Cantor-pair DFT submatrix norms across depths",
                     {{"lo", "4"}, {"hi", "9"}},
                     [](const Params &p, const Context &ctx) {
                         char *raw = nullptr;
                         check(cm_scaling(0, 1, 0.0, p.u32("lo"), p.u32("hi"), &raw));
                         scaling_csv(ctx, take_json(raw));
                     }};

    c["up-basic"] = {"bump-localized uncertainty norms over M = 2^lo..2^hi",
                     {{"d", "1"}, {"delta", "0.75"}, {"lo", "8"}, {"hi", "14"}},
                     [](const Params &p, const Context &ctx) {
                         char *raw = nullptr;
                         check(cm_scaling(1, p.u32("d"), p.real("delta"), p.u32("lo"),
                                          p.u32("hi"), &raw));
                         scaling_csv(ctx, take_json(raw));
                     }};
    return c;
}

int report(const CliError &e) {
    std::cerr << json{{"error", {{"code", e.code}, {"kind", e.kind}, {"message", e.message}}}}
                     .dump()
              << "\n";
    return e.code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum cat map laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned threads = 0;
    app.add_option("--seed", seed, "seed for randomized subcommands and file names");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads (0: CATMAP_THREADS or all cores)");

    const auto table = commands();
    std::map<std::string, std::vector<std::string>> args;
    for (const auto &[name, cmd] : table) {
        auto *sub = app.add_subcommand(name, cmd.help);
        std::string keys;
        for (const auto &[k, v] : cmd.defaults) {
            keys += " " + k + "=" + (v.empty() ? "<unset>" : v);
        }
        sub->add_option("params", args[name], "key=value parameters:" + keys);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report({2, "usage", e.what()});
    }

    try {
        if (threads != 0) {
            check(cm_set_threads(threads));
        }
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec || !std::filesystem::is_directory(out_dir)) {
            bad_input("cannot use output directory '" + out_dir + "'");
        }
        for (const auto &[name, cmd] : table) {
            if (app.got_subcommand(name)) {
                const Params params(cmd.defaults, args[name]);
                cmd.run(params, Context{seed, out_dir, name});
                return 0;
            }
        }
        bad_input("no subcommand given");
    } catch (const CliError &e) {
        return report(e);
    } catch (const std::exception &e) {
        return report({3, "internal", e.what()});
    }
}
