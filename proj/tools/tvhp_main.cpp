#include "tvhp/hermite_core.hpp"
#include "tvhp/registry.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using tvhp::Complex;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool json_by_default() {
    const char* env = std::getenv("TVHP_OUTPUT");
    return env != nullptr && std::string(env) == "json";
}

std::optional<Complex> parse_complex(const std::string& s) {
    std::istringstream is(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) return std::nullopt;
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) return std::nullopt;
    }
    return Complex{re, im};
}

void print_report_human(const tvhp::VerificationReport& r) {
    std::cout << r.id << ": " << (r.pass ? "pass" : "FAIL")
              << "  residual=" << (r.exact ? std::string("exact") : std::to_string(r.residual))
              << "  tolerance=" << r.tolerance << "  time=" << r.wall_time_s << "s\n";
    for (const auto& [k, v] : r.params) std::cout << "    " << k << " = " << v << "\n";
    if (!r.notes.empty()) std::cout << "    note: " << r.notes << "\n";
}

int cmd_coeffs(long m, long n, bool as_json, bool as_csv) {
    const auto& poly = tvhp::hermite_coeffs(m, n);
    if (as_json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [key, c] : poly.terms()) {
            rows.push_back({{"j", key.first},
                            {"k", key.second},
                            {"num", c.re().convert_to<std::string>()},
                            {"den", "1"}});
        }
        std::cout << nlohmann::json{{"m", m}, {"n", n}, {"terms", rows}}.dump(2) << "\n";
    } else if (as_csv) {
        std::cout << "j,k,numerator,denominator\n";
        for (const auto& [key, c] : poly.terms()) {
            std::cout << key.first << "," << key.second << ","
                      << boost::multiprecision::numerator(c.re()) << ","
                      << boost::multiprecision::denominator(c.re()) << "\n";
        }
    } else {
        std::cout << "H_{" << m << "," << n << "}(u,v):\n";
        for (const auto& [key, c] : poly.terms()) {
            std::cout << "  (" << key.first << ", " << key.second << ", "
                      << boost::multiprecision::numerator(c.re()) << ", "
                      << boost::multiprecision::denominator(c.re()) << ")\n";
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tvhp - two-variable Hermite polynomial identity verifier"};
    app.require_subcommand(1);

    // coeffs
    long cm = 0, cn = 0;
    bool coeffs_json = false, coeffs_csv = false;
    auto* coeffs = app.add_subcommand("coeffs", "print exact coefficients of H_{m,n}");
    coeffs->add_option("m", cm, "first degree")->required()->check(CLI::NonNegativeNumber);
    coeffs->add_option("n", cn, "second degree")->required()->check(CLI::NonNegativeNumber);
    coeffs->add_flag("--json", coeffs_json, "JSON output");
    coeffs->add_flag("--csv", coeffs_csv, "CSV output");

    // eval
    long em = 0, en = 0;
    std::string exi, ev;
    auto* eval = app.add_subcommand("eval", "evaluate H_{m,n} at a point");
    eval->add_option("m", em, "first degree")->required()->check(CLI::NonNegativeNumber);
    eval->add_option("n", en, "second degree")->required()->check(CLI::NonNegativeNumber);
    eval->add_option("--xi", exi, "first argument RE,IM")->required();
    eval->add_option("--v", ev, "second argument RE,IM (default: conj(xi))");

    // verify / verify-all shared options
    tvhp::VerifyOptions opt;
    bool out_json = json_by_default();
    double tol = -1.0;
    std::string id;
    std::map<std::string, std::string> complex_flags;  // flag -> value string
    std::map<std::string, double> double_flags;

    auto add_verify_options = [&](CLI::App* cmd) {
        cmd->add_flag("--json", out_json, "JSON output");
        cmd->add_option("--tol", tol, "override the pass tolerance");
        cmd->add_option("--max-degree", opt.max_degree, "degree grid bound for exact checks");
        cmd->add_option("--cutoff", opt.cutoff, "Fock cutoff per mode");
        cmd->add_option("--quad-order", opt.quad_order, "default quadrature order");
        for (const char* name : {"m", "n", "M", "K", "q", "basis_max"})
            cmd->add_option(std::string("--") + name, double_flags[name]);
        for (const char* name : {"t", "tp", "tau"})
            cmd->add_option(std::string("--") + name, double_flags[name]);
        for (const char* name : {"s", "x", "y", "xp", "yp", "xi", "alpha", "eta", "f", "g"})
            cmd->add_option(std::string("--") + name, complex_flags[name],
                            "complex value RE[,IM]");
    };

    auto* verify = app.add_subcommand("verify", "run one identity check");
    verify->add_option("id", id, "identity key")->required();
    add_verify_options(verify);

    auto* verify_all = app.add_subcommand("verify-all", "run the full identity registry");
    add_verify_options(verify_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(cm, cn, coeffs_json, coeffs_csv);

        if (eval->parsed()) {
            auto xi = parse_complex(exi);
            if (!xi) {
                std::cerr << "error: bad --xi value\n";
                return kExitUsage;
            }
            Complex v = std::conj(*xi);
            if (!ev.empty()) {
                auto vv = parse_complex(ev);
                if (!vv) {
                    std::cerr << "error: bad --v value\n";
                    return kExitUsage;
                }
                v = *vv;
            }
            Complex r = tvhp::hermite_eval(em, en, *xi, v);
            std::cout << r.real() << (r.imag() >= 0 ? "+" : "") << r.imag() << "i\n";
            return kExitPass;
        }

        if (tol >= 0.0) opt.tol = tol;
        for (const auto& [name, val] : double_flags) {
            for (CLI::App* cmd : {static_cast<CLI::App*>(verify), static_cast<CLI::App*>(verify_all)})
                if (cmd->parsed() && cmd->count("--" + name) > 0) opt.scalars[name] = val;
        }
        for (const auto& [name, val] : complex_flags) {
            if (val.empty()) continue;
            auto z = parse_complex(val);
            if (!z) {
                std::cerr << "error: bad value for --" << name << "\n";
                return kExitUsage;
            }
            opt.scalars[name + "_re"] = z->real();
            opt.scalars[name + "_im"] = z->imag();
        }

        if (verify->parsed()) {
            if (!tvhp::is_registered_identity(id)) {
                std::cerr << "error: unknown identity id '" << id << "'\n";
                return kExitUsage;
            }
            tvhp::VerificationReport r = tvhp::run_identity(id, opt);
            if (out_json) {
                std::cout << tvhp::reports_to_json_string({r}) << "\n";
            } else {
                print_report_human(r);
            }
            return r.pass ? kExitPass : kExitFail;
        }

        if (verify_all->parsed()) {
            std::vector<tvhp::VerificationReport> rs = tvhp::run_all(opt);
            if (out_json) {
                std::cout << tvhp::reports_to_json_string(rs) << "\n";
            } else {
                for (const auto& r : rs) print_report_human(r);
            }
            bool all_pass = true;
            for (const auto& r : rs) all_pass = all_pass && r.pass;
            return all_pass ? kExitPass : kExitFail;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
