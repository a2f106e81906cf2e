#include "superell/errors.hpp"
#include "superell/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using superell::CommandResult;
using superell::Json;

Json read_config(const std::string& path) {
    if (path.empty()) throw superell::ConfigError("this command needs --config <path>");
    std::ifstream in(path);
    if (!in) throw superell::ConfigError("cannot open config file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw superell::ConfigError(std::string("config parse: ") + e.what());
    }
}

void write_report(const CommandResult& r, const std::string& json_path) {
    if (json_path.empty()) return;
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw superell::ConfigError("cannot write report file: " + json_path);
    out << r.report.dump(2) << '\n';
}

std::string rational_str(const Json& pair) {
    const std::string num = pair["num"].get<std::string>();
    const std::string den = pair["den"].get<std::string>();
    return den == "1" ? num : num + "/" + den;
}

void print_summary(const CommandResult& r) {
    const Json& res = r.report["result"];
    const std::string cmd = r.report["command"].get<std::string>();
    if (cmd == "validate") {
        const Json& in = r.report["inputs"];
        std::cout << "valid: genus " << in["curve"]["genus"] << ", group order "
                  << in["group"]["order"] << ", conductor " << in["conductor"] << '\n';
    } else if (cmd == "count") {
        for (const Json& row : res["counts"])
            std::cout << "nu=" << row["nu"] << ": " << row["points"] << " points\n";
    } else if (cmd == "zeta") {
        std::cout << "zeta numerator degree " << res["degree"] << '\n';
        const Json& P = res["P"];
        for (size_t i = 0; i < P.size(); ++i)
            std::cout << "  t^" << i << ": " << rational_str(P[i][0]) << '\n';
    } else if (cmd == "lfun") {
        for (const Json& cj : res["characters"])
            std::cout << "chi" << cj["chi"].dump() << ": deg P = " << cj["degree"]
                      << ", pole order " << cj["pole_order"] << '\n';
        const Json& ar = res["artin"];
        std::cout << "factorization: " << (ar["factorization_ok"].get<bool>() ? "ok" : "FAILED")
                  << ", degree sum " << ar["degree_sum"] << " ("
                  << (ar["degree_sum_ok"].get<bool>() ? "ok" : "FAILED") << ")\n";
    } else if (cmd == "cartier") {
        std::cout << "differential basis size " << res["basis"].size() << '\n';
        for (const Json& blk : res["blocks"])
            std::cout << "chi" << blk["chi"].dump() << ": block size " << blk["members"].size()
                      << ", det degree "
                      << (blk["det"].empty() ? 0 : blk["det"].size() - 1) << '\n';
    } else if (cmd == "gamma") {
        for (const Json& blk : res["blocks"])
            std::cout << "chi" << blk["chi"].dump() << ": gamma " << blk["gamma"]
                      << ", orbit length " << blk["orbit_length"] << '\n';
        std::cout << "gamma total " << res["gamma_total"] << " (additivity "
                  << (res["additive_ok"].get<bool>() ? "ok" : "FAILED") << ")\n";
    } else if (cmd == "verify-idem") {
        std::cout << "relation holds: " << (res["relation_holds"].get<bool>() ? "yes" : "NO")
                  << '\n';
        if (res.contains("identity_ok"))
            std::cout << "polynomial identity: "
                      << (res["identity_ok"].get<bool>() ? "verified" : "FAILED") << '\n';
    } else if (cmd == "verify-corollary") {
        std::cout << "relation holds: " << (res["relation_holds"].get<bool>() ? "yes" : "NO")
                  << '\n';
        if (res.contains("gamma_sum"))
            std::cout << "gamma route sum " << res["gamma_sum"] << ", degree route sum "
                      << res["degree_sum"] << '\n';
    } else if (cmd == "embedding-check") {
        for (const Json& orb : res["orbits"])
            std::cout << "chi" << orb["chi"].dump() << ": length " << orb["length"] << ", m="
                      << orb["multiplicity"] << ", gamma=" << orb["gamma"] << " -> "
                      << (orb["ok"].get<bool>() ? "ok" : "FAILED") << '\n';
        std::cout << "all orbits: " << (res["all_ok"].get<bool>() ? "ok" : "FAILED") << '\n';
    } else if (cmd == "genus-bound") {
        std::cout << "sub-genus: " << rational_str(res["sub_genus"])
                  << (res["divisible"].get<bool>() ? "" : " (not integral)") << '\n';
        std::cout << "bound: " << res["bound"] << '\n';
        if (res.contains("warning"))
            std::cout << "warning: " << res["warning"].get<std::string>() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L-functions, Cartier matrices, and Hasse-Witt invariants of superelliptic curves"};
    app.require_subcommand(1);

    std::string config_path, json_path;
    unsigned precision = 0;
    unsigned long long cap = 0;
    unsigned workers = 0;
    app.add_option("--config", config_path, "JSON job configuration");
    app.add_option("--json", json_path, "write the JSON report to this path");
    app.add_option("--precision", precision, "series length override (>= 2*genus+3)");
    app.add_option("--cap", cap, "enumeration cap override");
    app.add_option("--workers", workers, "worker count (scheduling only)");

    unsigned count_nu = 1;
    unsigned gb_m = 0, gb_np = 0, gb_g = 0;
    const std::vector<std::string> config_cmds = {
        "validate",        "count",           "zeta",  "lfun", "cartier",
        "gamma",           "verify-idem",     "verify-corollary",
        "embedding-check"};
    for (const auto& name : config_cmds) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();
        if (name == "count") sub->add_option("--nu", count_nu, "count points over F_q^1..F_q^nu");
    }
    CLI::App* gb = app.add_subcommand("genus-bound");
    gb->fallthrough();
    gb->add_option("--m", gb_m, "order of the prime-to-p part")->required();
    gb->add_option("--np", gb_np, "order of the p-part")->required();
    gb->add_option("--g", gb_g, "genus of the base curve")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CommandResult result;
        if (gb->parsed()) {
            result = superell::genus_bound_command(gb_m, gb_np, gb_g);
        } else {
            const Json config = read_config(config_path);
            superell::JobOverrides ov;
            if (precision) ov.precision = precision;
            if (cap) ov.cap = cap;
            if (workers) ov.workers = workers;
            const superell::JobContext ctx = superell::load_job(config, ov);
            superell::CommandOptions opt;
            opt.nu = count_nu;
            result = superell::run_command(app.get_subcommands().front()->get_name(), ctx, opt);
        }
        write_report(result, json_path);
        print_summary(result);
        return result.exit_code;
    } catch (const superell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const superell::MathError& e) {
        std::cerr << "math failure: " << e.what() << '\n';
        return 1;
    }
}
