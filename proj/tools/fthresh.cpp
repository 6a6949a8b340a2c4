#include "fthresh/fthresh.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

struct Cli {
    std::string problem_path;
    std::string csv_path;
    fthresh::CommandFlags flags;
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("problem", cli.problem_path, "problem file (JSON)")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact F-thresholds, test ideals and jumping coefficients of "
                 "monomial ideals on toric rings"};
    app.require_subcommand(1);

    Cli cli;
    std::int64_t p_flag = 0;
    unsigned e_flag = 0, e_max_flag = 0;

    auto* dual = app.add_subcommand("dual", "dual cone, facet normals, smoothness");
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert basis of the dual cone semigroup");
    auto* goren = app.add_subcommand("gorenstein", "Gorenstein point and index");
    auto* fpt_cmd = app.add_subcommand("fpt", "F-pure threshold of an ideal");
    auto* fthr = app.add_subcommand("fthreshold", "F-threshold of an ideal w.r.t. another");
    auto* tideal = app.add_subcommand("testideal", "generators of the test ideal tau(a^c)");
    auto* jump = app.add_subcommand("jumping", "first n F-jumping coefficients");
    auto* nu_cmd = app.add_subcommand("nu", "p^e-th threshold by brute-force Frobenius search");
    auto* report = app.add_subcommand("report", "oracle convergence table against the formula");
    auto* reg = app.add_subcommand("regularity", "regularity probe for simplicial cones");

    for (auto* cmd : {dual, hilbert, goren, fpt_cmd, fthr, tideal, jump, nu_cmd, report, reg})
        add_common(cmd, cli);
    for (auto* cmd : {fpt_cmd, fthr, tideal, jump, nu_cmd, report, reg})
        cmd->add_option("--ideal", cli.flags.ideal, "ideal name")->required();
    for (auto* cmd : {fthr, nu_cmd, report})
        cmd->add_option("--with", cli.flags.with,
                        "second ideal J (default: the maximal monomial ideal)");
    tideal->add_option("--exponent", cli.flags.exponent, "exponent c as \"num/den\"")->required();
    jump->add_option("--count", cli.flags.count, "number of jumping coefficients")->required();
    for (auto* cmd : {nu_cmd, report}) cmd->add_option("--p", p_flag, "prime p");
    nu_cmd->add_option("--e", e_flag, "Frobenius exponent e")->required();
    report->add_option("--e-max", e_max_flag, "largest Frobenius exponent");
    report->add_option("--csv", cli.csv_path, "write the convergence table as CSV to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (p_flag != 0) cli.flags.p = p_flag;
        if (e_flag != 0) cli.flags.e = e_flag;
        if (e_max_flag != 0) cli.flags.e_max = e_max_flag;
        if (const char* env = std::getenv("FTHRESH_BUDGET"))
            cli.flags.budget = std::strtoull(env, nullptr, 10);

        const fthresh::ProblemFile pf = fthresh::load_problem(cli.problem_path);
        const std::string command = app.get_subcommands().front()->get_name();
        const fthresh::RunResult res = fthresh::run_command(command, pf, cli.flags);

        std::cout << res.doc.dump(2) << "\n";
        if (!res.csv.empty()) {
            if (cli.csv_path.empty()) {
                std::cout << res.csv;
            } else {
                std::ofstream out(cli.csv_path);
                if (!out) throw fthresh::Error("cannot write CSV to '" + cli.csv_path + "'");
                out << res.csv;
            }
        }
        return res.exit_code;
    } catch (const fthresh::BudgetError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
