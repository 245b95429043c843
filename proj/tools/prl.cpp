#include "prl/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 2;
    }
    out << text << "\n";
    return 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw prl::Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

prl::CircleConfiguration config_from_report(const nlohmann::json& table, bool minus) {
    std::vector<prl::DeSitterPoint> lifts;
    std::vector<std::string> labels;
    const char* ckey = minus ? "center_minus_t" : "center_t";
    const char* rkey = minus ? "radius_minus_t" : "radius_t";
    for (const auto& row : table) {
        labels.push_back(row.at("vertex").get<std::string>());
        const auto c = row.at(ckey);
        const prl::Vec3 center(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
        const double radius = row.at(rkey).get<double>();
        lifts.push_back(prl::hyperboloid_lift(center / std::cos(radius)));
    }
    return prl::CircleConfiguration::from_lifts(std::move(lifts), std::move(labels));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical inversive-distance circle packing counterexample toolkit"};
    app.require_subcommand(1);

    prl::PipelineParams params;
    std::string convention = "corrected";
    std::string out_path, in_path, format = "json";
    std::vector<double> a_list, h_list, t_list;

    auto add_geometry_opts = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help"); // frees -h/--h for the half-height
        cmd->add_option("--a", params.a, "equilateral side length");
        cmd->add_option("--h", params.h, "half-height");
        cmd->add_option("--t", params.t, "flex parameter");
    };

    CLI::App* counter = app.add_subcommand("counterexample", "run the full certification");
    add_geometry_opts(counter);
    counter->add_option("--tol", params.tol_equal, "equality tolerance");
    counter->add_option("--convention", convention, "corrected | paper-verbatim")
        ->check(CLI::IsMember({"corrected", "paper-verbatim"}));
    counter->add_option("--out", out_path, "write the JSON report to FILE");

    CLI::App* hyper = app.add_subcommand("hyperideal", "hyperideal edge-length table");
    add_geometry_opts(hyper);
    hyper->add_option("--out", out_path, "write the JSON report to FILE");

    CLI::App* eval = app.add_subcommand("packing-eval", "evaluate a packing document");
    eval->add_option("--in", in_path, "triangulation+packing JSON document")->required();
    eval->add_option("--out", out_path, "write the JSON report to FILE");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid of certification runs");
    sweep_cmd->set_help_flag("--help", "print help");
    sweep_cmd->add_option("--a", a_list, "a values")->delimiter(',');
    sweep_cmd->add_option("--h", h_list, "h values")->delimiter(',');
    sweep_cmd->add_option("--t", t_list, "t values")->delimiter(',');
    sweep_cmd->add_option("--out", out_path, "write the JSON table to FILE");

    CLI::App* exp = app.add_subcommand("export", "export circle configurations");
    exp->add_option("--in", in_path, "counterexample report JSON")->required();
    exp->add_option("--format", format, "svg | json")
        ->check(CLI::IsMember({"svg", "json"}));
    exp->add_option("--out", out_path, "output FILE");

    CLI::App* verify = app.add_subcommand("verify", "run all module property suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (counter->parsed()) {
            if (!(params.a > 0) || !(params.h > 0) || !std::isfinite(params.t)) {
                std::cerr << "invalid parameters\n";
                return 2;
            }
            params.convention = convention == "corrected" ? prl::Convention::Corrected
                                                          : prl::Convention::PaperVerbatim;
            const prl::CounterexampleReport rep = prl::run_counterexample(params);
            const int rc = write_output(rep.doc.dump(2), out_path);
            if (rc != 0) return rc;
            return rep.pass() ? 0 : 1;
        }
        if (hyper->parsed()) {
            if (!(params.a > 0) || !(params.h > 0)) {
                std::cerr << "invalid parameters\n";
                return 2;
            }
            return write_output(prl::hyperideal_report(params).dump(2), out_path);
        }
        if (eval->parsed()) {
            const prl::PackingInput input = prl::parse_packing_input(read_file(in_path));
            const nlohmann::ordered_json doc = prl::packing_eval(input);
            const int rc = write_output(doc.dump(2), out_path);
            if (rc != 0) return rc;
            return doc["status"] == "ok" ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            return write_output(prl::sweep(a_list, h_list, t_list).dump(2), out_path);
        }
        if (exp->parsed()) {
            const nlohmann::json report = nlohmann::json::parse(read_file(in_path));
            if (!report.contains("circles") || !report["circles"].contains("table"))
                throw prl::Error("report has no circle table");
            const auto& table = report["circles"]["table"];
            std::vector<prl::CircleConfiguration> configs;
            configs.push_back(config_from_report(table, false));
            configs.push_back(config_from_report(table, true));
            return write_output(prl::export_circles(configs, format), out_path);
        }
        if (verify->parsed()) {
            const bool ok = prl::run_verify(prl::seed_from_env(), std::cout);
            return ok ? 0 : 1;
        }
    } catch (const prl::InvalidTriangulation& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const prl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
