#include <iostream>

#include "tate/cli.hpp"

namespace {

void usage() {
    std::cerr << "usage: tate <subcommand> [--key value ...] [--json] [--config PATH]\n"
              << "subcommands:\n  ";
    for (auto& name : tate::cli::subcommand_names()) std::cerr << name << " ";
    std::cerr << "\nglobal flags: --p --prec --s --tol --json --config PATH (env prefix TATE_)\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace tate::cli;
    if (argc < 2) {
        usage();
        return 2;
    }
    CommandRequest req;
    req.subcommand = argv[1];
    if (req.subcommand == "--help" || req.subcommand == "-h" || req.subcommand == "help") {
        usage();
        return 0;
    }
    std::string config_path;
    std::map<std::string, std::string> config_flags;
    try {
        for (int i = 2; i < argc; ++i) {
            std::string a = argv[i];
            if (a.rfind("--", 0) != 0) throw std::invalid_argument("expected --key, got: " + a);
            std::string key = a.substr(2);
            std::string val;
            if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) val = argv[++i];
            if (key == "json") {
                req.mode = OutputMode::Json;
            } else if (key == "config") {
                config_path = val;
            } else if (key == "tol" || key == "prime-bound" || key == "enum-bound") {
                config_flags[key] = val;
                req.params[key] = val;  // some subcommands also read these
            } else {
                req.params[key] = val;
            }
        }
        // precision is both a config layer and a per-command parameter
        if (req.params.count("prec")) config_flags["prec"] = req.params["prec"];
        const char* env_cfg = std::getenv("TATE_CONFIG");
        if (config_path.empty() && env_cfg) config_path = env_cfg;
        req.config = load_config(config_path, config_flags);
        // scrub config-layer keys that the subcommand schema does not know
        for (auto k : {"tol", "enum-bound"})
            req.params.erase(k);

        ResultDocument doc = dispatch(req);
        std::cout << emit(doc, req.mode);
        return 0;
    } catch (const std::invalid_argument& e) {
        nlohmann::ordered_json err{{"error", e.what()}, {"kind", "schema"}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err{{"error", e.what()}, {"kind", "domain"}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
}
